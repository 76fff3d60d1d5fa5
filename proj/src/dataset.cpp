#include "qent/dataset.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qent/rng.hpp"
#include "qent/textio.hpp"

namespace qent {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 2(1 - mean single-qubit purity); local copy so dataset generation does not
// pull in the metrics module.
double mw_entanglement(const Statevector& state) {
  double acc = 0.0;
  for (int q = 0; q < state.n_qubits; ++q)
    acc += subsystem_purity(state, {q});
  return 2.0 * (1.0 - acc / state.n_qubits);
}

// Closed-form concurrence of the two-qubit preparation circuit. Zero is
// decided from the angles so that boundary states are never mislabeled by
// floating-point noise in sin().
double closed_form_concurrence(double theta0, double theta1) {
  if (theta0 == 0.0 || theta0 == kPi || theta1 == 0.0) return 0.0;
  return std::abs(std::sin(theta0) * std::sin(0.5 * theta1));
}

Circuit two_qubit_prep_circuit() {
  Circuit c;
  c.n_qubits = 2;
  c.n_params = 2;
  c.ops.push_back(GateOp::rotation(GateKind::RX, 1, 0));
  c.ops.push_back(GateOp::controlled(GateKind::CRY, 1, 0, 1));
  return c;
}

Statevector single_qubit_ryrz(double alpha, double beta) {
  Circuit c;
  c.n_qubits = 1;
  c.n_params = 2;
  c.ops.push_back(GateOp::rotation(GateKind::RY, 0, 0));
  c.ops.push_back(GateOp::rotation(GateKind::RZ, 0, 1));
  return apply_circuit(c, {alpha, beta}, Statevector::zero(1));
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::TwoQubitConcurrence: return "two-qubit-concurrence";
    case Family::GhzClass: return "ghz-class";
    case Family::BipartiteA_BC: return "bipartite-a-bc";
    case Family::BipartiteB_AC: return "bipartite-b-ac";
    case Family::BipartiteC_AB: return "bipartite-c-ab";
    case Family::SeparableProduct: return "separable-product";
  }
  throw std::logic_error("unreachable family");
}

Family family_from_name(const std::string& name) {
  if (name == "two-qubit-concurrence") return Family::TwoQubitConcurrence;
  if (name == "ghz-class") return Family::GhzClass;
  if (name == "bipartite-a-bc") return Family::BipartiteA_BC;
  if (name == "bipartite-b-ac") return Family::BipartiteB_AC;
  if (name == "bipartite-c-ab") return Family::BipartiteC_AB;
  if (name == "separable-product") return Family::SeparableProduct;
  throw std::invalid_argument("unknown family: " + name);
}

LabeledState gen_two_qubit(double theta0, double theta1) {
  LabeledState ls;
  ls.family = Family::TwoQubitConcurrence;
  ls.gen_params = {theta0, theta1};
  ls.state = apply_circuit(two_qubit_prep_circuit(), {theta0, theta1},
                           Statevector::zero(2));
  ls.witness_value = closed_form_concurrence(theta0, theta1);
  ls.label = ls.witness_value == 0.0 ? +1 : -1;
  return ls;
}

LabeledState gen_two_qubit_phased(double theta0, double theta1, double phase0,
                                  double phase1) {
  LabeledState ls = gen_two_qubit(theta0, theta1);
  ls.gen_params = {theta0, theta1, phase0, phase1};
  apply_gate(ls.state, GateOp::fixed(GateKind::RZ, 0), phase0);
  apply_gate(ls.state, GateOp::fixed(GateKind::RZ, 1), phase1);
  return ls;
}

LabeledState gen_separable(
    int n_qubits, const std::vector<std::pair<double, double>>& angles) {
  if (static_cast<int>(angles.size()) != n_qubits)
    throw std::invalid_argument("need one (alpha, beta) pair per qubit");
  LabeledState ls;
  ls.family = Family::SeparableProduct;
  ls.state = Statevector::zero(n_qubits);
  for (int q = 0; q < n_qubits; ++q) {
    apply_gate(ls.state, GateOp::fixed(GateKind::RY, q), angles[q].first);
    apply_gate(ls.state, GateOp::fixed(GateKind::RZ, q), angles[q].second);
    ls.gen_params.push_back(angles[q].first);
    ls.gen_params.push_back(angles[q].second);
  }
  ls.label = +1;
  ls.witness_value = 0.0;
  return ls;
}

double ghz_normalizer(double v, double phi, double theta_a, double theta_b,
                      double theta_c) {
  return 1.0 + 2.0 * std::cos(v) * std::sin(v) * std::cos(theta_a) *
                   std::cos(theta_b) * std::cos(theta_c) * std::cos(phi);
}

LabeledState gen_ghz_class(double v, double phi, double theta_a, double theta_b,
                           double theta_c) {
  if (!(v > 0.0 && v <= kPi / 4.0))
    throw std::invalid_argument("v must be in (0, pi/4]");
  if (!(phi >= 0.0 && phi < 2.0 * kPi))
    throw std::invalid_argument("phi must be in [0, 2pi)");
  for (double t : {theta_a, theta_b, theta_c})
    if (!(t > 0.0 && t <= kPi / 2.0))
      throw std::invalid_argument("theta_{A,B,C} must be in (0, pi/2]");

  const cplx phase = std::exp(cplx{0.0, phi});
  const double ca[2] = {std::cos(theta_a), std::sin(theta_a)};
  const double cb[2] = {std::cos(theta_b), std::sin(theta_b)};
  const double cc[2] = {std::cos(theta_c), std::sin(theta_c)};

  // qubit 0 = A, qubit 1 = B, qubit 2 = C
  std::vector<cplx> amps(8, cplx{0.0, 0.0});
  for (std::size_t idx = 0; idx < 8; ++idx) {
    const int a = idx & 1, b = (idx >> 1) & 1, c = (idx >> 2) & 1;
    amps[idx] = std::sin(v) * phase * ca[a] * cb[b] * cc[c];
  }
  amps[0] += std::cos(v);

  LabeledState ls;
  ls.family = Family::GhzClass;
  ls.gen_params = {v, phi, theta_a, theta_b, theta_c};
  ls.state = Statevector::from_amplitudes(3, std::move(amps));
  ls.state.normalize();
  ls.label = -1;
  ls.witness_value = mw_entanglement(ls.state);
  return ls;
}

LabeledState gen_bipartite(BipartiteSplit split, double theta0, double theta1,
                           double alpha, double beta) {
  const double c = closed_form_concurrence(theta0, theta1);
  if (c == 0.0)
    throw std::invalid_argument("bipartite pair parameters give zero concurrence");

  int lone, pair_target, pair_control;
  Family fam;
  switch (split) {
    case BipartiteSplit::A_BC:
      lone = 0; pair_target = 1; pair_control = 2; fam = Family::BipartiteA_BC;
      break;
    case BipartiteSplit::B_AC:
      lone = 1; pair_target = 0; pair_control = 2; fam = Family::BipartiteB_AC;
      break;
    case BipartiteSplit::C_AB:
      lone = 2; pair_target = 0; pair_control = 1; fam = Family::BipartiteC_AB;
      break;
    default:
      throw std::invalid_argument("bad split");
  }

  LabeledState ls;
  ls.family = fam;
  ls.gen_params = {theta0, theta1, alpha, beta};
  ls.state = Statevector::zero(3);
  apply_gate(ls.state, GateOp::fixed(GateKind::RX, pair_control), theta0);
  apply_gate(ls.state, GateOp::controlled(GateKind::CRY, pair_control, pair_target),
             theta1);
  apply_gate(ls.state, GateOp::fixed(GateKind::RY, lone), alpha);
  apply_gate(ls.state, GateOp::fixed(GateKind::RZ, lone), beta);
  ls.label = -1;
  ls.witness_value = c;
  return ls;
}

DensityMatrix gen_separable_mixture(
    int n_qubits, const std::vector<double>& weights,
    const std::vector<std::vector<std::pair<double, double>>>& angles) {
  std::vector<Statevector> states;
  states.reserve(angles.size());
  for (const auto& a : angles) states.push_back(gen_separable(n_qubits, a).state);
  return DensityMatrix::mixture(weights, states);
}

LabeledState regenerate(Family family, const std::vector<double>& p) {
  switch (family) {
    case Family::TwoQubitConcurrence:
      if (p.size() == 2) return gen_two_qubit(p[0], p[1]);
      if (p.size() == 4) return gen_two_qubit_phased(p[0], p[1], p[2], p[3]);
      throw std::invalid_argument("two-qubit record needs 2 or 4 parameters");
    case Family::GhzClass:
      if (p.size() != 5) throw std::invalid_argument("ghz record needs 5 parameters");
      return gen_ghz_class(p[0], p[1], p[2], p[3], p[4]);
    case Family::BipartiteA_BC:
    case Family::BipartiteB_AC:
    case Family::BipartiteC_AB: {
      if (p.size() != 4) throw std::invalid_argument("bipartite record needs 4 parameters");
      const BipartiteSplit s = family == Family::BipartiteA_BC
                                   ? BipartiteSplit::A_BC
                                   : family == Family::BipartiteB_AC
                                         ? BipartiteSplit::B_AC
                                         : BipartiteSplit::C_AB;
      return gen_bipartite(s, p[0], p[1], p[2], p[3]);
    }
    case Family::SeparableProduct: {
      if (p.size() % 2 != 0 || p.empty())
        throw std::invalid_argument("separable record needs 2 parameters per qubit");
      std::vector<std::pair<double, double>> angles;
      for (std::size_t i = 0; i < p.size(); i += 2)
        angles.emplace_back(p[i], p[i + 1]);
      return gen_separable(static_cast<int>(angles.size()), angles);
    }
  }
  throw std::logic_error("unreachable family");
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::MixedConcurrence: return "mixed-c";
    case Regime::MaximalConcurrence: return "max-c";
    case Regime::GhzClass: return "ghz";
    case Regime::BipartiteA_BC: return "bipartite-a-bc";
    case Regime::BipartiteB_AC: return "bipartite-b-ac";
    case Regime::BipartiteC_AB: return "bipartite-c-ab";
  }
  throw std::logic_error("unreachable regime");
}

Regime regime_from_name(const std::string& name) {
  if (name == "mixed-c") return Regime::MixedConcurrence;
  if (name == "max-c") return Regime::MaximalConcurrence;
  if (name == "ghz") return Regime::GhzClass;
  if (name == "bipartite-a-bc") return Regime::BipartiteA_BC;
  if (name == "bipartite-b-ac") return Regime::BipartiteB_AC;
  if (name == "bipartite-c-ab") return Regime::BipartiteC_AB;
  throw std::invalid_argument("unknown regime: " + name);
}

int regime_qubits(Regime r) {
  return (r == Regime::MixedConcurrence || r == Regime::MaximalConcurrence) ? 2 : 3;
}

namespace {

LabeledState sample_entangled(Regime regime, Rng& rng) {
  switch (regime) {
    case Regime::MixedConcurrence:
      while (true) {
        const double t0 = rng.uniform(0.0, 2.0 * kPi);
        const double t1 = rng.uniform(0.0, 2.0 * kPi);
        const double c = std::abs(std::sin(t0) * std::sin(0.5 * t1));
        if (c >= 0.05 && c <= 0.95) return gen_two_qubit(t0, t1);
      }
    case Regime::MaximalConcurrence:
      return gen_two_qubit_phased(kPi / 2.0, kPi, rng.uniform(0.0, 2.0 * kPi),
                                  rng.uniform(0.0, 2.0 * kPi));
    case Regime::GhzClass:
      // reject nearly-product corners of the family (tiny v or tiny theta
      // drives the entanglement witness to zero)
      while (true) {
        const double v = (kPi / 4.0) * (1.0 - rng.uniform());
        const double phi = rng.uniform(0.0, 2.0 * kPi);
        const double ta = (kPi / 2.0) * (1.0 - rng.uniform());
        const double tb = (kPi / 2.0) * (1.0 - rng.uniform());
        const double tc = (kPi / 2.0) * (1.0 - rng.uniform());
        LabeledState ls = gen_ghz_class(v, phi, ta, tb, tc);
        if (ls.witness_value >= 0.2) return ls;
      }
    case Regime::BipartiteA_BC:
    case Regime::BipartiteB_AC:
    case Regime::BipartiteC_AB: {
      const BipartiteSplit s = regime == Regime::BipartiteA_BC
                                   ? BipartiteSplit::A_BC
                                   : regime == Regime::BipartiteB_AC
                                         ? BipartiteSplit::B_AC
                                         : BipartiteSplit::C_AB;
      while (true) {
        const double t0 = rng.uniform(0.0, 2.0 * kPi);
        const double t1 = rng.uniform(0.0, 2.0 * kPi);
        const double c = std::abs(std::sin(t0) * std::sin(0.5 * t1));
        if (c < 0.2) continue;
        return gen_bipartite(s, t0, t1, rng.uniform(0.0, 2.0 * kPi),
                             rng.uniform(0.0, 2.0 * kPi));
      }
    }
  }
  throw std::logic_error("unreachable regime");
}

LabeledState sample_separable(int n_qubits, Rng& rng) {
  std::vector<std::pair<double, double>> angles;
  for (int q = 0; q < n_qubits; ++q)
    angles.emplace_back(rng.uniform(0.0, 2.0 * kPi), rng.uniform(0.0, 2.0 * kPi));
  return gen_separable(n_qubits, angles);
}

}  // namespace

std::vector<LabeledState> sample_regime_states(Regime regime, int count,
                                               std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("count must be >= 0");
  std::vector<LabeledState> states;
  states.reserve(static_cast<std::size_t>(count));
  Rng rng(seed);
  for (int i = 0; i < count; ++i)
    states.push_back(sample_entangled(regime, rng));
  return states;
}

DatasetSplit make_split(Regime regime, int m_train, int m_test,
                        std::uint64_t seed) {
  if (m_train < 2) throw std::invalid_argument("m_train must be >= 2");
  if (m_train % 2 != 0)
    throw std::invalid_argument("m_train must be even for balanced labels");
  const int n = regime_qubits(regime);
  if (m_train > (1 << n))
    throw std::invalid_argument("m_train exceeds coefficient-circuit capacity");
  if (m_test < 0) throw std::invalid_argument("m_test must be >= 0");

  DatasetSplit split;
  split.regime = regime;
  split.seed = seed;
  Rng rng(seed);
  for (int i = 0; i < m_train / 2; ++i) {
    split.train.push_back(sample_entangled(regime, rng));
    split.train.push_back(sample_separable(n, rng));
  }
  const int test_ent = m_test - m_test / 2;
  for (int i = 0; i < m_test; ++i) {
    if (i < test_ent)
      split.test.push_back(sample_entangled(regime, rng));
    else
      split.test.push_back(sample_separable(n, rng));
  }
  return split;
}

namespace {

void write_record(std::ostream& out, const LabeledState& ls) {
  out << family_name(ls.family) << ' ' << ls.label << ' '
      << fmt_double(ls.witness_value) << ' ' << join(ls.gen_params, ',') << '\n';
}

LabeledState read_record(const std::string& line) {
  std::istringstream ss(line);
  std::string fam, label, witness, params;
  if (!(ss >> fam >> label >> witness >> params))
    throw std::runtime_error("bad dataset record: " + line);
  std::vector<double> p;
  for (const auto& tok : split(params, ',')) p.push_back(parse_double(tok));
  LabeledState ls = regenerate(family_from_name(fam), p);
  if (ls.label != std::stoi(label))
    throw std::runtime_error("label mismatch in dataset record: " + line);
  return ls;
}

}  // namespace

void write_dataset(std::ostream& out, const DatasetSplit& ds) {
  out << "# qent dataset v1\n";
  out << "regime " << regime_name(ds.regime) << '\n';
  out << "seed " << ds.seed << '\n';
  out << "train " << ds.train.size() << '\n';
  for (const auto& ls : ds.train) write_record(out, ls);
  out << "test " << ds.test.size() << '\n';
  for (const auto& ls : ds.test) write_record(out, ls);
}

DatasetSplit read_dataset(std::istream& in) {
  DatasetSplit ds;
  std::string line;
  std::size_t n_train = 0, n_test = 0;
  enum { Head, Train, Test } section = Head;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    if (key == "regime") {
      std::string v; ss >> v;
      ds.regime = regime_from_name(v);
    } else if (key == "seed") {
      ss >> ds.seed;
    } else if (key == "train") {
      ss >> n_train;
      section = Train;
    } else if (key == "test") {
      ss >> n_test;
      section = Test;
    } else {
      if (section == Train)
        ds.train.push_back(read_record(line));
      else if (section == Test)
        ds.test.push_back(read_record(line));
      else
        throw std::runtime_error("record before train/test header");
    }
  }
  if (ds.train.size() != n_train || ds.test.size() != n_test)
    throw std::runtime_error("dataset record counts do not match header");
  return ds;
}

void save_dataset(const std::string& path, const DatasetSplit& ds) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  write_dataset(f, ds);
}

DatasetSplit load_dataset(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return read_dataset(f);
}

}  // namespace qent

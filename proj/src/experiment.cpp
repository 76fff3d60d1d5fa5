#include "qent/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qent/metrics.hpp"
#include "qent/rng.hpp"
#include "qent/textio.hpp"

namespace qent {

namespace fs = std::filesystem;

std::string experiment_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Table1: return "table1";
    case ExperimentKind::Table2: return "table2";
    case ExperimentKind::Table3: return "table3";
    case ExperimentKind::LossTrace: return "loss";
    case ExperimentKind::ShotScaling: return "shot-scaling";
  }
  throw std::logic_error("unreachable experiment kind");
}

ExperimentKind experiment_from_name(const std::string& name) {
  if (name == "table1") return ExperimentKind::Table1;
  if (name == "table2") return ExperimentKind::Table2;
  if (name == "table3") return ExperimentKind::Table3;
  if (name == "loss") return ExperimentKind::LossTrace;
  if (name == "shot-scaling") return ExperimentKind::ShotScaling;
  throw std::invalid_argument("unknown experiment: " + name);
}

void ExperimentConfig::validate(const AnsatzRegistry& registry) const {
  if (seeds.empty()) throw std::invalid_argument("need at least one seed");
  if (output_dir.empty()) throw std::invalid_argument("output_dir is required");
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (m_validation < 1)
    throw std::invalid_argument("m_validation must be >= 1");
  hyper.validate();
  for (const auto& id : circuit_ids)
    registry.get(id);  // throws on unknown ids
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

namespace {

std::vector<std::string> default_circuits(ExperimentKind kind,
                                          const AnsatzRegistry& registry) {
  switch (kind) {
    case ExperimentKind::Table1:
    case ExperimentKind::Table2:
      return registry.benchmark_ids();
    case ExperimentKind::Table3:
      return {"M2", "C18", "C11", "C6", "M3", "B2", "B3", "B4"};
    case ExperimentKind::LossTrace:
      return {"M2"};
    case ExperimentKind::ShotScaling:
      return {};
  }
  throw std::logic_error("unreachable experiment kind");
}

std::vector<Regime> table3_regimes() {
  return {Regime::MixedConcurrence, Regime::MaximalConcurrence,
          Regime::GhzClass,         Regime::BipartiteA_BC,
          Regime::BipartiteB_AC,    Regime::BipartiteC_AB};
}

std::string seeds_to_string(const std::vector<std::uint64_t>& seeds) {
  std::string s;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(seeds[i]);
  }
  return s;
}

std::string ids_to_string(const std::vector<std::string>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ',';
    s += ids[i];
  }
  return s;
}

struct RecordWriter {
  std::ofstream out;
  explicit RecordWriter(const std::string& path) : out(path) {
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "experiment,circuit,regime,seed,metric,value\n";
  }
  void add(const std::string& experiment, const std::string& circuit,
           const std::string& regime, std::uint64_t seed,
           const std::string& metric, const std::string& value) {
    out << experiment << ',' << circuit << ',' << regime << ',' << seed << ','
        << metric << ',' << value << '\n';
  }
};

}  // namespace

void write_manifest(const std::string& path, const ExperimentConfig& c) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << "# qent manifest v1\n";
  f << "experiment " << experiment_name(c.experiment) << '\n';
  f << "circuits " << ids_to_string(c.circuit_ids) << '\n';
  f << "regime " << regime_name(c.regime) << '\n';
  f << "m_test " << c.m_test << '\n';
  f << "m_validation " << c.m_validation << '\n';
  f << "restarts " << c.restarts << '\n';
  f << "shots " << c.hyper.shots << '\n';
  f << "C " << fmt_double(c.hyper.C) << '\n';
  f << "gamma " << fmt_double(c.hyper.gamma) << '\n';
  f << "iterations " << c.hyper.spsa_iterations << '\n';
  f << "spsa_gains " << fmt_double(c.hyper.gains.a) << ','
    << fmt_double(c.hyper.gains.c) << ',' << fmt_double(c.hyper.gains.stability)
    << ',' << fmt_double(c.hyper.gains.alpha) << ','
    << fmt_double(c.hyper.gains.gamma) << '\n';
  f << "seeds " << seeds_to_string(c.seeds) << '\n';
  f << "ec_samples " << c.ec_samples << '\n';
  f << "exp_pairs " << c.exp_pairs << '\n';
  f << "exp_bins " << c.exp_bins << '\n';
}

ExperimentConfig config_from_manifest(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  ExperimentConfig c;
  c.circuit_ids.clear();
  c.seeds.clear();
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string key, value;
    ss >> key >> value;
    if (key == "experiment") c.experiment = experiment_from_name(value);
    else if (key == "circuits") {
      if (!value.empty())
        for (const auto& id : split(value, ',')) c.circuit_ids.push_back(id);
    } else if (key == "regime") c.regime = regime_from_name(value);
    else if (key == "m_test") c.m_test = std::stoi(value);
    else if (key == "m_validation") c.m_validation = std::stoi(value);
    else if (key == "restarts") c.restarts = std::stoi(value);
    else if (key == "shots") c.hyper.shots = std::stoi(value);
    else if (key == "C") c.hyper.C = parse_double(value);
    else if (key == "gamma") c.hyper.gamma = parse_double(value);
    else if (key == "iterations") c.hyper.spsa_iterations = std::stoi(value);
    else if (key == "spsa_gains") {
      const auto g = split(value, ',');
      if (g.size() != 5) throw std::runtime_error("spsa_gains needs 5 values");
      c.hyper.gains.a = parse_double(g[0]);
      c.hyper.gains.c = parse_double(g[1]);
      c.hyper.gains.stability = parse_double(g[2]);
      c.hyper.gains.alpha = parse_double(g[3]);
      c.hyper.gains.gamma = parse_double(g[4]);
    } else if (key == "seeds") {
      for (const auto& s : split(value, ',')) c.seeds.push_back(std::stoull(s));
    } else if (key == "ec_samples") c.ec_samples = std::stoi(value);
    else if (key == "exp_pairs") c.exp_pairs = std::stoi(value);
    else if (key == "exp_bins") c.exp_bins = std::stoi(value);
    else throw std::runtime_error("unknown manifest key: " + key);
  }
  return c;
}

double table3_cell(Regime regime, const std::string& circuit_id,
                   const Hyperparams& hyper, int m_test, std::uint64_t seed,
                   int restarts, int m_validation) {
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (m_validation < 1)
    throw std::invalid_argument("m_validation must be >= 1");
  const int m_train = regime_qubits(regime) == 2 ? 4 : 8;
  Rng rng(seed);
  const auto test = sample_regime_states(regime, m_test, rng.fork_seed());
  const auto val = sample_regime_states(regime, m_validation, rng.fork_seed());
  double best_score = -1.0;
  double chosen_acc = 0.0;
  for (int r = 0; r < restarts; ++r) {
    const DatasetSplit split = make_split(regime, m_train, 0, rng.fork_seed());
    const TrainResult tr = train(split, circuit_id, hyper, rng.fork_seed());
    const double score =
        evaluate_accuracy(tr.model, val, hyper.shots, rng.fork_seed());
    const double acc =
        evaluate_accuracy(tr.model, test, hyper.shots, rng.fork_seed());
    if (score > best_score) {
      best_score = score;
      chosen_acc = acc;
    }
  }
  return chosen_acc;
}

namespace {

// Accuracy of one benchmark circuit used as the coefficient PQC on the
// two-qubit mixed-concurrence task; median over seeds.
double benchmark_accuracy(const std::string& circuit_id,
                          const ExperimentConfig& cfg, RecordWriter& records,
                          int& failures) {
  std::vector<double> accs;
  for (std::uint64_t seed : cfg.seeds) {
    try {
      const double acc =
          table3_cell(Regime::MixedConcurrence, circuit_id, cfg.hyper,
                      cfg.m_test, seed, cfg.restarts, cfg.m_validation);
      records.add(experiment_name(cfg.experiment), circuit_id, "mixed-c", seed,
                  "accuracy", fmt_double(acc));
      accs.push_back(acc);
    } catch (const std::exception& e) {
      records.add(experiment_name(cfg.experiment), circuit_id, "mixed-c", seed,
                  "error", e.what());
      ++failures;
    }
  }
  if (accs.empty()) return std::nan("");
  return median(accs);
}

int run_table1(const ExperimentConfig& cfg, const AnsatzRegistry& registry) {
  int failures = 0;
  RecordWriter records(cfg.output_dir + "/records.csv");
  std::ofstream table(cfg.output_dir + "/table1.csv");
  table << "circuit,accuracy,entangling_capability,mean,variance\n";
  for (const auto& id : cfg.circuit_ids) {
    const Circuit circuit = build(registry.get(id));
    const auto qs = meyer_wallach_samples(circuit, cfg.ec_samples, cfg.seeds[0]);
    double mean = 0.0, var = 0.0;
    for (double q : qs) mean += q;
    mean /= static_cast<double>(qs.size());
    for (double q : qs) var += (q - mean) * (q - mean);
    var /= static_cast<double>(qs.size());
    records.add("table1", id, "", cfg.seeds[0], "entangling_capability",
                fmt_double(mean));
    const double acc = benchmark_accuracy(id, cfg, records, failures);
    table << id << ',' << fmt_double(100.0 * acc) << ',' << fmt_double(mean)
          << ',' << fmt_double(mean) << ',' << fmt_double(var) << '\n';
  }
  return failures;
}

int run_table2(const ExperimentConfig& cfg, const AnsatzRegistry& registry) {
  int failures = 0;
  RecordWriter records(cfg.output_dir + "/records.csv");
  std::ofstream table(cfg.output_dir + "/table2.csv");
  table << "circuit,accuracy,expressibility,mean,variance\n";
  for (const auto& id : cfg.circuit_ids) {
    const Circuit circuit = build(registry.get(id));
    const MetricsReport rep =
        expressibility(circuit, cfg.exp_pairs, cfg.exp_bins, cfg.seeds[0]);
    records.add("table2", id, "", cfg.seeds[0], "expressibility",
                fmt_double(rep.expressibility_kl));
    const double acc = benchmark_accuracy(id, cfg, records, failures);
    table << id << ',' << fmt_double(100.0 * acc) << ','
          << fmt_double(rep.expressibility_kl) << ','
          << fmt_double(rep.sample_mean) << ','
          << fmt_double(rep.sample_variance) << '\n';
  }
  return failures;
}

int run_table3(const ExperimentConfig& cfg, const AnsatzRegistry& registry) {
  int failures = 0;
  RecordWriter records(cfg.output_dir + "/records.csv");
  std::ofstream table(cfg.output_dir + "/table3.csv");
  table << "regime,shot_noise";
  for (const auto& id : cfg.circuit_ids) table << ',' << id;
  table << '\n';

  for (Regime regime : table3_regimes()) {
    const int nq = regime_qubits(regime);
    table << regime_name(regime);

    // shot-noise column: first template of matching dimension at 8192 shots
    std::string first_id;
    for (const auto& id : cfg.circuit_ids)
      if (registry.get(id).n_qubits == nq) { first_id = id; break; }
    if (first_id.empty()) {
      table << ',';
    } else {
      Hyperparams noisy = cfg.hyper;
      noisy.shots = 8192;
      std::vector<double> accs;
      for (std::uint64_t seed : cfg.seeds) {
        try {
          const double acc = table3_cell(regime, first_id, noisy, cfg.m_test,
                                         seed, cfg.restarts, cfg.m_validation);
          records.add("table3", first_id, regime_name(regime), seed,
                      "accuracy_shot_noise", fmt_double(acc));
          accs.push_back(acc);
        } catch (const std::exception& e) {
          records.add("table3", first_id, regime_name(regime), seed, "error",
                      e.what());
          ++failures;
        }
      }
      table << ',' << (accs.empty() ? "" : fmt_double(100.0 * median(accs)));
    }

    for (const auto& id : cfg.circuit_ids) {
      if (registry.get(id).n_qubits != nq) {
        table << ',';
        continue;
      }
      std::vector<double> accs;
      for (std::uint64_t seed : cfg.seeds) {
        try {
          const double acc = table3_cell(regime, id, cfg.hyper, cfg.m_test,
                                         seed, cfg.restarts, cfg.m_validation);
          records.add("table3", id, regime_name(regime), seed, "accuracy",
                      fmt_double(acc));
          accs.push_back(acc);
        } catch (const std::exception& e) {
          records.add("table3", id, regime_name(regime), seed, "error", e.what());
          ++failures;
        }
      }
      table << ',' << (accs.empty() ? "" : fmt_double(100.0 * median(accs)));
    }
    table << '\n';
  }
  return failures;
}

int run_loss(const ExperimentConfig& cfg, const AnsatzRegistry& registry) {
  int failures = 0;
  RecordWriter records(cfg.output_dir + "/records.csv");
  const std::string id = cfg.circuit_ids.at(0);
  const int m_train = regime_qubits(cfg.regime) == 2 ? 4 : 8;
  for (std::uint64_t seed : cfg.seeds) {
    try {
      Rng rng(seed);
      const DatasetSplit split =
          make_split(cfg.regime, m_train, cfg.m_test, rng.fork_seed());
      const TrainResult tr = train(split, id, cfg.hyper, rng.fork_seed());
      std::ofstream f(cfg.output_dir + "/loss_" + std::to_string(seed) + ".csv");
      f << "iteration,loss\n";
      for (std::size_t i = 0; i < tr.loss_trace.size(); ++i)
        f << i << ',' << fmt_double(tr.loss_trace[i]) << '\n';
      records.add("loss", id, regime_name(cfg.regime), seed, "initial_loss",
                  fmt_double(tr.initial_loss));
      records.add("loss", id, regime_name(cfg.regime), seed, "final_loss",
                  fmt_double(tr.model.final_loss));
    } catch (const std::exception& e) {
      records.add("loss", id, regime_name(cfg.regime), seed, "error", e.what());
      ++failures;
    }
  }
  return failures;
}

int run_shot_scaling(const ExperimentConfig& cfg, const AnsatzRegistry&) {
  RecordWriter records(cfg.output_dir + "/records.csv");
  std::ofstream table(cfg.output_dir + "/shot_scaling.csv");
  table << "shots,mean_estimate,variance,exact_fidelity\n";

  // fixed random two-qubit pair; estimator statistics across 200 seeds
  Rng rng(cfg.seeds[0]);
  const Circuit prep = build(default_registry().get("C6"));
  auto random_state = [&] {
    std::vector<double> params(static_cast<std::size_t>(prep.n_params));
    for (double& p : params) p = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
    return apply_circuit(prep, params, Statevector::zero(2));
  };
  const Statevector a = random_state();
  const Statevector b = random_state();
  const double f_exact = fidelity(a, b);

  for (std::uint64_t shots : {std::uint64_t{512}, std::uint64_t{1024},
                              std::uint64_t{2048}}) {
    std::vector<double> rs;
    for (int s = 0; s < 200; ++s)
      rs.push_back(swap_test_estimate(a, b, shots, rng.fork_seed()));
    double mean = 0.0, var = 0.0;
    for (double r : rs) mean += r;
    mean /= static_cast<double>(rs.size());
    for (double r : rs) var += (r - mean) * (r - mean);
    var /= static_cast<double>(rs.size());
    table << shots << ',' << fmt_double(mean) << ',' << fmt_double(var) << ','
          << fmt_double(f_exact) << '\n';
    records.add("shot-scaling", "", "", shots, "variance", fmt_double(var));
  }
  return 0;
}

}  // namespace

int run_experiment(const ExperimentConfig& config_in,
                   const AnsatzRegistry& registry) {
  ExperimentConfig cfg = config_in;
  if (cfg.circuit_ids.empty())
    cfg.circuit_ids = default_circuits(cfg.experiment, registry);
  cfg.validate(registry);
  fs::create_directories(cfg.output_dir);
  write_manifest(cfg.output_dir + "/manifest.txt", cfg);

  switch (cfg.experiment) {
    case ExperimentKind::Table1: return run_table1(cfg, registry);
    case ExperimentKind::Table2: return run_table2(cfg, registry);
    case ExperimentKind::Table3: return run_table3(cfg, registry);
    case ExperimentKind::LossTrace: return run_loss(cfg, registry);
    case ExperimentKind::ShotScaling: return run_shot_scaling(cfg, registry);
  }
  throw std::logic_error("unreachable experiment kind");
}

void report_directory(const std::string& dir, std::ostream& out) {
  const std::string manifest_path = dir + "/manifest.txt";
  if (!fs::exists(manifest_path))
    throw std::runtime_error("no manifest in " + dir);
  const ExperimentConfig cfg = config_from_manifest(manifest_path);
  out << "experiment: " << experiment_name(cfg.experiment) << "\n";
  out << "seeds: " << cfg.seeds.size() << "\n";

  const std::string records_path = dir + "/records.csv";
  std::ifstream rec(records_path);
  if (!rec) throw std::runtime_error("missing records.csv in " + dir);

  // (circuit, regime, metric) -> values
  std::map<std::string, std::vector<double>> groups;
  std::string line;
  std::getline(rec, line);  // header
  while (std::getline(rec, line)) {
    const auto cols = split(line, ',');
    if (cols.size() != 6) continue;
    if (cols[4] == "error") {
      out << "  error [" << cols[1] << " " << cols[2] << " seed " << cols[3]
          << "]: " << cols[5] << "\n";
      continue;
    }
    groups[cols[1] + "|" + cols[2] + "|" + cols[4]].push_back(parse_double(cols[5]));
  }
  for (auto& [key, values] : groups) {
    const auto parts = split(key, '|');
    std::sort(values.begin(), values.end());
    const double med = median(values);
    out << "  " << parts[0];
    if (!parts[1].empty()) out << " " << parts[1];
    out << " " << parts[2] << ": median " << fmt_double(med);
    if (values.size() >= 4) {
      const double q1 = values[values.size() / 4];
      const double q3 = values[(3 * values.size()) / 4];
      out << " iqr [" << fmt_double(q1) << ", " << fmt_double(q3) << "]";
    }
    out << "\n";
  }
}

}  // namespace qent

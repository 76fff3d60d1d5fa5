#include "qent/qsvm.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qent/rng.hpp"
#include "qent/textio.hpp"

namespace qent {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void Hyperparams::validate() const {
  if (C <= 0.0) throw std::invalid_argument("C must be positive");
  if (gamma <= 0.0) throw std::invalid_argument("gamma must be positive");
  if (shots < 0) throw std::invalid_argument("shots must be >= 0");
  if (spsa_iterations < 1) throw std::invalid_argument("need at least one iteration");
}

std::vector<double> mu_vector(const Circuit& mu_circuit,
                              const std::vector<double>& theta, int m,
                              int shots, std::uint64_t seed) {
  const std::size_t dim = std::size_t{1} << mu_circuit.n_qubits;
  if (m < 1 || static_cast<std::size_t>(m) > dim)
    throw std::invalid_argument("m exceeds the circuit's basis count");
  const Statevector out =
      apply_circuit(mu_circuit, theta, Statevector::zero(mu_circuit.n_qubits));
  std::vector<double> mu(static_cast<std::size_t>(m));
  if (shots == 0) {
    for (int i = 0; i < m; ++i)
      mu[static_cast<std::size_t>(i)] = std::norm(out.amplitudes[static_cast<std::size_t>(i)]);
  } else {
    const auto counts =
        sample_measurement(out, static_cast<std::uint64_t>(shots), seed);
    for (int i = 0; i < m; ++i)
      mu[static_cast<std::size_t>(i)] =
          static_cast<double>(counts[static_cast<std::size_t>(i)]) / shots;
  }
  return mu;
}

double quantum_loss(const std::vector<double>& mu, const std::vector<int>& y,
                    const KernelMatrix& kernel, double C, double gamma) {
  const std::size_t m = mu.size();
  if (y.size() != m || kernel.size() != m)
    throw std::invalid_argument("mu, y and kernel sizes must agree");
  double loss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (kernel[i].size() != m) throw std::invalid_argument("kernel must be square");
    for (std::size_t j = 0; j < m; ++j)
      loss += mu[i] * mu[j] * y[i] * y[j] * (kernel[i][j] + 1.0 / gamma);
    loss += mu[i] * mu[i] / C;
  }
  return loss;
}

KernelMatrix build_kernel(const std::vector<LabeledState>& train, int shots,
                          std::uint64_t seed) {
  const std::size_t m = train.size();
  KernelMatrix k(m, std::vector<double>(m, 1.0));
  Rng rng(seed);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      double v;
      if (shots == 0) {
        v = fidelity(train[i].state, train[j].state);
      } else {
        v = swap_test_estimate(train[i].state, train[j].state,
                               static_cast<std::uint64_t>(shots), rng.fork_seed());
      }
      k[i][j] = v;
      k[j][i] = v;
    }
  }
  return k;
}

TrainResult train(const DatasetSplit& split, const Circuit& mu_circuit,
                  const Hyperparams& hyper, std::uint64_t seed) {
  hyper.validate();
  const std::size_t m = split.train.size();
  if (m == 0) throw std::invalid_argument("empty training set");
  if (m > (std::size_t{1} << mu_circuit.n_qubits))
    throw std::invalid_argument("training set exceeds coefficient-circuit capacity");
  mu_circuit.validate();

  std::vector<int> y;
  y.reserve(m);
  for (const auto& ls : split.train) y.push_back(ls.label);

  Rng rng(seed);
  const KernelMatrix kernel = build_kernel(split.train, hyper.shots, rng.fork_seed());

  std::vector<double> theta(static_cast<std::size_t>(mu_circuit.n_params));
  for (double& t : theta) t = rng.uniform(0.0, 2.0 * kPi);

  auto eval_loss = [&](const std::vector<double>& th) {
    const auto mu = mu_vector(mu_circuit, th, static_cast<int>(m), hyper.shots,
                              rng.fork_seed());
    return quantum_loss(mu, y, kernel, hyper.C, hyper.gamma);
  };

  TrainResult result;
  result.initial_loss = eval_loss(theta);
  std::vector<double> best_theta = theta;
  double best_loss = result.initial_loss;

  const SpsaGains& g = hyper.gains;
  std::vector<double> delta(theta.size());
  std::vector<double> plus(theta.size()), minus(theta.size());
  for (int k = 0; k < hyper.spsa_iterations; ++k) {
    const double ak = g.a / std::pow(k + 1 + g.stability, g.alpha);
    const double ck = g.c / std::pow(k + 1, g.gamma);
    for (std::size_t i = 0; i < theta.size(); ++i) {
      delta[i] = static_cast<double>(rng.rademacher());
      plus[i] = theta[i] + ck * delta[i];
      minus[i] = theta[i] - ck * delta[i];
    }
    const double lp = eval_loss(plus);
    const double lm = eval_loss(minus);
    for (std::size_t i = 0; i < theta.size(); ++i)
      theta[i] -= ak * (lp - lm) / (2.0 * ck * delta[i]);

    const double l = eval_loss(theta);
    result.loss_trace.push_back(l);
    if (l < best_loss) {
      best_loss = l;
      best_theta = theta;
    }
  }

  result.model.mu_circuit = mu_circuit;
  result.model.theta_star = best_theta;
  result.model.train_refs = split.train;
  result.model.hyper = hyper;
  result.model.kernel_cache = kernel;
  result.model.final_loss = best_loss;
  return result;
}

TrainResult train(const DatasetSplit& split, const std::string& mu_circuit_id,
                  const Hyperparams& hyper, std::uint64_t seed) {
  const AnsatzTemplate& tmpl = default_registry().get(mu_circuit_id);
  TrainResult result = train(split, build(tmpl), hyper, seed);
  result.model.mu_circuit_id = mu_circuit_id;
  return result;
}

Decision decide(const QsvmModel& model, const Statevector& test_state,
                int shots, std::uint64_t seed) {
  if (test_state.n_qubits != model.train_refs.at(0).state.n_qubits)
    throw std::invalid_argument("test state dimension does not match training set");
  Rng rng(seed);
  const auto mu = mu_vector(model.mu_circuit, model.theta_star,
                            static_cast<int>(model.train_refs.size()), shots,
                            rng.fork_seed());
  double score = 0.0;
  for (std::size_t i = 0; i < model.train_refs.size(); ++i) {
    const double overlap =
        shots == 0 ? fidelity(model.train_refs[i].state, test_state)
                   : swap_test_estimate(model.train_refs[i].state, test_state,
                                        static_cast<std::uint64_t>(shots),
                                        rng.fork_seed());
    score += mu[i] * model.train_refs[i].label *
             (overlap + 1.0 / model.hyper.gamma);
  }
  return Decision{score < 0.0 ? -1 : +1, score};
}

double evaluate_accuracy(const QsvmModel& model,
                         const std::vector<LabeledState>& test, int shots,
                         std::uint64_t seed) {
  if (test.empty()) throw std::invalid_argument("empty test set");
  Rng rng(seed);
  int correct = 0;
  for (const auto& ls : test)
    if (decide(model, ls.state, shots, rng.fork_seed()).label == ls.label)
      ++correct;
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

void save_model(const std::string& path, const QsvmModel& model) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << "# qent model v1\n";
  f << "circuit " << (model.mu_circuit_id.empty() ? "?" : model.mu_circuit_id) << '\n';
  f << "theta " << join(model.theta_star, ',') << '\n';
  f << "C " << fmt_double(model.hyper.C) << '\n';
  f << "gamma " << fmt_double(model.hyper.gamma) << '\n';
  f << "shots " << model.hyper.shots << '\n';
  f << "iterations " << model.hyper.spsa_iterations << '\n';
  f << "final_loss " << fmt_double(model.final_loss) << '\n';
  f << "train " << model.train_refs.size() << '\n';
  for (const auto& ls : model.train_refs)
    f << family_name(ls.family) << ' ' << ls.label << ' '
      << fmt_double(ls.witness_value) << ' ' << join(ls.gen_params, ',') << '\n';
  f << "kernel " << model.kernel_cache.size() << '\n';
  for (const auto& row : model.kernel_cache) f << join(row, ',') << '\n';
}

QsvmModel load_model(const std::string& path, const AnsatzRegistry& registry) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  QsvmModel model;
  std::string line;
  std::size_t n_train = 0, n_kernel = 0;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    if (key == "circuit") {
      ss >> model.mu_circuit_id;
      model.mu_circuit = build(registry.get(model.mu_circuit_id));
    } else if (key == "theta") {
      std::string v; ss >> v;
      for (const auto& tok : split(v, ',')) model.theta_star.push_back(parse_double(tok));
    } else if (key == "C") {
      std::string v; ss >> v; model.hyper.C = parse_double(v);
    } else if (key == "gamma") {
      std::string v; ss >> v; model.hyper.gamma = parse_double(v);
    } else if (key == "shots") {
      ss >> model.hyper.shots;
    } else if (key == "iterations") {
      ss >> model.hyper.spsa_iterations;
    } else if (key == "final_loss") {
      std::string v; ss >> v; model.final_loss = parse_double(v);
    } else if (key == "train") {
      ss >> n_train;
      for (std::size_t i = 0; i < n_train; ++i) {
        if (!std::getline(f, line)) throw std::runtime_error("truncated model file");
        std::istringstream rs(line);
        std::string fam, label, witness, params;
        rs >> fam >> label >> witness >> params;
        std::vector<double> p;
        for (const auto& tok : split(params, ',')) p.push_back(parse_double(tok));
        model.train_refs.push_back(regenerate(family_from_name(fam), p));
      }
    } else if (key == "kernel") {
      ss >> n_kernel;
      for (std::size_t i = 0; i < n_kernel; ++i) {
        if (!std::getline(f, line)) throw std::runtime_error("truncated model file");
        std::vector<double> row;
        for (const auto& tok : split(line, ',')) row.push_back(parse_double(tok));
        model.kernel_cache.push_back(std::move(row));
      }
    } else {
      throw std::runtime_error("unknown model key: " + key);
    }
  }
  if (model.train_refs.size() != n_train || model.kernel_cache.size() != n_kernel)
    throw std::runtime_error("model file counts do not match headers");
  return model;
}

double ClassicalSvmModel::decision_value(const std::vector<double>& a) const {
  double s = 1.0 / lambda;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dot = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) dot += x[i][d] * a[d];
    s += mu[i] * y[i] * dot;
  }
  return s;
}

int ClassicalSvmModel::predict(const std::vector<double>& a) const {
  return decision_value(a) < 0.0 ? -1 : +1;
}

ClassicalSvmModel classical_svm_dual(const std::vector<std::vector<double>>& x,
                                     const std::vector<int>& y, double C,
                                     double lambda) {
  const std::size_t m = x.size();
  if (m < 2 || y.size() != m)
    throw std::invalid_argument("need at least two labeled points");
  bool has_pos = false, has_neg = false;
  for (int yi : y) (yi > 0 ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg)
    throw std::invalid_argument("both classes must be present");

  // Q_ij = y_i y_j x_i.x_j; objective (1/C)|mu|^2 + mu'Q mu/2 - sum(mu)
  std::vector<std::vector<double>> q(m, std::vector<double>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      double dot = 0.0;
      for (std::size_t d = 0; d < x[i].size(); ++d) dot += x[i][d] * x[j][d];
      q[i][j] = y[i] * y[j] * dot;
    }

  // Gershgorin bound on the Hessian spectral radius gives a safe step size
  double lip = 2.0 / C;
  for (std::size_t i = 0; i < m; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m; ++j) row += std::abs(q[i][j]);
    lip = std::max(lip, 2.0 / C + row);
  }
  const double step = 1.0 / lip;

  std::vector<double> mu(m, 0.0), grad(m);
  for (int iter = 0; iter < 200000; ++iter) {
    for (std::size_t i = 0; i < m; ++i) {
      grad[i] = 2.0 * mu[i] / C - 1.0;
      for (std::size_t j = 0; j < m; ++j) grad[i] += q[i][j] * mu[j];
    }
    double shift = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double next = std::max(0.0, mu[i] - step * grad[i]);
      shift = std::max(shift, std::abs(next - mu[i]));
      mu[i] = next;
    }
    if (shift < 1e-8) break;
  }

  ClassicalSvmModel model;
  model.x = x;
  model.y = y;
  model.mu = std::move(mu);
  model.lambda = lambda;
  return model;
}

}  // namespace qent

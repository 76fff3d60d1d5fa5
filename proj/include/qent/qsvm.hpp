#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qent/ansatz.hpp"
#include "qent/dataset.hpp"

namespace qent {

struct SpsaGains {
  double a = 0.2;
  double c = 0.1;
  double stability = 10.0;  // the "A" offset in a_k = a / (k + 1 + A)^alpha
  double alpha = 0.602;
  double gamma = 0.101;  // decay of c_k = c / (k + 1)^gamma
};

struct Hyperparams {
  double C = 100.0;
  double gamma = 10.0;  // 1/gamma enters both the loss and the decision offset
  int shots = 0;        // 0 = exact probabilities and overlaps
  int spsa_iterations = 200;
  SpsaGains gains;

  void validate() const;
};

using KernelMatrix = std::vector<std::vector<double>>;

struct QsvmModel {
  std::string mu_circuit_id;  // registry id, empty for ad-hoc circuits
  Circuit mu_circuit;
  std::vector<double> theta_star;
  std::vector<LabeledState> train_refs;
  Hyperparams hyper;
  KernelMatrix kernel_cache;
  double final_loss = 0.0;
};

struct TrainResult {
  QsvmModel model;
  std::vector<double> loss_trace;  // one entry per SPSA iteration
  double initial_loss = 0.0;
};

struct Decision {
  int label = 0;      // +1 separable, -1 entangled; score 0 ties to +1
  double score = 0.0;
};

// First m computational-basis probabilities of mu_circuit at theta.
// shots = 0 gives exact Born probabilities, otherwise empirical frequencies.
std::vector<double> mu_vector(const Circuit& mu_circuit,
                              const std::vector<double>& theta, int m,
                              int shots, std::uint64_t seed);

// L = sum_ij mu_i mu_j y_i y_j [K_ij + 1/gamma] + (1/C) sum_i mu_i^2
double quantum_loss(const std::vector<double>& mu, const std::vector<int>& y,
                    const KernelMatrix& kernel, double C, double gamma);

// M x M matrix of pairwise |<psi_i|psi_j>|^2; exact when shots = 0, else via
// the swap-test estimator (symmetrized, unit diagonal).
KernelMatrix build_kernel(const std::vector<LabeledState>& train, int shots,
                          std::uint64_t seed);

// SPSA minimization of the quantum loss over theta. The kernel is computed
// once and reused across iterations; theta_star is the best iterate seen.
TrainResult train(const DatasetSplit& split, const Circuit& mu_circuit,
                  const Hyperparams& hyper, std::uint64_t seed);
TrainResult train(const DatasetSplit& split, const std::string& mu_circuit_id,
                  const Hyperparams& hyper, std::uint64_t seed);

Decision decide(const QsvmModel& model, const Statevector& test_state,
                int shots, std::uint64_t seed);

// Fraction of test states whose decision matches their label.
double evaluate_accuracy(const QsvmModel& model,
                         const std::vector<LabeledState>& test, int shots,
                         std::uint64_t seed);

void save_model(const std::string& path, const QsvmModel& model);
QsvmModel load_model(const std::string& path, const AnsatzRegistry& registry);

// Classical soft-margin dual solved by projected gradient descent over
// mu >= 0; decision f(a) = sgn(sum mu_i y_i x_i.a + 1/lambda).
struct ClassicalSvmModel {
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  std::vector<double> mu;
  double lambda = 10.0;

  double decision_value(const std::vector<double>& a) const;
  int predict(const std::vector<double>& a) const;
};

ClassicalSvmModel classical_svm_dual(const std::vector<std::vector<double>>& x,
                                     const std::vector<int>& y, double C,
                                     double lambda);

}  // namespace qent

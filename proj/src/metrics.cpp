#include "qent/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "qent/rng.hpp"

namespace qent {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::vector<double> random_params(int n_params, Rng& rng) {
  std::vector<double> p(static_cast<std::size_t>(n_params));
  for (double& x : p) x = rng.uniform(0.0, 2.0 * kPi);
  return p;
}

void mean_variance(const std::vector<double>& xs, double& mean, double& var) {
  mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= static_cast<double>(xs.size());
}

}  // namespace

double meyer_wallach_q(const Statevector& state) {
  if (state.n_qubits < 2)
    throw std::invalid_argument("Meyer-Wallach needs at least two qubits");
  double acc = 0.0;
  for (int q = 0; q < state.n_qubits; ++q)
    acc += subsystem_purity(state, {q});
  const double q = 2.0 * (1.0 - acc / state.n_qubits);
  // product states should report exactly 0, not purity round-off
  return q < 1e-12 ? 0.0 : q;
}

std::vector<double> meyer_wallach_samples(const Circuit& circuit, int n_samples,
                                          std::uint64_t seed) {
  if (circuit.n_qubits < 2)
    throw std::invalid_argument("entangling capability needs >= 2 qubits");
  Rng rng(seed);
  const Statevector zero = Statevector::zero(circuit.n_qubits);
  std::vector<double> qs;
  qs.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i)
    qs.push_back(meyer_wallach_q(
        apply_circuit(circuit, random_params(circuit.n_params, rng), zero)));
  return qs;
}

double entangling_capability(const Circuit& circuit, int n_samples,
                             std::uint64_t seed) {
  if (n_samples < 100)
    throw std::invalid_argument("entangling capability needs >= 100 samples");
  const auto qs = meyer_wallach_samples(circuit, n_samples, seed);
  double mean, var;
  mean_variance(qs, mean, var);
  return mean;
}

double fidelity_kl_vs_haar(const std::vector<double>& fidelities, int n_bins,
                           std::size_t hilbert_dim) {
  if (n_bins < 1) throw std::invalid_argument("need at least one bin");
  const double n_real = static_cast<double>(hilbert_dim);
  std::vector<double> counts(static_cast<std::size_t>(n_bins), 0.0);
  for (double f : fidelities) {
    int bin = static_cast<int>(f * n_bins);
    if (bin >= n_bins) bin = n_bins - 1;  // F = 1 lands in the last bin
    if (bin < 0) bin = 0;
    counts[static_cast<std::size_t>(bin)] += 1.0;
  }
  const double total = static_cast<double>(fidelities.size());
  double kl = 0.0;
  for (int b = 0; b < n_bins; ++b) {
    double p = counts[static_cast<std::size_t>(b)] / total;
    if (p == 0.0) p = 1e-12;  // keep KL finite; Haar masses are never zero
    const double lo = static_cast<double>(b) / n_bins;
    const double hi = static_cast<double>(b + 1) / n_bins;
    // exact integral of (N-1)(1-F)^(N-2) over the bin
    const double q =
        std::pow(1.0 - lo, n_real - 1.0) - std::pow(1.0 - hi, n_real - 1.0);
    kl += p * std::log(p / q);
  }
  return kl;
}

MetricsReport expressibility(const Circuit& circuit, int n_pairs, int n_bins,
                             std::uint64_t seed) {
  if (n_pairs < 1000) throw std::invalid_argument("expressibility needs >= 1000 pairs");
  if (n_bins < 10) throw std::invalid_argument("expressibility needs >= 10 bins");
  Rng rng(seed);
  const Statevector zero = Statevector::zero(circuit.n_qubits);
  std::vector<double> fids;
  fids.reserve(static_cast<std::size_t>(n_pairs));
  for (int i = 0; i < n_pairs; ++i) {
    const Statevector a =
        apply_circuit(circuit, random_params(circuit.n_params, rng), zero);
    const Statevector b =
        apply_circuit(circuit, random_params(circuit.n_params, rng), zero);
    fids.push_back(fidelity(a, b));
  }
  MetricsReport rep;
  rep.expressibility_kl =
      fidelity_kl_vs_haar(fids, n_bins, std::size_t{1} << circuit.n_qubits);
  mean_variance(fids, rep.sample_mean, rep.sample_variance);
  rep.n_samples = n_pairs;
  rep.n_bins = n_bins;
  rep.seed = seed;
  return rep;
}

}  // namespace qent

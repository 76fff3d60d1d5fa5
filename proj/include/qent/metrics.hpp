#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qent/statevector.hpp"

namespace qent {

struct MetricsReport {
  std::string circuit_id;
  double entangling_capability = 0.0;
  double expressibility_kl = 0.0;
  double sample_mean = 0.0;      // mean of the underlying estimator samples
  double sample_variance = 0.0;  // population variance of the same samples
  int n_samples = 0;
  int n_bins = 0;
  std::uint64_t seed = 0;
};

// Meyer-Wallach measure Q = 2 [1 - (1/n) sum_k tr(rho_k^2)].
double meyer_wallach_q(const Statevector& state);

// Q samples at parameter vectors drawn uniformly from [0, 2pi)^n_params.
std::vector<double> meyer_wallach_samples(const Circuit& circuit, int n_samples,
                                          std::uint64_t seed);

// Mean of meyer_wallach_samples; n_samples >= 100.
double entangling_capability(const Circuit& circuit, int n_samples,
                             std::uint64_t seed);

// KL divergence between the circuit's output-fidelity histogram (n_bins
// equal-width bins on [0,1], n_pairs parameter-vector pairs) and the exact
// per-bin Haar mass for dimension 2^n_qubits. Also reports the sample mean
// and variance of the fidelities.
MetricsReport expressibility(const Circuit& circuit, int n_pairs, int n_bins,
                             std::uint64_t seed);

// KL of an externally supplied fidelity sample against Haar; used both by
// expressibility() and by the inverse-CDF self test.
double fidelity_kl_vs_haar(const std::vector<double>& fidelities, int n_bins,
                           std::size_t hilbert_dim);

}  // namespace qent

#include "qent/density.hpp"

#include <cmath>
#include <stdexcept>

namespace qent {

DensityMatrix DensityMatrix::from_statevector(const Statevector& state) {
  DensityMatrix rho;
  rho.n_qubits = state.n_qubits;
  const std::size_t d = state.dim();
  rho.entries.assign(d * d, cplx{0.0, 0.0});
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      rho.entries[r * d + c] = state.amplitudes[r] * std::conj(state.amplitudes[c]);
  return rho;
}

DensityMatrix DensityMatrix::mixture(const std::vector<double>& weights,
                                     const std::vector<Statevector>& states) {
  if (weights.empty() || weights.size() != states.size())
    throw std::invalid_argument("mixture needs matching weights and states");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("mixture weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-10)
    throw std::invalid_argument("mixture weights must sum to 1");

  DensityMatrix rho;
  rho.n_qubits = states[0].n_qubits;
  const std::size_t d = states[0].dim();
  rho.entries.assign(d * d, cplx{0.0, 0.0});
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (states[k].n_qubits != rho.n_qubits)
      throw std::invalid_argument("mixture states must share qubit count");
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        rho.entries[r * d + c] +=
            weights[k] * states[k].amplitudes[r] * std::conj(states[k].amplitudes[c]);
  }
  return rho;
}

double DensityMatrix::trace_real() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) t += at(i, i).real();
  return t;
}

double DensityMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t c = 0; c < dim(); ++c)
      worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
  return worst;
}

}  // namespace qent

#pragma once

#include <vector>

#include "qent/statevector.hpp"

namespace qent {

// 2^n x 2^n density operator, row-major. Only used for the mixed-state
// generators and conformance checks; the main pipeline stays pure-state.
struct DensityMatrix {
  int n_qubits = 0;
  std::vector<cplx> entries;

  static DensityMatrix from_statevector(const Statevector& state);
  // sum_i p_i |psi_i><psi_i|, weights must be nonnegative and sum to 1.
  static DensityMatrix mixture(const std::vector<double>& weights,
                               const std::vector<Statevector>& states);

  std::size_t dim() const { return std::size_t{1} << n_qubits; }
  cplx& at(std::size_t r, std::size_t c) { return entries[r * dim() + c]; }
  const cplx& at(std::size_t r, std::size_t c) const {
    return entries[r * dim() + c];
  }

  double trace_real() const;
  // max |rho - rho^dagger| entry
  double hermiticity_defect() const;
};

}  // namespace qent

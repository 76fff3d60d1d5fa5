#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qent/circuit.hpp"

namespace qent {

using cplx = std::complex<double>;

// Dense amplitude vector over n qubits. Qubit 0 is the least-significant
// bit of the basis index.
struct Statevector {
  int n_qubits = 0;
  std::vector<cplx> amplitudes;

  static Statevector zero(int n_qubits);
  static Statevector from_amplitudes(int n_qubits, std::vector<cplx> amps);

  std::size_t dim() const { return amplitudes.size(); }
  double norm_sq() const;
  void normalize();
};

// Applies one gate in place. angle is ignored for H/X/CNOT/CZ.
void apply_gate(Statevector& state, const GateOp& op, double angle);

// Runs the whole circuit, resolving parameter slots from params.
Statevector apply_circuit(const Circuit& circuit,
                          const std::vector<double>& params,
                          const Statevector& state);

// |<a|b>|^2
double fidelity(const Statevector& a, const Statevector& b);

// tr(rho_keep^2) where rho_keep is the partial trace over the complement of
// `keep`. keep must be a nonempty proper subset of the qubits.
double subsystem_purity(const Statevector& state, const std::vector<int>& keep);

// Multinomial measurement counts over the computational basis.
std::vector<std::uint64_t> sample_measurement(const Statevector& state,
                                              std::uint64_t shots,
                                              std::uint64_t seed);

// Simulates the ancilla-controlled swap test on a (2n+1)-qubit register and
// returns R = 1 - 2*M/S where M counts ancilla outcomes |1>. E[R] = fidelity.
double swap_test_estimate(const Statevector& a, const Statevector& b,
                          std::uint64_t shots, std::uint64_t seed);

}  // namespace qent

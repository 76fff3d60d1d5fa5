#include "qent/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qent/rng.hpp"

namespace qent {

namespace {

constexpr cplx kI{0.0, 1.0};

struct Mat2 {
  cplx a, b, c, d;  // [[a, b], [c, d]]
};

Mat2 single_qubit_matrix(GateKind kind, double angle) {
  const double h = 0.5 * angle;
  switch (kind) {
    case GateKind::RX:
    case GateKind::CRX:
      return {std::cos(h), -kI * std::sin(h), -kI * std::sin(h), std::cos(h)};
    case GateKind::RY:
    case GateKind::CRY:
      return {std::cos(h), -std::sin(h), std::sin(h), std::cos(h)};
    case GateKind::RZ:
    case GateKind::CRZ:
      return {std::exp(-kI * h), 0.0, 0.0, std::exp(kI * h)};
    case GateKind::H: {
      const double s = 1.0 / std::sqrt(2.0);
      return {s, s, s, -s};
    }
    case GateKind::X:
    case GateKind::CNOT:
      return {0.0, 1.0, 1.0, 0.0};
    case GateKind::CZ:
      return {1.0, 0.0, 0.0, -1.0};
  }
  throw std::logic_error("unreachable gate kind");
}

// Applies a 2x2 matrix to `target`, restricted to basis states where every
// bit in control_mask is set (mask 0 = unconditional).
void apply_2x2(Statevector& state, const Mat2& m, int target,
               std::size_t control_mask) {
  const std::size_t dim = state.dim();
  const std::size_t bit = std::size_t{1} << target;
  for (std::size_t idx = 0; idx < dim; ++idx) {
    if (idx & bit) continue;
    if ((idx & control_mask) != control_mask) continue;
    const std::size_t j = idx | bit;
    const cplx a0 = state.amplitudes[idx];
    const cplx a1 = state.amplitudes[j];
    state.amplitudes[idx] = m.a * a0 + m.b * a1;
    state.amplitudes[j] = m.c * a0 + m.d * a1;
  }
}

void apply_cswap(Statevector& state, int control, int t1, int t2) {
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t b1 = std::size_t{1} << t1;
  const std::size_t b2 = std::size_t{1} << t2;
  const std::size_t dim = state.dim();
  for (std::size_t idx = 0; idx < dim; ++idx) {
    if (!(idx & cbit)) continue;
    if ((idx & b1) && !(idx & b2)) {
      const std::size_t j = (idx & ~b1) | b2;
      std::swap(state.amplitudes[idx], state.amplitudes[j]);
    }
  }
}

}  // namespace

Statevector Statevector::zero(int n_qubits) {
  if (n_qubits <= 0) throw std::invalid_argument("n_qubits must be positive");
  Statevector s;
  s.n_qubits = n_qubits;
  s.amplitudes.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
  s.amplitudes[0] = 1.0;
  return s;
}

Statevector Statevector::from_amplitudes(int n_qubits, std::vector<cplx> amps) {
  if (amps.size() != (std::size_t{1} << n_qubits))
    throw std::invalid_argument("amplitude count does not match qubit count");
  Statevector s;
  s.n_qubits = n_qubits;
  s.amplitudes = std::move(amps);
  return s;
}

double Statevector::norm_sq() const {
  double acc = 0.0;
  for (const cplx& a : amplitudes) acc += std::norm(a);
  return acc;
}

void Statevector::normalize() {
  const double n = std::sqrt(norm_sq());
  if (n == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
  for (cplx& a : amplitudes) a /= n;
}

void apply_gate(Statevector& state, const GateOp& op, double angle) {
  const Mat2 m = single_qubit_matrix(op.kind, angle);
  if (gate_is_controlled(op.kind)) {
    const std::size_t mask = std::size_t{1} << op.targets[0];
    apply_2x2(state, m, op.targets[1], mask);
  } else {
    apply_2x2(state, m, op.targets[0], 0);
  }
}

Statevector apply_circuit(const Circuit& circuit,
                          const std::vector<double>& params,
                          const Statevector& state) {
  circuit.validate();
  if (static_cast<int>(params.size()) != circuit.n_params)
    throw std::invalid_argument("parameter count does not match circuit");
  if (state.n_qubits != circuit.n_qubits)
    throw std::invalid_argument("state qubit count does not match circuit");
  Statevector out = state;
  for (const auto& op : circuit.ops) {
    const double angle =
        op.param_slot >= 0 ? params[static_cast<std::size_t>(op.param_slot)]
                           : op.fixed_angle;
    apply_gate(out, op, angle);
  }
  return out;
}

double fidelity(const Statevector& a, const Statevector& b) {
  if (a.n_qubits != b.n_qubits)
    throw std::invalid_argument("fidelity requires equal qubit counts");
  cplx inner{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i)
    inner += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  return std::norm(inner);
}

double subsystem_purity(const Statevector& state,
                        const std::vector<int>& keep) {
  const int n = state.n_qubits;
  if (keep.empty() || static_cast<int>(keep.size()) >= n)
    throw std::invalid_argument("keep must be a nonempty proper subset");
  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || sorted[i] >= n)
      throw std::invalid_argument("keep qubit out of range");
    if (i > 0 && sorted[i] == sorted[i - 1])
      throw std::invalid_argument("duplicate qubit in keep");
  }
  std::vector<int> env;
  for (int q = 0; q < n; ++q)
    if (!std::binary_search(sorted.begin(), sorted.end(), q)) env.push_back(q);

  const std::size_t kd = std::size_t{1} << sorted.size();
  const std::size_t ed = std::size_t{1} << env.size();
  auto expand = [](const std::vector<int>& qubits, std::size_t bits) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i)
      if (bits & (std::size_t{1} << i)) idx |= std::size_t{1} << qubits[i];
    return idx;
  };

  // rho[i][j] = sum_e psi(i,e) conj(psi(j,e)); purity = sum |rho_ij|^2
  double purity = 0.0;
  for (std::size_t i = 0; i < kd; ++i) {
    const std::size_t ki = expand(sorted, i);
    for (std::size_t j = 0; j < kd; ++j) {
      const std::size_t kj = expand(sorted, j);
      cplx rho_ij{0.0, 0.0};
      for (std::size_t e = 0; e < ed; ++e) {
        const std::size_t ee = expand(env, e);
        rho_ij += state.amplitudes[ki | ee] * std::conj(state.amplitudes[kj | ee]);
      }
      purity += std::norm(rho_ij);
    }
  }
  return purity;
}

std::vector<std::uint64_t> sample_measurement(const Statevector& state,
                                              std::uint64_t shots,
                                              std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  const std::size_t dim = state.dim();
  std::vector<double> cdf(dim);
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    acc += std::norm(state.amplitudes[i]);
    cdf[i] = acc;
  }
  cdf[dim - 1] = acc;  // guard against u landing past accumulated total

  Rng rng(seed);
  std::vector<std::uint64_t> counts(dim, 0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
    if (idx >= dim) idx = dim - 1;
    ++counts[idx];
  }
  return counts;
}

double swap_test_estimate(const Statevector& a, const Statevector& b,
                          std::uint64_t shots, std::uint64_t seed) {
  if (a.n_qubits != b.n_qubits)
    throw std::invalid_argument("swap test requires equal qubit counts");
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  const int n = a.n_qubits;
  const int anc = 2 * n;

  // |0>_anc (x) |b> (x) |a>, register a on qubits [0,n), b on [n,2n)
  Statevector joint;
  joint.n_qubits = 2 * n + 1;
  joint.amplitudes.assign(std::size_t{1} << joint.n_qubits, cplx{0.0, 0.0});
  const std::size_t da = a.dim();
  for (std::size_t ib = 0; ib < da; ++ib)
    for (std::size_t ia = 0; ia < da; ++ia)
      joint.amplitudes[(ib << n) | ia] = b.amplitudes[ib] * a.amplitudes[ia];

  apply_gate(joint, GateOp::fixed(GateKind::H, anc), 0.0);
  for (int q = 0; q < n; ++q) apply_cswap(joint, anc, q, q + n);
  apply_gate(joint, GateOp::fixed(GateKind::H, anc), 0.0);

  const std::size_t anc_bit = std::size_t{1} << anc;
  double p1 = 0.0;
  for (std::size_t idx = anc_bit; idx < joint.dim(); ++idx)
    p1 += std::norm(joint.amplitudes[idx]);

  Rng rng(seed);
  std::uint64_t ones = 0;
  for (std::uint64_t s = 0; s < shots; ++s)
    if (rng.uniform() < p1) ++ones;
  return 1.0 - 2.0 * static_cast<double>(ones) / static_cast<double>(shots);
}

}  // namespace qent

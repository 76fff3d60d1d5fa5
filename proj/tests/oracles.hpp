// Test-only oracles. These deliberately avoid the library's own code paths:
// concurrence goes through a dense eigendecomposition, purity through an
// explicit density matrix, and the loss through a literal double loop.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "qent/rng.hpp"
#include "qent/statevector.hpp"

namespace oracle {

using Mat = Eigen::MatrixXcd;

inline Mat density_of(const qent::Statevector& s) {
  const Eigen::Index d = static_cast<Eigen::Index>(s.dim());
  Mat rho(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c)
      rho(r, c) = s.amplitudes[static_cast<std::size_t>(r)] *
                  std::conj(s.amplitudes[static_cast<std::size_t>(c)]);
  return rho;
}

// Wootters concurrence of a two-qubit pure state via the eigenvalues of
// rho (sy x sy) rho* (sy x sy).
inline double wootters_concurrence(const qent::Statevector& s) {
  const Mat rho = density_of(s);
  Mat syy = Mat::Zero(4, 4);
  // (sigma_y x sigma_y)_{ij}: antidiagonal with signs -,+,+,-
  syy(0, 3) = -1.0;
  syy(1, 2) = 1.0;
  syy(2, 1) = 1.0;
  syy(3, 0) = -1.0;
  const Mat r = rho * syy * rho.conjugate() * syy;
  Eigen::ComplexEigenSolver<Mat> solver(r, false);
  std::vector<double> roots;
  // pure-state spectrum is {c^2, 0, 0, 0}; floor solver noise on the zero
  // eigenvalues before sqrt amplifies it to ~1e-8
  for (Eigen::Index i = 0; i < 4; ++i) {
    double ev = solver.eigenvalues()(i).real();
    if (ev < 1e-12) ev = 0.0;
    roots.push_back(std::sqrt(ev));
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

// tr(rho_keep^2) by building the full density matrix and tracing out the
// complement index by index.
inline double purity_via_density(const qent::Statevector& s,
                                 const std::vector<int>& keep) {
  std::vector<int> env;
  for (int q = 0; q < s.n_qubits; ++q)
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) env.push_back(q);
  const std::size_t kd = std::size_t{1} << keep.size();
  const std::size_t ed = std::size_t{1} << env.size();
  auto expand = [](const std::vector<int>& qubits, std::size_t bits) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i)
      if (bits & (std::size_t{1} << i)) idx |= std::size_t{1} << qubits[i];
    return idx;
  };
  const Mat rho = density_of(s);
  Mat reduced = Mat::Zero(static_cast<Eigen::Index>(kd), static_cast<Eigen::Index>(kd));
  for (std::size_t i = 0; i < kd; ++i)
    for (std::size_t j = 0; j < kd; ++j)
      for (std::size_t e = 0; e < ed; ++e)
        reduced(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
            rho(static_cast<Eigen::Index>(expand(keep, i) | expand(env, e)),
                static_cast<Eigen::Index>(expand(keep, j) | expand(env, e)));
  return (reduced * reduced).trace().real();
}

inline double naive_quantum_loss(const std::vector<double>& mu,
                                 const std::vector<int>& y,
                                 const std::vector<std::vector<double>>& kernel,
                                 double c_reg, double gamma) {
  double loss = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = 0; j < mu.size(); ++j)
      loss += mu[i] * mu[j] * y[i] * y[j] * (kernel[i][j] + 1.0 / gamma);
  for (double m : mu) loss += m * m / c_reg;
  return loss;
}

// Draws a fidelity directly from the Haar distribution for Hilbert-space
// dimension n via the inverse CDF F = 1 - u^{1/(N-1)}.
inline double haar_fidelity_sample(qent::Rng& rng, std::size_t hilbert_dim) {
  const double u = rng.uniform();
  return 1.0 - std::pow(u, 1.0 / (static_cast<double>(hilbert_dim) - 1.0));
}

}  // namespace oracle

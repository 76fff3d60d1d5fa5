#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "qent/rng.hpp"
#include "qent/statevector.hpp"

using namespace qent;

namespace {
constexpr double kPi = 3.14159265358979323846;

Statevector random_state(int n_qubits, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<cplx> amps(std::size_t{1} << n_qubits);
  for (cplx& a : amps) a = cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  Statevector s = Statevector::from_amplitudes(n_qubits, std::move(amps));
  s.normalize();
  return s;
}

Circuit prep_circuit() {
  Circuit c;
  c.n_qubits = 2;
  c.n_params = 2;
  c.ops.push_back(GateOp::rotation(GateKind::RX, 1, 0));
  c.ops.push_back(GateOp::controlled(GateKind::CRY, 1, 0, 1));
  return c;
}

}  // namespace

TEST_CASE("RY(pi) flips |0> to |1>") {
  Circuit c;
  c.n_qubits = 1;
  c.n_params = 1;
  c.ops.push_back(GateOp::rotation(GateKind::RY, 0, 0));
  const Statevector out = apply_circuit(c, {kPi}, Statevector::zero(1));
  CHECK(std::abs(out.amplitudes[0]) < 1e-12);
  CHECK(std::abs(out.amplitudes[1] - cplx{1.0, 0.0}) < 1e-12);
}

TEST_CASE("empty circuit is the identity") {
  Circuit c;
  c.n_qubits = 2;
  const Statevector in = random_state(2, 7);
  const Statevector out = apply_circuit(c, {}, in);
  for (std::size_t i = 0; i < in.dim(); ++i)
    CHECK(out.amplitudes[i] == in.amplitudes[i]);
}

TEST_CASE("two-qubit preparation at (pi/2, pi) is maximally entangled") {
  const Statevector out =
      apply_circuit(prep_circuit(), {kPi / 2.0, kPi}, Statevector::zero(2));
  const double inv = 1.0 / std::sqrt(2.0);
  const Statevector target = Statevector::from_amplitudes(
      2, {cplx{inv, 0.0}, 0.0, 0.0, cplx{0.0, -inv}});
  CHECK(fidelity(out, target) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("apply_circuit rejects bad inputs") {
  Circuit c = prep_circuit();
  CHECK_THROWS_AS(apply_circuit(c, {0.1}, Statevector::zero(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_circuit(c, {0.1, 0.2}, Statevector::zero(3)),
                  std::invalid_argument);
  c.ops[0].targets[0] = 5;
  CHECK_THROWS_AS(apply_circuit(c, {0.1, 0.2}, Statevector::zero(2)),
                  std::invalid_argument);
}

TEST_CASE("every gate kind is unitary at random angles") {
  Rng rng(99);
  for (GateKind kind : {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::H,
                        GateKind::X, GateKind::CNOT, GateKind::CZ, GateKind::CRX,
                        GateKind::CRY, GateKind::CRZ}) {
    const double angle = rng.uniform(0.0, 2.0 * kPi);
    const bool ctrl = gate_is_controlled(kind);
    // build the induced 4x4 matrix column by column
    oracle::Mat u(4, 4);
    for (int col = 0; col < 4; ++col) {
      Statevector basis = Statevector::zero(2);
      basis.amplitudes[0] = 0.0;
      basis.amplitudes[static_cast<std::size_t>(col)] = 1.0;
      GateOp op = ctrl ? GateOp::controlled(kind, 1, 0) : GateOp::fixed(kind, 0);
      apply_gate(basis, op, angle);
      for (int row = 0; row < 4; ++row)
        u(row, col) = basis.amplitudes[static_cast<std::size_t>(row)];
    }
    const oracle::Mat id = u.adjoint() * u;
    CHECK((id - oracle::Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("norm is preserved across long random circuits") {
  Rng rng(3);
  Circuit c;
  c.n_qubits = 3;
  c.n_params = 0;
  const GateKind rot[] = {GateKind::RX, GateKind::RY, GateKind::RZ};
  for (int i = 0; i < 100; ++i) {
    if (i % 4 == 3) {
      const int a = static_cast<int>(rng.next_u64() % 3);
      const int b = (a + 1 + static_cast<int>(rng.next_u64() % 2)) % 3;
      c.ops.push_back(GateOp::controlled(GateKind::CNOT, a, b));
    } else {
      c.ops.push_back(GateOp::fixed(rot[i % 3], static_cast<int>(rng.next_u64() % 3),
                                    rng.uniform(0.0, 2.0 * kPi)));
    }
  }
  const Statevector out = apply_circuit(c, {}, Statevector::zero(3));
  CHECK(std::abs(out.norm_sq() - 1.0) < 1e-9);
}

TEST_CASE("fidelity basics") {
  const Statevector z2 = Statevector::zero(2);
  CHECK(fidelity(z2, z2) == 1.0);

  const Statevector zero1 = Statevector::zero(1);
  const Statevector one1 = Statevector::from_amplitudes(1, {0.0, 1.0});
  CHECK(fidelity(zero1, one1) == 0.0);

  Statevector rotated = Statevector::zero(1);
  apply_gate(rotated, GateOp::fixed(GateKind::RY, 0), 0.7);
  const double expected = std::cos(0.35) * std::cos(0.35);
  CHECK(fidelity(zero1, rotated) == doctest::Approx(expected).epsilon(1e-12));

  CHECK_THROWS_AS(fidelity(zero1, z2), std::invalid_argument);
}

TEST_CASE("fidelity is symmetric and phase invariant") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Statevector a = random_state(2, rng.fork_seed());
    Statevector b = random_state(2, rng.fork_seed());
    const double f = fidelity(a, b);
    CHECK(fidelity(b, a) == doctest::Approx(f).epsilon(1e-12));
    const cplx phase = std::exp(cplx{0.0, rng.uniform(0.0, 2.0 * kPi)});
    for (cplx& amp : b.amplitudes) amp *= phase;
    CHECK(fidelity(a, b) == doctest::Approx(f).epsilon(1e-10));
  }
}

TEST_CASE("subsystem purity") {
  // |01>: qubit 0 in |1>, qubit 1 in |0>
  const Statevector prod = Statevector::from_amplitudes(2, {0.0, 1.0, 0.0, 0.0});
  CHECK(subsystem_purity(prod, {0}) == doctest::Approx(1.0).epsilon(1e-12));

  const double inv = 1.0 / std::sqrt(2.0);
  const Statevector bell =
      Statevector::from_amplitudes(2, {inv, 0.0, 0.0, inv});
  CHECK(subsystem_purity(bell, {0}) == doctest::Approx(0.5).epsilon(1e-12));

  const Statevector s =
      apply_circuit(prep_circuit(), {kPi / 3.0, kPi / 2.0}, Statevector::zero(2));
  CHECK(subsystem_purity(s, {1}) ==
        doctest::Approx(oracle::purity_via_density(s, {1})).epsilon(1e-12));

  CHECK_THROWS_AS(subsystem_purity(bell, {}), std::invalid_argument);
  CHECK_THROWS_AS(subsystem_purity(bell, {0, 1}), std::invalid_argument);
}

TEST_CASE("purity of keep set equals purity of complement") {
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const Statevector s = random_state(3, rng.fork_seed());
    CHECK(subsystem_purity(s, {0}) ==
          doctest::Approx(subsystem_purity(s, {1, 2})).epsilon(1e-10));
    CHECK(subsystem_purity(s, {0, 2}) ==
          doctest::Approx(subsystem_purity(s, {1})).epsilon(1e-10));
  }
}

TEST_CASE("measurement sampling") {
  const Statevector zero = Statevector::zero(1);
  auto counts = sample_measurement(zero, 100, 1);
  CHECK(counts[0] == 100);
  CHECK(counts[1] == 0);

  Statevector plus = Statevector::zero(1);
  apply_gate(plus, GateOp::fixed(GateKind::H, 0), 0.0);
  counts = sample_measurement(plus, 8192, 2);
  const double sigma = std::sqrt(8192.0 * 0.25);
  CHECK(std::abs(static_cast<double>(counts[0]) - 4096.0) < 4.0 * sigma);
  CHECK(counts[0] + counts[1] == 8192);

  const double inv = 1.0 / std::sqrt(2.0);
  const Statevector bell =
      Statevector::from_amplitudes(2, {inv, 0.0, 0.0, inv});
  counts = sample_measurement(bell, 8192, 3);
  CHECK(counts[1] == 0);  // zero-amplitude bases never occur
  CHECK(counts[2] == 0);

  CHECK(sample_measurement(bell, 100, 5) == sample_measurement(bell, 100, 5));
  CHECK_THROWS_AS(sample_measurement(bell, 0, 1), std::invalid_argument);
}

TEST_CASE("swap test on identical states returns exactly 1") {
  const Statevector z = Statevector::zero(2);
  CHECK(swap_test_estimate(z, z, 16, 7) == 1.0);
  const Statevector s = random_state(2, 41);
  CHECK(swap_test_estimate(s, s, 4096, 8) == 1.0);
}

TEST_CASE("swap test converges to zero for orthogonal states") {
  const Statevector zero1 = Statevector::zero(1);
  const Statevector one1 = Statevector::from_amplitudes(1, {0.0, 1.0});
  double mean = 0.0;
  const int reps = 200;
  for (int s = 0; s < reps; ++s)
    mean += swap_test_estimate(zero1, one1, 1024, static_cast<std::uint64_t>(s));
  mean /= reps;
  // Var(R) = (1 - F^2)/S with F = 0
  CHECK(std::abs(mean) < 5.0 * std::sqrt(1.0 / (reps * 1024.0)));
}

TEST_CASE("swap test is an unbiased estimator") {
  const Statevector a = random_state(2, 100);
  const Statevector b = random_state(2, 101);
  const double f = fidelity(a, b);
  const int reps = 200;
  const std::uint64_t shots = 1024;
  double mean = 0.0;
  for (int s = 0; s < reps; ++s)
    mean += swap_test_estimate(a, b, shots, 5000 + static_cast<std::uint64_t>(s));
  mean /= reps;
  const double var = (1.0 - f * f) / 4.0;
  CHECK(std::abs(mean - f) < 5.0 * std::sqrt(var / (reps * shots)));
}

TEST_CASE("swap test variance scales as 1/shots") {
  const Statevector a = random_state(2, 200);
  const Statevector b = random_state(2, 201);
  auto empirical_var = [&](std::uint64_t shots, std::uint64_t seed0) {
    const int reps = 200;
    std::vector<double> rs;
    for (int s = 0; s < reps; ++s)
      rs.push_back(swap_test_estimate(a, b, shots, seed0 + static_cast<std::uint64_t>(s)));
    double m = 0.0;
    for (double r : rs) m += r;
    m /= reps;
    double v = 0.0;
    for (double r : rs) v += (r - m) * (r - m);
    return v / reps;
  };
  const double v512 = empirical_var(512, 1000);
  const double v1024 = empirical_var(1024, 2000);
  const double v2048 = empirical_var(2048, 3000);
  CHECK(v512 / v1024 > 1.0);
  CHECK(v512 / v1024 < 4.0);
  CHECK(v1024 / v2048 > 1.0);
  CHECK(v1024 / v2048 < 4.0);
}

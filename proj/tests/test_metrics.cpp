#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qent/ansatz.hpp"
#include "qent/dataset.hpp"
#include "qent/metrics.hpp"
#include "qent/rng.hpp"

using namespace qent;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("meyer-wallach on known states") {
  CHECK(meyer_wallach_q(Statevector::zero(2)) == doctest::Approx(0.0).epsilon(1e-12));
  const double inv = 1.0 / std::sqrt(2.0);
  const Statevector bell = Statevector::from_amplitudes(2, {inv, 0.0, 0.0, inv});
  CHECK(meyer_wallach_q(bell) == doctest::Approx(1.0).epsilon(1e-12));
  const Statevector ghz = Statevector::from_amplitudes(
      3, {inv, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, inv});
  CHECK(meyer_wallach_q(ghz) == doctest::Approx(1.0).epsilon(1e-12));
  // W state: Q = 2[1 - 5/9] = 8/9
  const double w = 1.0 / std::sqrt(3.0);
  const Statevector wstate = Statevector::from_amplitudes(
      3, {0.0, w, w, 0.0, w, 0.0, 0.0, 0.0});
  CHECK(meyer_wallach_q(wstate) == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("meyer-wallach equals squared concurrence for two-qubit pure states") {
  Rng rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const LabeledState s = gen_two_qubit(rng.uniform(0.0, kPi),
                                         rng.uniform(0.0, 2.0 * kPi));
    const double c = oracle::wootters_concurrence(s.state);
    CHECK(meyer_wallach_q(s.state) == doctest::Approx(c * c).epsilon(1e-7));
  }
}

TEST_CASE("entangling capability bounds and determinism") {
  const AnsatzRegistry& reg = default_registry();
  const Circuit c6 = build(reg.get("C6"));
  const double ec = entangling_capability(c6, 200, 7);
  CHECK(ec > 0.0);
  CHECK(ec <= 1.0);
  CHECK(entangling_capability(c6, 200, 7) == ec);
  CHECK(entangling_capability(c6, 200, 8) != ec);

  CHECK(entangling_capability(build(reg.get("C1")), 200, 7) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(entangling_capability(c6, 50, 7), std::invalid_argument);
}

TEST_CASE("a bell-pair preparation has entangling capability one") {
  // H then CNOT with no parameters always outputs a maximally entangled state
  Circuit c;
  c.n_qubits = 2;
  c.n_params = 1;
  c.ops.push_back(GateOp::fixed(GateKind::H, 0));
  c.ops.push_back(GateOp::controlled(GateKind::CNOT, 0, 1));
  c.ops.push_back(GateOp::rotation(GateKind::RZ, 0, 0));
  CHECK(entangling_capability(c, 100, 3) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("kl of exact haar samples is near zero") {
  Rng rng(55);
  std::vector<double> fids(5000);
  for (double& f : fids) f = oracle::haar_fidelity_sample(rng, 4);
  CHECK(fidelity_kl_vs_haar(fids, 75, 4) < 0.01);
}

TEST_CASE("kl ranks idle below expressive circuits") {
  // an idle circuit always returns |0..0>, so every fidelity is 1
  Circuit idle;
  idle.n_qubits = 2;
  idle.n_params = 1;
  idle.ops.push_back(GateOp::rotation(GateKind::RZ, 0, 0));
  const MetricsReport bad = expressibility(idle, 1000, 75, 5);
  const MetricsReport good =
      expressibility(build(default_registry().get("C6")), 1000, 75, 5);
  CHECK(bad.expressibility_kl > good.expressibility_kl);
  CHECK(good.expressibility_kl > 0.0);
}

TEST_CASE("expressibility report is deterministic and well formed") {
  const Circuit c = build(default_registry().get("C11"));
  const MetricsReport r1 = expressibility(c, 1000, 75, 9);
  const MetricsReport r2 = expressibility(c, 1000, 75, 9);
  CHECK(r1.expressibility_kl == r2.expressibility_kl);
  CHECK(r1.sample_mean == r2.sample_mean);
  CHECK(r1.n_samples == 1000);
  CHECK(r1.n_bins == 75);
  CHECK(r1.sample_mean > 0.0);
  CHECK(r1.sample_mean < 1.0);
  CHECK(r1.sample_variance > 0.0);
  CHECK_THROWS_AS(expressibility(c, 100, 75, 9), std::invalid_argument);
  CHECK_THROWS_AS(expressibility(c, 1000, 5, 9), std::invalid_argument);
}

TEST_CASE("more blocks never hurt expressibility much") {
  // deeper versions of the same template should track Haar at least as well
  const auto& tmpl = default_registry().get("C11");
  const double kl1 = expressibility(build(tmpl, 1), 2000, 75, 21).expressibility_kl;
  const double kl3 = expressibility(build(tmpl, 3), 2000, 75, 21).expressibility_kl;
  CHECK(kl3 < kl1);
}

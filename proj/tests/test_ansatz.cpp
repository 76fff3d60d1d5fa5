#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "qent/ansatz.hpp"
#include "qent/metrics.hpp"
#include "qent/rng.hpp"
#include "qent/statevector.hpp"

using namespace qent;

namespace {
constexpr double kPi = 3.14159265358979323846;

std::vector<double> random_params(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> p(static_cast<std::size_t>(n));
  for (double& x : p) x = rng.uniform(0.0, 2.0 * kPi);
  return p;
}

int count_two_qubit_gates(const Circuit& c) {
  int n = 0;
  for (const auto& op : c.ops)
    if (gate_is_controlled(op.kind)) ++n;
  return n;
}

}  // namespace

TEST_CASE("registry lists the 19 benchmark templates in order") {
  const auto ids = default_registry().benchmark_ids();
  REQUIRE(ids.size() == 19);
  for (int i = 0; i < 19; ++i) CHECK(ids[static_cast<std::size_t>(i)] == "C" + std::to_string(i + 1));
}

TEST_CASE("C1 is entangler-free") {
  const auto& tmpl = default_registry().get("C1");
  CHECK_FALSE(tmpl.has_entangler());
  CHECK(count_two_qubit_gates(build(tmpl)) == 0);
}

TEST_CASE("every registered template builds") {
  for (const auto& tmpl : default_registry().list()) {
    const Circuit c = build(tmpl);
    CHECK(c.n_qubits == tmpl.n_qubits);
    CHECK_NOTHROW(c.validate());
  }
}

TEST_CASE("builds are deterministic") {
  const auto& tmpl = default_registry().get("C11");
  const Circuit a = build(tmpl);
  const Circuit b = build(tmpl);
  const auto params = random_params(a.n_params, 5);
  const Statevector sa = apply_circuit(a, params, Statevector::zero(2));
  const Statevector sb = apply_circuit(b, params, Statevector::zero(2));
  for (std::size_t i = 0; i < sa.dim(); ++i)
    CHECK(sa.amplitudes[i] == sb.amplitudes[i]);
}

TEST_CASE("two blocks double the parameter count") {
  for (const auto& tmpl : default_registry().list()) {
    const Circuit one = build(tmpl, 1);
    const Circuit two = build(tmpl, 2);
    CHECK(two.n_params == 2 * one.n_params);
    CHECK_NOTHROW(two.validate());
  }
  CHECK_THROWS_AS(build(default_registry().get("C1"), 0), std::invalid_argument);
}

TEST_CASE("M2 matches the coefficient-circuit layout") {
  const Circuit c = build(default_registry().get("M2"));
  int rotations = 0, cnots = 0;
  for (const auto& op : c.ops) {
    if (op.kind == GateKind::CNOT) ++cnots;
    else if (gate_has_angle(op.kind)) ++rotations;
  }
  CHECK(rotations == 4);
  CHECK(cnots == 1);
  CHECK(c.n_qubits == 2);
}

TEST_CASE("C1 never entangles") {
  const Circuit c = build(default_registry().get("C1"));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Statevector out =
        apply_circuit(c, random_params(c.n_params, seed), Statevector::zero(2));
    CHECK(meyer_wallach_q(out) < 1e-10);
  }
}

TEST_CASE("entangler-bearing templates reach Q > 0 somewhere") {
  for (const auto& tmpl : default_registry().list()) {
    if (!tmpl.has_entangler()) continue;
    const Circuit c = build(tmpl);
    double best = 0.0;
    for (std::uint64_t seed = 0; seed < 50 && best < 1e-6; ++seed)
      best = std::max(best, meyer_wallach_q(apply_circuit(
                                c, random_params(c.n_params, seed),
                                Statevector::zero(tmpl.n_qubits))));
    CHECK(best > 1e-6);
  }
}

TEST_CASE("unknown ids and malformed registries are rejected") {
  CHECK_THROWS_AS(default_registry().get("C99"), std::invalid_argument);
  CHECK_THROWS(AnsatzRegistry::parse("template X qubits=2\nrx 0 @\n"
                                     "end\ntemplate X qubits=2\nrx 0 @\nend\n"));
  CHECK_THROWS(AnsatzRegistry::parse("rx 0 @\n"));
  CHECK_THROWS(AnsatzRegistry::parse("template X qubits=2\nrx 0\nend\n"));
}

TEST_CASE("registry files load by path") {
  const std::string path = "test_registry_tmp.txt";
  {
    std::ofstream f(path);
    f << "template T qubits=2\nry 0 @\nry 1 @\ncnot 0 1\nend\n";
  }
  const AnsatzRegistry reg = AnsatzRegistry::load_file(path);
  CHECK(reg.contains("T"));
  const Circuit c = build(reg.get("T"));
  CHECK(c.n_params == 2);
  std::remove(path.c_str());
}

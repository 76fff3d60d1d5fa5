#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace qent {

enum class GateKind { RX, RY, RZ, H, X, CNOT, CZ, CRX, CRY, CRZ };

bool gate_is_controlled(GateKind k);
bool gate_has_angle(GateKind k);
std::string gate_name(GateKind k);
GateKind gate_from_name(const std::string& name);

// One gate application. For controlled kinds targets = {control, target}.
// A rotation gate carries either a parameter slot (param_slot >= 0) or a
// fixed angle in radians.
struct GateOp {
  GateKind kind;
  std::vector<int> targets;
  int param_slot = -1;
  double fixed_angle = 0.0;

  static GateOp rotation(GateKind k, int target, int slot) {
    return GateOp{k, {target}, slot, 0.0};
  }
  static GateOp fixed(GateKind k, int target, double angle = 0.0) {
    return GateOp{k, {target}, -1, angle};
  }
  static GateOp controlled(GateKind k, int control, int target, int slot = -1,
                           double angle = 0.0) {
    return GateOp{k, {control, target}, slot, angle};
  }
};

struct Circuit {
  int n_qubits = 0;
  std::vector<GateOp> ops;
  int n_params = 0;

  // Throws std::invalid_argument on out-of-range targets, duplicate targets,
  // wrong arity, or parameter slots that are out of range / unreferenced.
  void validate() const;
};

}  // namespace qent

#include "qent/circuit.hpp"

#include <stdexcept>

namespace qent {

bool gate_is_controlled(GateKind k) {
  switch (k) {
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::CRX:
    case GateKind::CRY:
    case GateKind::CRZ:
      return true;
    default:
      return false;
  }
}

bool gate_has_angle(GateKind k) {
  switch (k) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::CRX:
    case GateKind::CRY:
    case GateKind::CRZ:
      return true;
    default:
      return false;
  }
}

std::string gate_name(GateKind k) {
  switch (k) {
    case GateKind::RX: return "rx";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::CNOT: return "cnot";
    case GateKind::CZ: return "cz";
    case GateKind::CRX: return "crx";
    case GateKind::CRY: return "cry";
    case GateKind::CRZ: return "crz";
  }
  throw std::logic_error("unreachable gate kind");
}

GateKind gate_from_name(const std::string& name) {
  if (name == "rx") return GateKind::RX;
  if (name == "ry") return GateKind::RY;
  if (name == "rz") return GateKind::RZ;
  if (name == "h") return GateKind::H;
  if (name == "x") return GateKind::X;
  if (name == "cnot") return GateKind::CNOT;
  if (name == "cz") return GateKind::CZ;
  if (name == "crx") return GateKind::CRX;
  if (name == "cry") return GateKind::CRY;
  if (name == "crz") return GateKind::CRZ;
  throw std::invalid_argument("unknown gate kind: " + name);
}

void Circuit::validate() const {
  if (n_qubits <= 0) throw std::invalid_argument("circuit needs at least one qubit");
  std::vector<bool> slot_seen(static_cast<std::size_t>(n_params), false);
  for (const auto& op : ops) {
    const std::size_t arity = gate_is_controlled(op.kind) ? 2 : 1;
    if (op.targets.size() != arity)
      throw std::invalid_argument("gate " + gate_name(op.kind) + " has wrong arity");
    for (int t : op.targets)
      if (t < 0 || t >= n_qubits)
        throw std::invalid_argument("gate target out of range");
    if (arity == 2 && op.targets[0] == op.targets[1])
      throw std::invalid_argument("control and target must differ");
    if (op.param_slot >= 0) {
      if (!gate_has_angle(op.kind))
        throw std::invalid_argument("gate " + gate_name(op.kind) + " takes no angle");
      if (op.param_slot >= n_params)
        throw std::invalid_argument("parameter slot out of range");
      slot_seen[static_cast<std::size_t>(op.param_slot)] = true;
    }
  }
  for (int s = 0; s < n_params; ++s)
    if (!slot_seen[static_cast<std::size_t>(s)])
      throw std::invalid_argument("parameter slot " + std::to_string(s) + " never referenced");
}

}  // namespace qent

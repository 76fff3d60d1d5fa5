#include "qent/ansatz.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qent {

extern const char* kBuiltinRegistryText;  // generated from data/ansatz_registry.txt

bool AnsatzTemplate::has_entangler() const {
  for (const auto& op : block.ops)
    if (gate_is_controlled(op.kind)) return true;
  return false;
}

Circuit build(const AnsatzTemplate& tmpl) { return build(tmpl, tmpl.n_blocks); }

Circuit build(const AnsatzTemplate& tmpl, int n_blocks) {
  if (n_blocks < 1) throw std::invalid_argument("n_blocks must be >= 1");
  Circuit out;
  out.n_qubits = tmpl.n_qubits;
  out.n_params = tmpl.block.n_params * n_blocks;
  for (int b = 0; b < n_blocks; ++b) {
    const int offset = b * tmpl.block.n_params;
    for (GateOp op : tmpl.block.ops) {
      if (op.param_slot >= 0) op.param_slot += offset;
      out.ops.push_back(op);
    }
  }
  out.validate();
  return out;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (ss >> tok) tokens.push_back(tok);
  return tokens;
}

}  // namespace

AnsatzRegistry AnsatzRegistry::parse(const std::string& text) {
  AnsatzRegistry reg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool in_template = false;
  AnsatzTemplate current;

  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("registry line " + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;

    if (tokens[0] == "template") {
      if (in_template) fail("nested template");
      if (tokens.size() != 3 || tokens[2].rfind("qubits=", 0) != 0)
        fail("expected: template <id> qubits=<n>");
      current = AnsatzTemplate{};
      current.id = tokens[1];
      current.n_qubits = std::stoi(tokens[2].substr(7));
      current.block.n_qubits = current.n_qubits;
      in_template = true;
      continue;
    }
    if (tokens[0] == "end") {
      if (!in_template) fail("end outside template");
      current.block.validate();
      for (const auto& t : reg.templates_)
        if (t.id == current.id) fail("duplicate template id " + current.id);
      reg.templates_.push_back(current);
      in_template = false;
      continue;
    }
    if (!in_template) fail("gate outside template");

    const GateKind kind = gate_from_name(tokens[0]);
    const std::size_t arity = gate_is_controlled(kind) ? 2 : 1;
    GateOp op;
    op.kind = kind;
    if (tokens.size() < 1 + arity) fail("missing gate targets");
    for (std::size_t i = 0; i < arity; ++i)
      op.targets.push_back(std::stoi(tokens[1 + i]));
    const std::size_t angle_pos = 1 + arity;
    if (gate_has_angle(kind)) {
      if (tokens.size() != angle_pos + 1) fail("rotation gate needs '@' or an angle");
      if (tokens[angle_pos] == "@") {
        op.param_slot = current.block.n_params++;
      } else {
        op.fixed_angle = std::stod(tokens[angle_pos]);
      }
    } else if (tokens.size() != angle_pos) {
      fail("gate " + tokens[0] + " takes no angle");
    }
    current.block.ops.push_back(op);
  }
  if (in_template) throw std::runtime_error("registry ended inside a template");
  return reg;
}

AnsatzRegistry AnsatzRegistry::load_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open registry file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse(buf.str());
}

const AnsatzTemplate& AnsatzRegistry::get(const std::string& id) const {
  for (const auto& t : templates_)
    if (t.id == id) return t;
  throw std::invalid_argument("unknown template id: " + id);
}

bool AnsatzRegistry::contains(const std::string& id) const {
  for (const auto& t : templates_)
    if (t.id == id) return true;
  return false;
}

std::vector<std::string> AnsatzRegistry::benchmark_ids() const {
  std::vector<std::string> ids;
  for (int i = 1; i <= 19; ++i) {
    const std::string id = "C" + std::to_string(i);
    get(id);  // throws if the registry is incomplete
    ids.push_back(id);
  }
  return ids;
}

const AnsatzRegistry& default_registry() {
  static const AnsatzRegistry reg = [] {
    if (const char* path = std::getenv("QENT_REGISTRY"))
      return AnsatzRegistry::load_file(path);
    return AnsatzRegistry::parse(kBuiltinRegistryText);
  }();
  return reg;
}

}  // namespace qent

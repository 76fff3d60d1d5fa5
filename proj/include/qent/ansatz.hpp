#pragma once

#include <string>
#include <vector>

#include "qent/circuit.hpp"

namespace qent {

// One registered circuit family: a block of gates whose parameter slots are
// local to the block. Building with n_blocks repeats the block with fresh
// sequential slots.
struct AnsatzTemplate {
  std::string id;
  int n_qubits = 0;
  Circuit block;
  int n_blocks = 1;

  bool has_entangler() const;
};

Circuit build(const AnsatzTemplate& tmpl);
Circuit build(const AnsatzTemplate& tmpl, int n_blocks);

class AnsatzRegistry {
 public:
  static AnsatzRegistry parse(const std::string& text);
  static AnsatzRegistry load_file(const std::string& path);

  const AnsatzTemplate& get(const std::string& id) const;
  bool contains(const std::string& id) const;
  // Registration order: C1..C19 first, then the auxiliary templates.
  const std::vector<AnsatzTemplate>& list() const { return templates_; }
  std::vector<std::string> benchmark_ids() const;  // exactly C1..C19

 private:
  std::vector<AnsatzTemplate> templates_;
};

// The registry shipped with the build, unless overridden by the
// QENT_REGISTRY environment variable (path to a registry file).
const AnsatzRegistry& default_registry();

}  // namespace qent

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qent/ansatz.hpp"
#include "qent/dataset.hpp"
#include "qent/qsvm.hpp"

namespace qent {

enum class ExperimentKind { Table1, Table2, Table3, LossTrace, ShotScaling };

std::string experiment_name(ExperimentKind k);
ExperimentKind experiment_from_name(const std::string& name);

// Config doubles as the manifest format: plain "key value" text, so any run
// can be regenerated byte-identically from its emitted manifest.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Table1;
  std::vector<std::string> circuit_ids;
  Regime regime = Regime::MixedConcurrence;  // for LossTrace
  int m_test = 20;
  int m_validation = 50;
  int restarts = 20;
  Hyperparams hyper;
  std::vector<std::uint64_t> seeds = {11, 12, 13, 14, 15};
  std::string output_dir;
  int ec_samples = 5000;
  int exp_pairs = 5000;
  int exp_bins = 75;

  void validate(const AnsatzRegistry& registry) const;
};

ExperimentConfig config_from_manifest(const std::string& path);
void write_manifest(const std::string& path, const ExperimentConfig& config);

// Executes the experiment and writes a table file, per-seed records and a
// manifest into config.output_dir. Per-seed failures are recorded and the
// run continues. Returns the number of failed cells.
int run_experiment(const ExperimentConfig& config,
                   const AnsatzRegistry& registry);

// Prints per-experiment summaries from previously emitted artifacts.
void report_directory(const std::string& dir, std::ostream& out);

// Helpers shared with the acceptance suite.
double median(std::vector<double> values);

struct Table3Row {
  Regime regime;
  std::vector<double> template_accuracy;  // exact kernel, per circuit id
  double shot_noise_accuracy = 0.0;       // first template, shots = 8192
};

// Trains and evaluates one (regime, template, seed) cell with exact kernels
// unless shots > 0. Test and validation states come from the regime's own
// family, so accuracy is the detection rate on that regime. Each restart
// resamples a balanced training subset; the restart with the best validation
// accuracy is the one scored on the test set.
double table3_cell(Regime regime, const std::string& circuit_id,
                   const Hyperparams& hyper, int m_test, std::uint64_t seed,
                   int restarts = 20, int m_validation = 50);

}  // namespace qent

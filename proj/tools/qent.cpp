#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qent/experiment.hpp"
#include "qent/metrics.hpp"
#include "qent/qsvm.hpp"
#include "qent/textio.hpp"

namespace {

std::vector<std::uint64_t> parse_seeds(const std::string& csv) {
  std::vector<std::uint64_t> seeds;
  for (const auto& tok : qent::split(csv, ',')) seeds.push_back(std::stoull(tok));
  return seeds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement classification with a variational quantum SVM"};
  app.require_subcommand(1);

  // gen-data
  std::string gd_regime = "mixed-c", gd_out = "dataset.txt";
  int gd_train = 4, gd_test = 20;
  std::uint64_t gd_seed = 11;
  auto* gen = app.add_subcommand("gen-data", "Generate a labeled dataset split");
  gen->add_option("--regime", gd_regime,
                  "mixed-c | max-c | ghz | bipartite-{a-bc,b-ac,c-ab}");
  gen->add_option("--m-train", gd_train, "training set size (even)");
  gen->add_option("--m-test", gd_test, "test set size");
  gen->add_option("--seed", gd_seed, "generation seed");
  gen->add_option("--out", gd_out, "output dataset file");

  // train
  std::string tr_data, tr_template = "M2", tr_model = "model.txt", tr_trace;
  int tr_shots = 0, tr_iters = 200;
  double tr_c = 100.0, tr_gamma = 10.0;
  std::uint64_t tr_seed = 11;
  auto* trn = app.add_subcommand("train", "Train a model on a dataset file");
  trn->add_option("--data", tr_data, "dataset file")->required();
  trn->add_option("--template", tr_template, "coefficient-circuit template id");
  trn->add_option("--shots", tr_shots, "shots per evaluation (0 = exact)");
  trn->add_option("--iterations", tr_iters, "SPSA iterations");
  trn->add_option("-C,--margin", tr_c, "regularization C");
  trn->add_option("--gamma", tr_gamma, "offset scale gamma");
  trn->add_option("--seed", tr_seed, "training seed");
  trn->add_option("--out", tr_model, "model output file");
  trn->add_option("--trace", tr_trace, "optional loss trace CSV");

  // eval
  std::string ev_model, ev_data;
  int ev_shots = 0;
  std::uint64_t ev_seed = 11;
  auto* evl = app.add_subcommand("eval", "Evaluate a model on a dataset's test split");
  evl->add_option("--model", ev_model, "model file")->required();
  evl->add_option("--data", ev_data, "dataset file")->required();
  evl->add_option("--shots", ev_shots, "shots (0 = exact overlaps)");
  evl->add_option("--seed", ev_seed, "evaluation seed");

  // metrics
  std::string mt_circuits, mt_out;
  int mt_samples = 5000, mt_pairs = 5000, mt_bins = 75;
  std::uint64_t mt_seed = 11;
  auto* mtr = app.add_subcommand(
      "metrics", "Entangling capability and expressibility per template");
  mtr->add_option("--circuits", mt_circuits, "comma list (default: C1..C19)");
  mtr->add_option("--samples", mt_samples, "parameter samples for capability");
  mtr->add_option("--pairs", mt_pairs, "fidelity pairs for expressibility");
  mtr->add_option("--bins", mt_bins, "histogram bins");
  mtr->add_option("--seed", mt_seed, "sampling seed");
  mtr->add_option("--out", mt_out, "optional report file (default: stdout)");

  // reproduce
  std::string rp_what, rp_out = "out", rp_config, rp_seeds;
  int rp_shots = -1, rp_restarts = -1, rp_validation = -1;
  auto* rep = app.add_subcommand("reproduce", "Run a full reproduction experiment");
  rep->add_option("what", rp_what, "table1 | table2 | table3 | loss | shot-scaling");
  rep->add_option("--config", rp_config, "config/manifest file (overrides 'what')");
  rep->add_option("--seed", rp_seeds, "comma-separated seed list");
  rep->add_option("--shots", rp_shots, "shots (0 = exact)");
  rep->add_option("--restarts", rp_restarts, "training subsets tried per cell");
  rep->add_option("--validation", rp_validation, "validation states per cell");
  rep->add_option("--out", rp_out, "output directory");

  // report
  std::string rd_dir;
  auto* rpt = app.add_subcommand("report", "Summarize an emitted artifact directory");
  rpt->add_option("dir", rd_dir, "artifact directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const qent::AnsatzRegistry& registry = qent::default_registry();

    if (gen->parsed()) {
      const auto split = qent::make_split(qent::regime_from_name(gd_regime),
                                          gd_train, gd_test, gd_seed);
      qent::save_dataset(gd_out, split);
      std::cout << "wrote " << gd_out << " (" << split.train.size() << " train, "
                << split.test.size() << " test)\n";
      return 0;
    }

    if (trn->parsed()) {
      const auto split = qent::load_dataset(tr_data);
      qent::Hyperparams hyper;
      hyper.C = tr_c;
      hyper.gamma = tr_gamma;
      hyper.shots = tr_shots;
      hyper.spsa_iterations = tr_iters;
      auto result = qent::train(split, tr_template, hyper, tr_seed);
      qent::save_model(tr_model, result.model);
      if (!tr_trace.empty()) {
        std::ofstream f(tr_trace);
        f << "iteration,loss\n";
        for (std::size_t i = 0; i < result.loss_trace.size(); ++i)
          f << i << ',' << qent::fmt_double(result.loss_trace[i]) << '\n';
      }
      std::cout << "initial loss " << qent::fmt_double(result.initial_loss)
                << ", final loss " << qent::fmt_double(result.model.final_loss)
                << ", wrote " << tr_model << '\n';
      return 0;
    }

    if (evl->parsed()) {
      const auto model = qent::load_model(ev_model, registry);
      const auto split = qent::load_dataset(ev_data);
      const double acc =
          qent::evaluate_accuracy(model, split.test, ev_shots, ev_seed);
      std::cout << "accuracy " << qent::fmt_double(100.0 * acc) << "% on "
                << split.test.size() << " test states\n";
      return 0;
    }

    if (mtr->parsed()) {
      std::vector<std::string> ids = mt_circuits.empty()
                                         ? registry.benchmark_ids()
                                         : qent::split(mt_circuits, ',');
      std::ofstream file;
      if (!mt_out.empty()) file.open(mt_out);
      std::ostream& out = mt_out.empty() ? std::cout : file;
      out << "circuit,entangling_capability,expressibility,mean,variance\n";
      for (const auto& id : ids) {
        const qent::Circuit circuit = qent::build(registry.get(id));
        const double ec =
            qent::entangling_capability(circuit, mt_samples, mt_seed);
        const auto rep2 =
            qent::expressibility(circuit, mt_pairs, mt_bins, mt_seed);
        out << id << ',' << qent::fmt_double(ec) << ','
            << qent::fmt_double(rep2.expressibility_kl) << ','
            << qent::fmt_double(rep2.sample_mean) << ','
            << qent::fmt_double(rep2.sample_variance) << '\n';
      }
      return 0;
    }

    if (rep->parsed()) {
      qent::ExperimentConfig cfg;
      if (!rp_config.empty()) {
        cfg = qent::config_from_manifest(rp_config);
      } else if (!rp_what.empty()) {
        cfg.experiment = qent::experiment_from_name(rp_what);
      } else {
        std::cerr << "reproduce needs an experiment name or --config\n";
        return 1;
      }
      if (!rp_seeds.empty()) cfg.seeds = parse_seeds(rp_seeds);
      if (rp_shots >= 0) cfg.hyper.shots = rp_shots;
      if (rp_restarts >= 0) cfg.restarts = rp_restarts;
      if (rp_validation >= 0) cfg.m_validation = rp_validation;
      cfg.output_dir = rp_out;
      const int failures = qent::run_experiment(cfg, registry);
      if (failures > 0)
        std::cerr << failures << " cell(s) failed; see records.csv\n";
      std::cout << "artifacts in " << rp_out << '\n';
      return failures == 0 ? 0 : 2;
    }

    if (rpt->parsed()) {
      qent::report_directory(rd_dir, std::cout);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

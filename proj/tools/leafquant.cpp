// Batch CLI: analyze a region tree of field images, or generate synthetic
// scenes with exact ground truth. Diagnostics go to stderr; machine output
// only to files.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "leafquant/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"leafquant: diseased leaf area quantification for UAV field imagery"};
  app.require_subcommand(1);

  leafquant::AnalyzeOptions opt;
  std::string input_dir, analyze_out, config_path;
  double min_quality = 0.0;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Analyze <input_dir>/<region>/*.png|jpg and write CSV/JSON reports");
  analyze->add_option("input_dir", input_dir, "Directory with one subdirectory per region")
      ->required();
  analyze->add_option("--config", config_path, "JSON run config (thresholds + calibration)");
  analyze->add_option("--out", analyze_out, "Output directory")->required();
  analyze->add_flag("--dump-masks", opt.dump_masks, "Also write green/defect mask PNGs");
  CLI::Option* mq = analyze->add_option("--min-quality", min_quality,
                                        "Override the quality_min screen threshold");

  std::string synth_out;
  int count = 5;
  std::uint32_t seed = 1;
  CLI::App* synth =
      app.add_subcommand("synth", "Generate synthetic scenes plus truth.json ground truth");
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--count", count, "Number of scenes")->check(CLI::NonNegativeNumber);
  synth->add_option("--seed", seed, "Seed of the first scene");

  CLI11_PARSE(app, argc, argv);

  if (analyze->parsed()) {
    opt.input_dir = input_dir;
    opt.out_dir = analyze_out;
    if (!config_path.empty()) opt.config_path = config_path;
    if (mq->count() > 0) opt.min_quality = min_quality;
    return leafquant::run_analyze(opt, std::cerr);
  }
  return leafquant::run_synth(synth_out, count, seed, std::cerr);
}

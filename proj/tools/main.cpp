#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace segopt::cli;
  namespace fs = std::filesystem;

  CLI::App app{"segopt: optimal Accuracy/Dice segmentations of a marginal label map"};
  app.require_subcommand(1);

  GlobalOptions opts;
  std::string out;
  app.add_option("-o,--out", out, "Write the primary output to this file");
  app.add_option("--seed", opts.seed, "Seed for randomized generators");
  app.add_option("--samples", opts.samples, "Uniform volume samples for curve/quantile output")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--tolerance", opts.tolerance, "Level-match tolerance for the Dice threshold")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--lower", opts.lower, "Report ratios from the smallest optimal volume");

  std::string input;
  std::vector<std::string> masks;
  auto* analyze = app.add_subcommand("analyze", "Optimal Accuracy and Dice results as JSON");
  analyze->add_option("input", input, "Marginal, mask or raw sidecar file");
  analyze->add_option("--masks", masks, "Mask files to average into the marginal");

  std::string dir;
  std::string cases_csv;
  auto* report = app.add_subcommand("report", "Volume-ratio statistics over a directory of cases");
  report->add_option("dir", dir, "Directory of case files")->required();
  report->add_option("--cases", cases_csv, "Also write per-case ratios as CSV");

  auto* curves = app.add_subcommand("curves", "CSV of quantile, accuracy, dice and slope-sign curves");
  curves->add_option("input", input)->required();

  bool quantile = false;
  auto* cdf = app.add_subcommand("cdf", "CSV of the value distribution of 1 - m");
  cdf->add_option("input", input)->required();
  cdf->add_flag("--quantile", quantile, "Emit (v, quantile) rows instead of (t, cdf)");

  GenParams gen;
  std::string mask_prefix;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic marginal");
  gen_cmd->add_option("case", gen.kind, "acc-lower | acc-upper | dice-sharp | fig3 | fig4 | ensemble")
      ->required();
  gen_cmd->add_option("--v,--vp", gen.parameter, "Target mass |m|");
  gen_cmd->add_option("--cells", gen.cells, "Cells (per axis for ensembles)");
  gen_cmd->add_flag("--strict", gen.strict, "Fail instead of snapping a misaligned breakpoint");
  gen_cmd->add_option("--axes", gen.axes, "Ensemble dimensionality (1 or 2)");
  gen_cmd->add_option("--annotators", gen.annotators, "Ensemble size");
  gen_cmd->add_option("--jitter", gen.jitter, "Ensemble box jitter as a fraction of the extent");
  gen_cmd->add_option("--group", gen.group, "Group label stored in the output");
  gen_cmd->add_option("--mask-prefix", mask_prefix, "Ensemble: also write each mask to <prefix><k>.smk.json");

  auto* oracle = app.add_subcommand("oracle", "Compare analytic optima with exhaustive search");
  oracle->add_option("input", input)->required();

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }
  if (!out.empty()) opts.out = out;

  CommandResult result;
  try {
    if (analyze->parsed()) {
      std::vector<fs::path> mask_paths(masks.begin(), masks.end());
      std::optional<fs::path> in;
      if (!input.empty()) in = input;
      result = cmd_analyze(in, mask_paths, opts);
    } else if (report->parsed()) {
      std::optional<fs::path> cases;
      if (!cases_csv.empty()) cases = cases_csv;
      result = cmd_report(dir, cases, opts);
    } else if (curves->parsed()) {
      result = cmd_curves(input, opts);
    } else if (cdf->parsed()) {
      result = cmd_cdf(input, quantile, opts);
    } else if (gen_cmd->parsed()) {
      if (!mask_prefix.empty()) gen.mask_prefix = mask_prefix;
      result = cmd_gen(gen, opts);
    } else if (oracle->parsed()) {
      result = cmd_oracle(input, opts);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  std::cout << result.output;
  std::cerr << result.diagnostics;
  return result.exit_code;
}

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "segopt/field.hpp"
#include "segopt/optimize.hpp"

namespace segopt::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kDegenerateInput = 3,
  kOracleMismatch = 4,
};

struct GlobalOptions {
  std::optional<std::filesystem::path> out;
  std::uint64_t seed = 0;
  std::size_t samples = 512;
  double tolerance = kDefaultLevelTolerance;
  // Report ratios from the smallest optimal volume instead of the largest.
  bool lower = false;
};

// Text a command produced and the process exit code it asks for.
struct CommandResult {
  int exit_code = kOk;
  std::string output;
  std::string diagnostics;
};

// Analysis of one marginal, shared by `analyze` and `report`.
struct Analysis {
  MarginalField field;
  OptimalResult accuracy;
  std::optional<OptimalResult> dice;
  std::optional<bool> ordering_holds;
  std::vector<std::string> flags;
};

Analysis analyze_field(MarginalField field, const GlobalOptions& opts);
std::string analysis_json(const Analysis& a);

CommandResult cmd_analyze(const std::optional<std::filesystem::path>& input,
                          const std::vector<std::filesystem::path>& masks, const GlobalOptions& opts);

struct CaseRow {
  std::string file;
  std::string group;
  double l1_mass = 0.0;
  double ratio_accuracy = 0.0;
  double ratio_dice = 0.0;
};

struct GroupRow {
  std::string group;
  std::size_t cases = 0;
  double mean[2] = {0, 0};
  double std[2] = {0, 0};
  double min[2] = {0, 0};
  double max[2] = {0, 0};
};

struct Report {
  std::vector<CaseRow> cases;
  std::vector<GroupRow> groups;
  // One entry per skipped file: "<file>: <reason>".
  std::vector<std::string> warnings;
};

// Volume ratios |s|/|m| for every case file (*.json) in `dir`, grouped by the
// files' "group" label, processed in parallel and merged in file-name order.
Report build_report(const std::filesystem::path& dir, const GlobalOptions& opts);
std::string report_csv(const Report& r);
std::string report_text(const Report& r);
std::string report_cases_csv(const Report& r);

CommandResult cmd_report(const std::filesystem::path& dir, const std::optional<std::filesystem::path>& cases_csv,
                         const GlobalOptions& opts);

CommandResult cmd_curves(const std::filesystem::path& input, const GlobalOptions& opts);
CommandResult cmd_cdf(const std::filesystem::path& input, bool quantile, const GlobalOptions& opts);

struct GenParams {
  std::string kind;  // acc-lower, acc-upper, dice-sharp, fig3, fig4, ensemble
  double parameter = 0.4;
  std::size_t cells = 100;
  bool strict = false;
  std::size_t axes = 2;
  std::size_t annotators = 5;
  double jitter = 0.1;
  std::string group;
  // Ensemble only: also write mask k to <mask_prefix><k>.smk.json.
  std::optional<std::string> mask_prefix;
};

CommandResult cmd_gen(const GenParams& params, const GlobalOptions& opts);
CommandResult cmd_oracle(const std::filesystem::path& input, const GlobalOptions& opts);

}  // namespace segopt::cli

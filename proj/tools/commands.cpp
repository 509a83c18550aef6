#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <thread>
#include <variant>

#include "segopt/distribution.hpp"
#include "segopt/error.hpp"
#include "segopt/generators.hpp"
#include "segopt/io.hpp"
#include "segopt/json_writer.hpp"
#include "segopt/oracle.hpp"
#include "segopt/reduced.hpp"
#include "segopt/summation.hpp"

namespace segopt::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kCheckTolerance = 1e-12;

OptimizeOptions optimize_options(const GlobalOptions& opts) {
  OptimizeOptions o;
  o.level_tolerance = opts.tolerance;
  return o;
}

// Sends text to --out when given, otherwise to stdout.
CommandResult emit(std::string text, const GlobalOptions& opts, int exit_code = kOk) {
  CommandResult r;
  r.exit_code = exit_code;
  if (opts.out) {
    write_text(*opts.out, text);
  } else {
    r.output = std::move(text);
  }
  return r;
}

CommandResult input_error(const std::string& what) {
  CommandResult r;
  r.exit_code = kInputError;
  r.diagnostics = "error: " + what + "\n";
  return r;
}

std::string num(double x) { return format_double(x); }

void write_metric(JsonWriter& w, const OptimalResult& r, double l1_mass) {
  w.begin_object();
  w.key("value").value(r.value);
  w.key("threshold").value(r.threshold);
  w.key("volumes").array({r.volumes.lo, r.volumes.hi});
  w.key("bounds").array({r.bound_lo, r.bound_hi});
  w.key("within_bounds").value(r.within_bounds);
  w.key("volume_ratio_lo").value(r.volumes.lo / l1_mass);
  w.key("volume_ratio_hi").value(r.volumes.hi / l1_mass);
  w.end_object();
}

std::vector<double> sample_grid(std::size_t samples) {
  std::vector<double> vs;
  if (samples == 1) vs.push_back(0.0);
  for (std::size_t i = 0; samples > 1 && i < samples; ++i) {
    vs.push_back(static_cast<double>(i) / static_cast<double>(samples - 1));
  }
  return vs;
}

std::vector<double> merged_volumes(const ValueDistribution& d, std::size_t samples) {
  std::vector<double> vs = breakpoints(d);
  const std::vector<double> extra = sample_grid(samples);
  vs.insert(vs.end(), extra.begin(), extra.end());
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

}  // namespace

Analysis analyze_field(MarginalField field, const GlobalOptions& opts) {
  const ValueDistribution d = build_distribution(field);
  Analysis a{std::move(field), {}, std::nullopt, std::nullopt, {}};
  a.accuracy = maximize_accuracy(d, a.field);
  if (!a.accuracy.within_bounds) a.flags.emplace_back("accuracy_bounds_violated");
  try {
    a.dice = maximize_dice(d, a.field, optimize_options(opts));
    a.ordering_holds = a.accuracy.volumes.hi <= a.dice->volumes.lo + kCheckTolerance;
    if (a.dice->tie_tolerance_used) a.flags.emplace_back("tie_tolerance");
    if (!a.dice->within_bounds) a.flags.emplace_back("dice_bounds_violated");
    if (!*a.ordering_holds) a.flags.emplace_back("ordering_violated");
  } catch (const DegenerateMarginal&) {
    a.flags.emplace_back("degenerate_marginal");
  }
  return a;
}

std::string analysis_json(const Analysis& a) {
  const double l1 = a.field.l1_mass();
  JsonWriter w(2);
  w.begin_object();
  w.key("l1_mass").value(l1);
  w.key("cells").value(static_cast<std::int64_t>(a.field.size()));
  w.key("accuracy");
  write_metric(w, a.accuracy, l1);
  w.key("dice");
  if (a.dice) {
    write_metric(w, *a.dice, l1);
  } else {
    w.null();
  }
  w.key("ordering_holds");
  if (a.ordering_holds) {
    w.value(*a.ordering_holds);
  } else {
    w.null();
  }
  w.key("flags").begin_array();
  for (const std::string& f : a.flags) w.value(f);
  w.end_array();
  w.end_object();
  return w.str() + "\n";
}

CommandResult cmd_analyze(const std::optional<fs::path>& input, const std::vector<fs::path>& masks,
                          const GlobalOptions& opts) {
  try {
    std::optional<MarginalField> field;
    if (!masks.empty()) {
      std::vector<Segmentation> loaded;
      if (input) loaded.push_back(read_mask(*input));
      for (const fs::path& p : masks) loaded.push_back(read_mask(p));
      field.emplace(ensemble_marginal(loaded));
    } else if (input) {
      field.emplace(read_field_file(*input).field);
    } else {
      return input_error("analyze needs an input file or --masks");
    }
    const Analysis a = analyze_field(std::move(*field), opts);
    return emit(analysis_json(a), opts, a.dice ? kOk : kDegenerateInput);
  } catch (const Error& e) {
    return input_error(e.what());
  }
}

Report build_report(const fs::path& dir, const GlobalOptions& opts) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  if (ec) throw ParseError("cannot list " + dir.string() + ": " + ec.message());
  std::sort(files.begin(), files.end());

  std::vector<std::variant<CaseRow, std::string>> slots(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      const std::string name = files[i].filename().string();
      try {
        FieldFile f = read_field_file(files[i]);
        const std::string group = f.group.empty() ? "ungrouped" : f.group;
        const Analysis a = analyze_field(std::move(f.field), opts);
        if (!a.dice) {
          slots[i] = name + ": degenerate marginal (zero mass)";
          continue;
        }
        const double l1 = a.field.l1_mass();
        const double va = opts.lower ? a.accuracy.volumes.lo : a.accuracy.volumes.hi;
        const double vd = opts.lower ? a.dice->volumes.lo : a.dice->volumes.hi;
        slots[i] = CaseRow{name, group, l1, va / l1, vd / l1};
      } catch (const Error& e) {
        slots[i] = name + ": " + e.what();
      }
    }
  };
  const std::size_t threads =
      std::max<std::size_t>(1, std::min<std::size_t>(files.size(), std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  Report r;
  std::map<std::string, std::vector<const CaseRow*>> by_group;
  for (const auto& slot : slots) {
    if (const auto* row = std::get_if<CaseRow>(&slot)) {
      r.cases.push_back(*row);
    } else {
      r.warnings.push_back(std::get<std::string>(slot));
    }
  }
  for (const CaseRow& row : r.cases) by_group[row.group].push_back(&row);

  for (const auto& [group, rows] : by_group) {
    GroupRow g;
    g.group = group;
    g.cases = rows.size();
    for (int metric = 0; metric < 2; ++metric) {
      std::vector<double> xs;
      for (const CaseRow* row : rows) xs.push_back(metric == 0 ? row->ratio_accuracy : row->ratio_dice);
      const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
      g.min[metric] = *lo;
      g.max[metric] = *hi;
      if (*lo == *hi) {
        g.mean[metric] = *lo;
        g.std[metric] = 0.0;
        continue;
      }
      g.mean[metric] = compensated_sum(xs) / static_cast<double>(xs.size());
      CompensatedSum sq;
      for (double x : xs) sq.add((x - g.mean[metric]) * (x - g.mean[metric]));
      g.std[metric] = std::sqrt(sq.value() / static_cast<double>(xs.size()));
    }
    r.groups.push_back(g);
  }
  return r;
}

std::string report_csv(const Report& r) {
  std::string out =
      "group,cases,accuracy_mean,accuracy_std,accuracy_min,accuracy_max,"
      "dice_mean,dice_std,dice_min,dice_max\n";
  for (const GroupRow& g : r.groups) {
    out += g.group + "," + std::to_string(g.cases);
    for (int m = 0; m < 2; ++m) {
      out += "," + num(g.mean[m]) + "," + num(g.std[m]) + "," + num(g.min[m]) + "," + num(g.max[m]);
    }
    out += "\n";
  }
  return out;
}

std::string report_cases_csv(const Report& r) {
  std::string out = "file,group,l1_mass,ratio_accuracy,ratio_dice\n";
  for (const CaseRow& c : r.cases) {
    out += c.file + "," + c.group + "," + num(c.l1_mass) + "," + num(c.ratio_accuracy) + "," +
           num(c.ratio_dice) + "\n";
  }
  return out;
}

std::string report_text(const Report& r) {
  std::size_t width = 5;
  for (const GroupRow& g : r.groups) width = std::max(width, g.group.size());
  char buf[512];
  std::string out;
  std::snprintf(buf, sizeof buf, "%-*s %5s  %-31s  %-31s\n", static_cast<int>(width), "", "",
                "|s_A|/|m|", "|s_D|/|m|");
  out += buf;
  std::snprintf(buf, sizeof buf, "%-*s %5s  %7s %7s %7s %7s  %7s %7s %7s %7s\n", static_cast<int>(width),
                "group", "n", "Mean", "Std", "Min", "Max", "Mean", "Std", "Min", "Max");
  out += buf;
  for (const GroupRow& g : r.groups) {
    std::snprintf(buf, sizeof buf, "%-*s %5zu  %7.3f %7.3f %7.3f %7.3f  %7.3f %7.3f %7.3f %7.3f\n",
                  static_cast<int>(width), g.group.c_str(), g.cases, g.mean[0], g.std[0], g.min[0], g.max[0],
                  g.mean[1], g.std[1], g.min[1], g.max[1]);
    out += buf;
  }
  for (const std::string& w : r.warnings) out += "! skipped " + w + "\n";
  return out;
}

CommandResult cmd_report(const fs::path& dir, const std::optional<fs::path>& cases_csv,
                         const GlobalOptions& opts) {
  try {
    const Report r = build_report(dir, opts);
    CommandResult res;
    res.output = report_text(r);
    if (opts.out) write_text(*opts.out, report_csv(r));
    if (cases_csv) write_text(*cases_csv, report_cases_csv(r));
    if (r.cases.empty()) {
      res.exit_code = kInputError;
      res.diagnostics = "error: no readable case files in " + dir.string() + "\n";
    }
    return res;
  } catch (const Error& e) {
    return input_error(e.what());
  }
}

CommandResult cmd_curves(const fs::path& input, const GlobalOptions& opts) {
  try {
    const MarginalField field = read_field_file(input).field;
    const ValueDistribution d = build_distribution(field);
    std::string out = "v,quantile,accuracy,dice,delta\n";
    for (double v : merged_volumes(d, opts.samples)) {
      std::string dice_cell;
      if (d.l1_mass() + v > 0.0) dice_cell = num(dice_curve(d, v));
      const std::string delta_cell = v > 0.0 ? num(dice_slope_sign(d, v)) : "";
      out += num(v) + "," + num(d.quantile(v)) + "," + num(accuracy_curve(d, v)) + "," + dice_cell + "," +
             delta_cell + "\n";
    }
    return emit(std::move(out), opts);
  } catch (const Error& e) {
    return input_error(e.what());
  }
}

CommandResult cmd_cdf(const fs::path& input, bool quantile, const GlobalOptions& opts) {
  try {
    const MarginalField field = read_field_file(input).field;
    const ValueDistribution d = build_distribution(field);
    std::string out;
    if (quantile) {
      out = "v,quantile,integral_quantile\n";
      for (double v : merged_volumes(d, opts.samples)) {
        out += num(v) + "," + num(d.quantile(v)) + "," + num(d.integral_quantile(v)) + "\n";
      }
    } else {
      out = "t,mass,cdf_left,cdf\n";
      for (std::size_t k = 0; k < d.size(); ++k) {
        out += num(d.levels()[k]) + "," + num(d.masses()[k]) + "," + num(d.cumulative_at(k)) + "," +
               num(d.cumulative_at(k + 1)) + "\n";
      }
    }
    return emit(std::move(out), opts);
  } catch (const Error& e) {
    return input_error(e.what());
  }
}

CommandResult cmd_gen(const GenParams& p, const GlobalOptions& opts) {
  try {
    const Alignment align = p.strict ? Alignment::Strict : Alignment::Snap;
    std::optional<GeneratedField> gen;
    if (p.kind == "acc-lower") {
      gen.emplace(gen_acc_lower(p.parameter, p.cells, align));
    } else if (p.kind == "acc-upper") {
      gen.emplace(gen_acc_upper(p.parameter, p.cells, align));
    } else if (p.kind == "dice-sharp") {
      gen.emplace(gen_dice_sharp(p.parameter, p.cells, align));
    } else if (p.kind == "fig3") {
      gen.emplace(gen_fig3());
    } else if (p.kind == "fig4") {
      gen.emplace(gen_fig4());
    } else if (p.kind == "ensemble") {
      EnsembleParams ep;
      ep.seed = opts.seed;
      ep.cells_per_axis = p.cells;
      ep.axes = p.axes;
      ep.annotators = p.annotators;
      ep.jitter = p.jitter;
      const std::vector<Segmentation> masks = gen_ensemble(ep);
      if (p.mask_prefix) {
        for (std::size_t k = 0; k < masks.size(); ++k) {
          write_mask(*p.mask_prefix + std::to_string(k) + ".smk.json", masks[k], p.group);
        }
      }
      return emit(marginal_json(ensemble_marginal(masks), p.group), opts);
    } else {
      return input_error("unknown generator case \"" + p.kind + "\"");
    }
    CommandResult r = emit(marginal_json(gen->field, p.group, gen->parameter), opts);
    if (gen->parameter != p.parameter && p.kind != "fig3" && p.kind != "fig4") {
      r.diagnostics = "note: parameter snapped to " + num(gen->parameter) + "\n";
    }
    return r;
  } catch (const Error& e) {
    return input_error(e.what());
  }
}

CommandResult cmd_oracle(const fs::path& input, const GlobalOptions& opts) {
  try {
    const MarginalField field = read_field_file(input).field;
    if (field.size() > kMaxOracleCells) {
      return input_error("oracle supports at most " + std::to_string(kMaxOracleCells) + " cells");
    }
    const ValueDistribution d = build_distribution(field);
    bool mismatch = false;
    bool degenerate = false;
    char buf[512];
    std::string out;
    std::snprintf(buf, sizeof buf, "%-9s %-20s %-20s %-9s %-24s %-9s %s\n", "metric", "analytic", "brute_force",
                  "abs_diff", "volumes", "members", "oracle_volumes");
    out += buf;

    for (Metric metric : {Metric::Accuracy, Metric::Dice}) {
      std::optional<OptimalResult> analytic;
      std::optional<BruteForceResult> brute;
      try {
        analytic = metric == Metric::Accuracy ? maximize_accuracy(d, field)
                                              : maximize_dice(d, field, optimize_options(opts));
        brute = brute_force(field, metric);
      } catch (const DegenerateMarginal&) {
        degenerate = true;
        out += std::string(metric_name(metric)) + "      degenerate marginal (zero mass)\n";
        continue;
      }
      const double diff = std::fabs(analytic->value - brute->best_value);
      bool members = true;
      for (const Segmentation& s : brute->optimal_masks) members = members && is_optimal_member(s, field, *analytic);
      bool volumes = true;
      std::string vol_list;
      for (double v : brute->optimal_volumes) {
        volumes = volumes && analytic->volumes.contains(v, kCheckTolerance);
        vol_list += (vol_list.empty() ? "" : " ") + num(v);
      }
      const bool brackets = std::find(brute->optimal_masks.begin(), brute->optimal_masks.end(),
                                      *analytic->s_lower) != brute->optimal_masks.end() &&
                            std::find(brute->optimal_masks.begin(), brute->optimal_masks.end(),
                                      *analytic->s_upper) != brute->optimal_masks.end();
      const bool ok = diff <= kCheckTolerance && members && volumes && brackets &&
                      brute->optimal_volumes.front() == analytic->volumes.lo &&
                      brute->optimal_volumes.back() == analytic->volumes.hi;
      mismatch = mismatch || !ok;
      const std::string interval = "[" + num(analytic->volumes.lo).substr(0, 10) + ", " +
                                   num(analytic->volumes.hi).substr(0, 10) + "]";
      std::snprintf(buf, sizeof buf, "%-9s %-20.17g %-20.17g %-9.2e %-24s %-9s %s%s\n",
                    std::string(metric_name(metric)).c_str(), analytic->value, brute->best_value, diff,
                    interval.c_str(), members && brackets ? "ok" : "FAIL", vol_list.c_str(), ok ? "" : "  MISMATCH");
      out += buf;
    }
    const int code = mismatch ? kOracleMismatch : degenerate ? kDegenerateInput : kOk;
    return emit(std::move(out), opts, code);
  } catch (const Error& e) {
    return input_error(e.what());
  }
}

}  // namespace segopt::cli

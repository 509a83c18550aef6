#include "segopt/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "segopt/error.hpp"
#include "segopt/reduced.hpp"

namespace segopt {

namespace {

constexpr double kBoundSlack = 1e-12;

std::optional<double> cut_for(const ValueDistribution& d, std::size_t included_levels) {
  if (included_levels == 0) return std::nullopt;
  return d.levels()[included_levels - 1];
}

void attach_masks(OptimalResult& r, const MarginalField& field) {
  r.s_lower = threshold_mask(field, r.lower_cut);
  r.s_upper = threshold_mask(field, r.upper_cut);
  if (r.s_lower->volume() != r.volumes.lo || r.s_upper->volume() != r.volumes.hi) {
    throw InvalidArgument("field does not generate the given distribution");
  }
}

}  // namespace

std::string_view metric_name(Metric metric) {
  return metric == Metric::Accuracy ? "accuracy" : "dice";
}

OptimalResult maximize_accuracy(const ValueDistribution& d) {
  const std::size_t below = d.levels_below(0.5);
  const std::size_t at_most = d.levels_at_most(0.5);
  const double m = d.l1_mass();

  OptimalResult r;
  r.metric = Metric::Accuracy;
  r.volumes = VolumeInterval(d.cumulative_at(below), d.cumulative_at(at_most));
  r.value = 1.0 - m - r.volumes.lo + 2.0 * d.overlap_at(below);
  r.threshold = 0.5;
  r.lower_cut = cut_for(d, below);
  r.upper_cut = cut_for(d, at_most);
  r.bound_lo = std::max(2.0 * m - 1.0, 0.0);
  r.bound_hi = std::min(2.0 * m, 1.0);
  r.within_bounds = r.bound_lo <= r.volumes.lo + kBoundSlack && r.volumes.hi <= r.bound_hi + kBoundSlack;
  return r;
}

OptimalResult maximize_accuracy(const ValueDistribution& d, const MarginalField& field) {
  OptimalResult r = maximize_accuracy(d);
  attach_masks(r, field);
  return r;
}

OptimalResult maximize_dice(const ValueDistribution& d, const OptimizeOptions& options) {
  const double m = d.l1_mass();
  if (m == 0.0) throw DegenerateMarginal();

  // The slope sign is constant on every quantile segment, so dice is
  // monotone between breakpoints and the maximum sits on one of them.
  double best = 0.0;
  for (std::size_t k = 1; k <= d.size(); ++k) {
    best = std::max(best, 2.0 * d.overlap_at(k) / (m + d.cumulative_at(k)));
  }

  const double level = 1.0 - best / 2.0;
  const double tol = options.level_tolerance;
  const std::size_t below = d.levels_below(level - tol);
  const std::size_t at_most = d.levels_at_most(level + tol);

  OptimalResult r;
  r.metric = Metric::Dice;
  r.value = best;
  r.volumes = VolumeInterval(d.cumulative_at(below), d.cumulative_at(at_most));
  r.threshold = best / 2.0;
  r.lower_cut = cut_for(d, below);
  r.upper_cut = cut_for(d, at_most);
  r.tie_tolerance_used = below != d.levels_below(level) || at_most != d.levels_at_most(level);
  r.bound_lo = m * m;
  r.bound_hi = 1.0;
  r.within_bounds = r.bound_lo <= r.volumes.lo + kBoundSlack && r.volumes.hi <= r.bound_hi + kBoundSlack;
  return r;
}

OptimalResult maximize_dice(const ValueDistribution& d, const MarginalField& field,
                            const OptimizeOptions& options) {
  OptimalResult r = maximize_dice(d, options);
  attach_masks(r, field);
  return r;
}

OrderingCheck check_ordering(const ValueDistribution& d, const OptimizeOptions& options) {
  OrderingCheck c;
  c.sup_accuracy_volume = maximize_accuracy(d).volumes.hi;
  c.inf_dice_volume = maximize_dice(d, options).volumes.lo;
  c.holds = c.sup_accuracy_volume <= c.inf_dice_volume + kBoundSlack;
  return c;
}

ConstrainedOptimum constrained_optimum(const ValueDistribution& d, double v) {
  ConstrainedOptimum c;
  c.overlap = constrained_overlap(d, v);
  c.accuracy = accuracy_curve(d, v);
  c.dice = dice_curve(d, v);
  return c;
}

Segmentation threshold_mask(const MarginalField& field, std::optional<double> cut) {
  std::vector<std::uint8_t> bits(field.size(), 0);
  if (cut) {
    const double c = *cut;
    const auto values = field.values();
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = (1.0 - values[i]) <= c ? 1 : 0;
  }
  return Segmentation(field.shape(), std::move(bits));
}

ThresholdBracket threshold_bracket(const MarginalField& field, double t) {
  if (!(t > 0.0 && t <= 1.0)) {
    throw InvalidArgument("threshold level must lie in (0,1], got " + std::to_string(t));
  }
  std::vector<std::uint8_t> strict(field.size());
  std::vector<std::uint8_t> inclusive(field.size());
  const auto values = field.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double level = 1.0 - values[i];
    strict[i] = level < t ? 1 : 0;
    inclusive[i] = level <= t ? 1 : 0;
  }
  Segmentation s0(field.shape(), std::move(strict));
  Segmentation s1(field.shape(), std::move(inclusive));
  const VolumeInterval volumes(s0.volume(), s1.volume());
  return {std::move(s0), std::move(s1), volumes};
}

bool is_optimal_member(const Segmentation& s, const MarginalField& field, const OptimalResult& result) {
  require_same_shape(s.shape(), field.shape());
  const auto bits = s.bits();
  const auto values = field.values();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const double level = 1.0 - values[i];
    const bool in_lower = result.lower_cut && level <= *result.lower_cut;
    const bool in_upper = result.upper_cut && level <= *result.upper_cut;
    if (in_lower && !bits[i]) return false;
    if (bits[i] && !in_upper) return false;
  }
  return true;
}

}  // namespace segopt

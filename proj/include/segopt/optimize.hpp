#pragma once

#include <optional>
#include <string_view>

#include "segopt/distribution.hpp"
#include "segopt/field.hpp"

namespace segopt {

enum class Metric { Accuracy, Dice };

std::string_view metric_name(Metric metric);

inline constexpr double kDefaultLevelTolerance = 1e-12;

// Maximizer of Accuracy or Dice together with the full interval of optimal
// volumes. Every optimal segmentation is sandwiched between s_lower and
// s_upper.
struct OptimalResult {
  Metric metric = Metric::Accuracy;
  double value = 0.0;
  VolumeInterval volumes;
  // Threshold on m: 1/2 for Accuracy, value/2 for Dice.
  double threshold = 0.0;

  // s_lower / s_upper contain exactly the cells with 1 - m <= cut; an empty
  // cut means the empty mask.
  std::optional<double> lower_cut;
  std::optional<double> upper_cut;
  // Present only when the optimizer was given the generating field.
  std::optional<Segmentation> s_lower;
  std::optional<Segmentation> s_upper;

  // Sharp a-priori bounds on the optimal volumes.
  double bound_lo = 0.0;
  double bound_hi = 1.0;
  bool within_bounds = true;
  // True when the Dice threshold matched a stored level only through the
  // level tolerance, not exactly.
  bool tie_tolerance_used = false;
};

struct OptimizeOptions {
  double level_tolerance = kDefaultLevelTolerance;
};

OptimalResult maximize_accuracy(const ValueDistribution& d);
// The field must be the one that generated d.
OptimalResult maximize_accuracy(const ValueDistribution& d, const MarginalField& field);

// Exact breakpoint scan. Throws DegenerateMarginal when |m| = 0.
OptimalResult maximize_dice(const ValueDistribution& d, const OptimizeOptions& options = {});
OptimalResult maximize_dice(const ValueDistribution& d, const MarginalField& field,
                            const OptimizeOptions& options = {});

struct OrderingCheck {
  double sup_accuracy_volume = 0.0;
  double inf_dice_volume = 0.0;
  bool holds = false;
};

// Largest Accuracy-optimal volume never exceeds the smallest Dice-optimal
// volume; a failed check indicates a bug.
OrderingCheck check_ordering(const ValueDistribution& d, const OptimizeOptions& options = {});

struct ConstrainedOptimum {
  double overlap = 0.0;
  double accuracy = 0.0;
  double dice = 0.0;
};

// Optimal overlap, Accuracy and Dice among masks of volume v. One threshold
// family attains all three. Throws DegenerateDice when |m| + v = 0.
ConstrainedOptimum constrained_optimum(const ValueDistribution& d, double v);

struct ThresholdBracket {
  Segmentation s0;  // 1 - m <  t
  Segmentation s1;  // 1 - m <= t
  VolumeInterval volumes;
};

// Strict and inclusive threshold masks at level t in (0,1] on 1 - m.
ThresholdBracket threshold_bracket(const MarginalField& field, double t);

// Mask of the cells with 1 - m <= cut (empty for no cut).
Segmentation threshold_mask(const MarginalField& field, std::optional<double> cut);

// True iff s_lower <= s <= s_upper cellwise.
bool is_optimal_member(const Segmentation& s, const MarginalField& field, const OptimalResult& result);

}  // namespace segopt

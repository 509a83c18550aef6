#pragma once

#include <vector>

#include "segopt/distribution.hpp"

namespace segopt {

// Best achievable overlap sum(s*m) over masks of volume v: the integral of
// 1 - quantile over [0, v].
double constrained_overlap(const ValueDistribution& d, double v);

// Accuracy of the best volume-v segmentation:
// v + 1 - |m| - 2 * integral_quantile(v).
double accuracy_curve(const ValueDistribution& d, double v);

// Dice of the best volume-v segmentation. Throws DegenerateDice when
// |m| = 0 and v = 0.
double dice_curve(const ValueDistribution& d, double v);

// |m| + integral_quantile(v) - (|m| + v) * quantile(v), for v in (0,1].
// Same sign as the derivative of dice_curve; constant on every quantile
// segment and non-increasing.
double dice_slope_sign(const ValueDistribution& d, double v);

// {0, c_1, ..., c_K}: every volume where the step quantile may jump.
std::vector<double> breakpoints(const ValueDistribution& d);

}  // namespace segopt

#include "segopt/reduced.hpp"

#include <string>

#include "segopt/error.hpp"

namespace segopt {

double constrained_overlap(const ValueDistribution& d, double v) { return d.overlap(v); }

double accuracy_curve(const ValueDistribution& d, double v) {
  return 1.0 - d.l1_mass() - v + 2.0 * d.overlap(v);
}

double dice_curve(const ValueDistribution& d, double v) {
  const double ov = d.overlap(v);
  const double denom = d.l1_mass() + v;
  if (denom == 0.0) throw DegenerateDice();
  return 2.0 * ov / denom;
}

double dice_slope_sign(const ValueDistribution& d, double v) {
  if (!(v > 0.0 && v <= 1.0)) {
    throw InvalidArgument("dice slope volume must lie in (0,1], got " + std::to_string(v));
  }
  const double m = d.l1_mass();
  return m + d.integral_quantile(v) - (m + v) * d.quantile(v);
}

std::vector<double> breakpoints(const ValueDistribution& d) {
  std::vector<double> out;
  out.reserve(d.size() + 1);
  out.push_back(0.0);
  for (double c : d.cumulative()) out.push_back(c);
  return out;
}

}  // namespace segopt

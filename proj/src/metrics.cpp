#include "segopt/metrics.hpp"

#include "segopt/error.hpp"
#include "segopt/summation.hpp"

namespace segopt {

double overlap(const Segmentation& s, const MarginalField& m) {
  require_same_shape(s.shape(), m.shape());
  CompensatedSum acc;
  const auto bits = s.bits();
  const auto values = m.values();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) acc.add(values[i]);
  }
  return acc.value() / static_cast<double>(bits.size());
}

double accuracy(const Segmentation& s, const MarginalField& m) {
  require_same_shape(s.shape(), m.shape());
  CompensatedSum acc;
  const auto bits = s.bits();
  const auto values = m.values();
  for (std::size_t i = 0; i < bits.size(); ++i) acc.add(bits[i] ? values[i] : 1.0 - values[i]);
  return acc.value() / static_cast<double>(bits.size());
}

double dice(const Segmentation& s, const MarginalField& m) {
  const double ov = overlap(s, m);
  const double denom = s.volume() + m.l1_mass();
  if (denom == 0.0) throw DegenerateDice();
  return 2.0 * ov / denom;
}

DiceGap ensemble_dice_gap(std::span<const Segmentation> masks, const Segmentation& s) {
  const MarginalField mean = ensemble_marginal(masks);
  DiceGap gap;
  gap.dice_of_mean = dice(s, mean);
  CompensatedSum acc;
  bool all_equal = true;
  double first = 0.0;
  for (std::size_t k = 0; k < masks.size(); ++k) {
    const double d = dice(s, MarginalField::from_segmentation(masks[k]));
    if (k == 0) first = d;
    all_equal = all_equal && d == first;
    acc.add(d);
  }
  gap.mean_of_dice = all_equal ? first : acc.value() / static_cast<double>(masks.size());
  gap.volume_variance = ensemble_volume_stats(masks).volume_variance;
  return gap;
}

}  // namespace segopt

#include "segopt/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "segopt/error.hpp"
#include "segopt/summation.hpp"

namespace segopt {

namespace {

void require_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidArgument(std::string(what) + " must lie in [0,1], got " + std::to_string(x));
  }
}

}  // namespace

VolumeInterval::VolumeInterval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(lo >= 0.0 && lo <= hi && hi <= 1.0)) {
    throw InvalidArgument("invalid volume interval [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
  }
}

ValueDistribution ValueDistribution::from_field(const MarginalField& field) {
  // fl(1 - m) is non-increasing in m, so sorting m descending sorts the
  // levels ascending.
  std::vector<double> sorted(field.values().begin(), field.values().end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  ValueDistribution d;
  const double n = static_cast<double>(sorted.size());
  std::size_t cum_count = 0;
  CompensatedSum quantile_acc;
  CompensatedSum overlap_acc;
  std::size_t i = 0;
  while (i < sorted.size()) {
    const double level = 1.0 - sorted[i];
    const double prob = sorted[i];
    CompensatedSum group_mass_prob;
    std::size_t j = i;
    while (j < sorted.size() && 1.0 - sorted[j] == level) {
      group_mass_prob.add(sorted[j]);
      ++j;
    }
    const std::size_t count = j - i;
    cum_count += count;
    const double mass = static_cast<double>(count) / n;
    quantile_acc.add(static_cast<double>(count) * level / n);
    overlap_acc.add(group_mass_prob.value() / n);

    d.levels_.push_back(level);
    d.masses_.push_back(mass);
    d.probs_.push_back(prob);
    d.cum_.push_back(static_cast<double>(cum_count) / n);
    d.prefix_quantile_.push_back(quantile_acc.value());
    d.prefix_overlap_.push_back(overlap_acc.value());
    i = j;
  }
  d.finish();
  return d;
}

ValueDistribution ValueDistribution::from_weighted(std::span<const WeightedValue> pairs) {
  if (pairs.empty()) throw InvalidArgument("weighted distribution needs at least one value");
  CompensatedSum total;
  for (const WeightedValue& p : pairs) {
    require_unit(p.value, "value");
    if (!(p.weight > 0.0) || !std::isfinite(p.weight)) {
      throw InvalidArgument("weights must be positive, got " + std::to_string(p.weight));
    }
    total.add(p.weight);
  }
  const double sum = total.value();
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw InvalidArgument("weights must sum to 1, got " + std::to_string(sum));
  }

  struct Item {
    double level;
    double prob;
    double weight;
  };
  std::vector<Item> items;
  items.reserve(pairs.size());
  for (const WeightedValue& p : pairs) items.push_back({1.0 - p.value, p.value, p.weight / sum});
  std::stable_sort(items.begin(), items.end(),
                   [](const Item& a, const Item& b) { return a.level < b.level; });

  ValueDistribution d;
  CompensatedSum cum_acc;
  CompensatedSum quantile_acc;
  CompensatedSum overlap_acc;
  std::size_t i = 0;
  while (i < items.size()) {
    const double level = items[i].level;
    CompensatedSum mass;
    CompensatedSum mass_prob;
    std::size_t j = i;
    for (; j < items.size() && items[j].level == level; ++j) {
      mass.add(items[j].weight);
      mass_prob.add(items[j].weight * items[j].prob);
    }
    cum_acc.add(mass.value());
    quantile_acc.add(mass.value() * level);
    overlap_acc.add(mass_prob.value());

    d.levels_.push_back(level);
    d.masses_.push_back(mass.value());
    d.probs_.push_back(items[i].prob);
    d.cum_.push_back(std::min(cum_acc.value(), 1.0));
    d.prefix_quantile_.push_back(quantile_acc.value());
    d.prefix_overlap_.push_back(overlap_acc.value());
    i = j;
  }
  d.finish();
  return d;
}

void ValueDistribution::finish() {
  cum_.back() = 1.0;
  l1_mass_ = std::clamp(prefix_overlap_.back(), 0.0, 1.0);
}

std::size_t ValueDistribution::levels_at_most(double t) const {
  return static_cast<std::size_t>(std::upper_bound(levels_.begin(), levels_.end(), t) - levels_.begin());
}

std::size_t ValueDistribution::levels_below(double t) const {
  return static_cast<std::size_t>(std::lower_bound(levels_.begin(), levels_.end(), t) - levels_.begin());
}

double ValueDistribution::cdf(double t) const {
  require_unit(t, "cdf argument");
  return cumulative_at(levels_at_most(t));
}

double ValueDistribution::cdf_left(double t) const {
  require_unit(t, "cdf argument");
  return cumulative_at(levels_below(t));
}

std::size_t ValueDistribution::segment_of(double v) const {
  const auto it = std::lower_bound(cum_.begin(), cum_.end(), v);
  return std::min(static_cast<std::size_t>(it - cum_.begin()), cum_.size() - 1);
}

double ValueDistribution::quantile(double v) const {
  require_unit(v, "quantile argument");
  if (v == 0.0) return levels_.front();
  return levels_[segment_of(v)];
}

double ValueDistribution::integral_quantile(double v) const {
  require_unit(v, "volume");
  if (v == 0.0) return 0.0;
  const std::size_t k = segment_of(v);
  if (v == cum_[k]) return prefix_quantile_[k];
  return quantile_integral_at(k) + levels_[k] * (v - cumulative_at(k));
}

double ValueDistribution::overlap(double v) const {
  require_unit(v, "volume");
  if (v == 0.0) return 0.0;
  const std::size_t k = segment_of(v);
  if (v == cum_[k]) return prefix_overlap_[k];
  return overlap_at(k) + probs_[k] * (v - cumulative_at(k));
}

}  // namespace segopt

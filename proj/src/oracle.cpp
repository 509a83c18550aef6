#include "segopt/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "segopt/error.hpp"
#include "segopt/summation.hpp"

namespace segopt {

namespace {

// Per-half sums of s*m and of pointwise agreement, so the value of any mask
// is two table lookups and one addition away from a direct summation.
struct HalfTables {
  std::size_t bits = 0;
  std::vector<double> overlap;
  std::vector<double> agreement;
};

HalfTables make_half(std::span<const double> values) {
  HalfTables t;
  t.bits = values.size();
  const std::size_t patterns = std::size_t{1} << t.bits;
  t.overlap.resize(patterns);
  t.agreement.resize(patterns);
  for (std::size_t p = 0; p < patterns; ++p) {
    CompensatedSum ov;
    CompensatedSum ag;
    for (std::size_t i = 0; i < t.bits; ++i) {
      const bool on = (p >> i) & 1U;
      if (on) ov.add(values[i]);
      ag.add(on ? values[i] : 1.0 - values[i]);
    }
    t.overlap[p] = ov.value();
    t.agreement[p] = ag.value();
  }
  return t;
}

class Enumerator {
 public:
  Enumerator(const MarginalField& field, Metric metric) : field_(field), metric_(metric) {
    n_ = field.size();
    if (n_ > kMaxOracleCells) {
      throw GridTooLarge("brute force supports at most " + std::to_string(kMaxOracleCells) +
                         " cells, field has " + std::to_string(n_));
    }
    const std::size_t low_bits = std::min<std::size_t>(n_, 10);
    low_ = make_half(field.values().subspan(0, low_bits));
    high_ = make_half(field.values().subspan(low_bits));
  }

  std::uint32_t patterns() const { return std::uint32_t{1} << n_; }

  // Metric value of the mask with the given bit pattern.
  double value(std::uint32_t pattern) const {
    const std::uint32_t lo = pattern & ((std::uint32_t{1} << low_.bits) - 1);
    const std::uint32_t hi = pattern >> low_.bits;
    const double n = static_cast<double>(n_);
    if (metric_ == Metric::Accuracy) return (low_.agreement[lo] + high_.agreement[hi]) / n;
    const double ov = (low_.overlap[lo] + high_.overlap[hi]) / n;
    const double denom = volume(pattern) + field_.l1_mass();
    if (denom == 0.0) throw DegenerateDice();
    return 2.0 * ov / denom;
  }

  double volume(std::uint32_t pattern) const {
    return static_cast<double>(std::popcount(pattern)) / static_cast<double>(n_);
  }

  Segmentation mask(std::uint32_t pattern) const {
    std::vector<std::uint8_t> bits(n_);
    for (std::size_t i = 0; i < n_; ++i) bits[i] = (pattern >> i) & 1U;
    return Segmentation(field_.shape(), std::move(bits));
  }

  BruteForceResult search(std::optional<int> ones) const {
    auto eligible = [&](std::uint32_t p) { return !ones || std::popcount(p) == *ones; };
    double best = -1.0;
    for (std::uint32_t p = 0; p < patterns(); ++p) {
      if (eligible(p)) best = std::max(best, value(p));
    }
    BruteForceResult r;
    r.best_value = best;
    for (std::uint32_t p = 0; p < patterns(); ++p) {
      if (!eligible(p) || value(p) < best - kOracleSlack) continue;
      r.optimal_masks.push_back(mask(p));
      r.optimal_volumes.push_back(volume(p));
    }
    std::sort(r.optimal_volumes.begin(), r.optimal_volumes.end());
    r.optimal_volumes.erase(std::unique(r.optimal_volumes.begin(), r.optimal_volumes.end()),
                            r.optimal_volumes.end());
    return r;
  }

 private:
  const MarginalField& field_;
  Metric metric_;
  std::size_t n_ = 0;
  HalfTables low_;
  HalfTables high_;
};

}  // namespace

BruteForceResult brute_force(const MarginalField& field, Metric metric) {
  Enumerator e(field, metric);
  if (metric == Metric::Dice && field.l1_mass() == 0.0) throw DegenerateMarginal();
  return e.search(std::nullopt);
}

BruteForceResult brute_force_constrained(const MarginalField& field, Metric metric, double v) {
  Enumerator e(field, metric);
  const double scaled = v * static_cast<double>(field.size());
  const double count = std::round(scaled);
  if (!(v >= 0.0 && v <= 1.0) || std::fabs(scaled - count) > 1e-9) {
    throw UnachievableVolume("volume " + std::to_string(v) + " is not a multiple of the cell volume");
  }
  return e.search(static_cast<int>(count));
}

}  // namespace segopt

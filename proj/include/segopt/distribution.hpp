#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "segopt/field.hpp"

namespace segopt {

// Closed volume interval [lo, hi] with 0 <= lo <= hi <= 1.
struct VolumeInterval {
  double lo = 0.0;
  double hi = 0.0;

  VolumeInterval() = default;
  VolumeInterval(double lo, double hi);

  bool contains(double v, double slack = 0.0) const { return v >= lo - slack && v <= hi + slack; }
  friend bool operator==(const VolumeInterval&, const VolumeInterval&) = default;
};

// One probability value p (on m) carrying volume weight w.
struct WeightedValue {
  double value = 0.0;
  double weight = 0.0;
};

// Push-forward distribution of the complement map 1 - m under the volume
// measure, stored as a step function over its distinct levels.
//
// Level k (0-based) is t_k with volume w_k. Cumulative volumes c_k, the
// quantile prefix integrals I_k = sum_{j<=k} t_j w_j and the overlap prefix
// integrals J_k = sum_{j<=k} m_j w_j are precomputed, so every query is a
// binary search followed by one linear interpolation.
class ValueDistribution {
 public:
  // Levels are the distinct values of 1 - m(cell), grouped by exact equality.
  static ValueDistribution from_field(const MarginalField& field);
  // Weights must be positive and sum to 1 within 1e-9; they are renormalized.
  static ValueDistribution from_weighted(std::span<const WeightedValue> pairs);

  std::size_t size() const { return levels_.size(); }
  std::span<const double> levels() const { return levels_; }
  std::span<const double> masses() const { return masses_; }
  // c_1..c_K; the last entry is exactly 1.
  std::span<const double> cumulative() const { return cum_; }
  double l1_mass() const { return l1_mass_; }

  // c_k for the first k levels (cumulative_at(0) == 0).
  double cumulative_at(std::size_t k) const { return k == 0 ? 0.0 : cum_[k - 1]; }
  // I_k and J_k for the first k levels.
  double quantile_integral_at(std::size_t k) const { return k == 0 ? 0.0 : prefix_quantile_[k - 1]; }
  double overlap_at(std::size_t k) const { return k == 0 ? 0.0 : prefix_overlap_[k - 1]; }

  // Number of levels <= t, resp. < t.
  std::size_t levels_at_most(double t) const;
  std::size_t levels_below(double t) const;

  // F(t): volume where 1 - m <= t.
  double cdf(double t) const;
  // F(t-): volume where 1 - m < t.
  double cdf_left(double t) const;
  // inf{t : F(t) >= v}; quantile(0) returns the smallest level.
  double quantile(double v) const;
  // Integral of the quantile over [0, v].
  double integral_quantile(double v) const;
  // Integral of 1 - quantile over [0, v]: the best overlap sum(s*m) over
  // masks of volume v.
  double overlap(double v) const;

 private:
  ValueDistribution() = default;
  void finish();
  // Index k of the segment (c_{k-1}, c_k] containing v > 0.
  std::size_t segment_of(double v) const;

  std::vector<double> levels_;
  std::vector<double> masses_;
  std::vector<double> probs_;  // m-value of each level
  std::vector<double> cum_;
  std::vector<double> prefix_quantile_;
  std::vector<double> prefix_overlap_;
  double l1_mass_ = 0.0;
};

inline ValueDistribution build_distribution(const MarginalField& field) {
  return ValueDistribution::from_field(field);
}

inline ValueDistribution build_weighted(std::span<const WeightedValue> pairs) {
  return ValueDistribution::from_weighted(pairs);
}

}  // namespace segopt

#include "segopt/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "segopt/error.hpp"
#include "segopt/summation.hpp"

namespace segopt {

namespace {

std::string shape_string(const Shape& shape) {
  std::string out = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(shape[i]);
  }
  return out + "]";
}

}  // namespace

std::size_t cell_count(const Shape& shape) {
  if (shape.empty()) throw InvalidArgument("shape must have at least one axis");
  std::size_t n = 1;
  for (std::size_t extent : shape) {
    if (extent == 0) throw InvalidArgument("shape extents must be positive: " + shape_string(shape));
    if (n > std::numeric_limits<std::size_t>::max() / extent) {
      throw InvalidArgument("shape too large: " + shape_string(shape));
    }
    n *= extent;
  }
  return n;
}

void require_same_shape(const Shape& a, const Shape& b) {
  if (a != b) throw ShapeMismatch("shape mismatch: " + shape_string(a) + " vs " + shape_string(b));
}

Segmentation::Segmentation(Shape shape, std::vector<std::uint8_t> bits)
    : shape_(std::move(shape)), bits_(std::move(bits)) {
  const std::size_t n = cell_count(shape_);
  if (bits_.size() != n) {
    throw InvalidArgument("mask has " + std::to_string(bits_.size()) + " cells, shape " +
                          shape_string(shape_) + " needs " + std::to_string(n));
  }
  for (std::uint8_t b : bits_) {
    if (b > 1) throw InvalidArgument("mask values must be 0 or 1");
    ones_ += b;
  }
}

Segmentation Segmentation::filled(Shape shape, bool value) {
  const std::size_t n = cell_count(shape);
  return Segmentation(std::move(shape), std::vector<std::uint8_t>(n, value ? 1 : 0));
}

MarginalField::MarginalField(Shape shape, std::vector<double> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
  const std::size_t n = cell_count(shape_);
  if (values_.size() != n) {
    throw InvalidArgument("field has " + std::to_string(values_.size()) + " cells, shape " +
                          shape_string(shape_) + " needs " + std::to_string(n));
  }
  CompensatedSum acc;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = values_[i];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InvalidArgument("probability out of [0,1] at cell " + std::to_string(i));
    }
    acc.add(v);
  }
  l1_mass_ = std::clamp(acc.value() / static_cast<double>(n), 0.0, 1.0);
}

MarginalField MarginalField::from_segmentation(const Segmentation& s) {
  std::vector<double> values(s.bits().begin(), s.bits().end());
  return MarginalField(s.shape(), std::move(values));
}

Segmentation complement(const Segmentation& s) {
  std::vector<std::uint8_t> bits(s.size());
  std::transform(s.bits().begin(), s.bits().end(), bits.begin(),
                 [](std::uint8_t b) { return static_cast<std::uint8_t>(1 - b); });
  return Segmentation(s.shape(), std::move(bits));
}

MarginalField complement(const MarginalField& m) {
  std::vector<double> values(m.size());
  std::transform(m.values().begin(), m.values().end(), values.begin(),
                 [](double v) { return 1.0 - v; });
  return MarginalField(m.shape(), std::move(values));
}

MarginalField ensemble_marginal(std::span<const Segmentation> masks) {
  if (masks.empty()) throw InvalidArgument("ensemble needs at least one mask");
  const Shape& shape = masks.front().shape();
  std::vector<std::uint32_t> counts(masks.front().size(), 0);
  for (const Segmentation& s : masks) {
    require_same_shape(shape, s.shape());
    const auto bits = s.bits();
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += bits[i];
  }
  const double k = static_cast<double>(masks.size());
  std::vector<double> values(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) values[i] = static_cast<double>(counts[i]) / k;
  return MarginalField(shape, std::move(values));
}

VolumeStats ensemble_volume_stats(std::span<const Segmentation> masks) {
  VolumeStats stats;
  stats.mean_volume = ensemble_marginal(masks).l1_mass();
  CompensatedSum sq;
  for (const Segmentation& s : masks) {
    const double d = s.volume() - stats.mean_volume;
    sq.add(d * d);
  }
  stats.volume_variance = sq.value() / static_cast<double>(masks.size());
  return stats;
}

}  // namespace segopt

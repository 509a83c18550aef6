#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace segopt {

// Extents of a row-major grid over the unit cube, one entry per axis.
using Shape = std::vector<std::size_t>;

// Number of cells of a shape; throws InvalidArgument for an empty shape,
// a zero extent, or overflow.
std::size_t cell_count(const Shape& shape);

// Binary mask on a grid. Immutable after construction.
class Segmentation {
 public:
  Segmentation(Shape shape, std::vector<std::uint8_t> bits);

  // All-zero or all-one mask.
  static Segmentation filled(Shape shape, bool value);

  const Shape& shape() const { return shape_; }
  std::size_t size() const { return bits_.size(); }
  std::span<const std::uint8_t> bits() const { return bits_; }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }

  std::size_t ones() const { return ones_; }
  // ones / cells, computed as one division so equal counts give equal volumes.
  double volume() const { return static_cast<double>(ones_) / static_cast<double>(bits_.size()); }

  friend bool operator==(const Segmentation& a, const Segmentation& b) {
    return a.shape_ == b.shape_ && a.bits_ == b.bits_;
  }

 private:
  Shape shape_;
  std::vector<std::uint8_t> bits_;
  std::size_t ones_ = 0;
};

// Per-cell probability that a noisy annotator marks the cell, on a grid with
// uniform cell volume 1/cells. Immutable after construction.
class MarginalField {
 public:
  // Rejects values outside [0,1] (including NaN); never clamps.
  MarginalField(Shape shape, std::vector<double> values);

  static MarginalField from_segmentation(const Segmentation& s);

  const Shape& shape() const { return shape_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  double cell_volume() const { return 1.0 / static_cast<double>(values_.size()); }
  // Compensated row-major sum of the values divided by the cell count.
  double l1_mass() const { return l1_mass_; }

  bool operator==(const MarginalField& o) const { return shape_ == o.shape_ && values_ == o.values_; }

 private:
  Shape shape_;
  std::vector<double> values_;
  double l1_mass_ = 0.0;
};

Segmentation complement(const Segmentation& s);
MarginalField complement(const MarginalField& m);

// Cellwise average of K masks; every value is an exact (count / K).
MarginalField ensemble_marginal(std::span<const Segmentation> masks);

struct VolumeStats {
  double mean_volume = 0.0;
  // Population variance of the mask volumes.
  double volume_variance = 0.0;
};

VolumeStats ensemble_volume_stats(std::span<const Segmentation> masks);

// Throws ShapeMismatch unless the shapes are equal.
void require_same_shape(const Shape& a, const Shape& b);

}  // namespace segopt

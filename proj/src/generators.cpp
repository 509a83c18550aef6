#include "segopt/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "segopt/error.hpp"
#include "segopt/rng.hpp"

namespace segopt {

namespace {

constexpr double kAlignTolerance = 1e-9;

void require_cells(std::size_t cells) {
  if (cells == 0) throw InvalidArgument("cells must be positive");
}

void require_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw InvalidArgument(std::string(name) + " must lie in [0,1], got " + std::to_string(v));
  }
}

struct Aligned {
  std::size_t count;  // cells before the breakpoint
  bool exact;
};

Aligned align_breakpoint(double breakpoint, std::size_t cells, Alignment align) {
  const double scaled = breakpoint * static_cast<double>(cells);
  const double rounded = std::round(scaled);
  const bool exact = std::fabs(scaled - rounded) <= kAlignTolerance;
  if (!exact && align == Alignment::Strict) {
    throw MisalignedBreakpoint("breakpoint " + std::to_string(breakpoint) + " is not a multiple of 1/" +
                               std::to_string(cells));
  }
  return {static_cast<std::size_t>(std::clamp(rounded, 0.0, static_cast<double>(cells))), exact};
}

MarginalField two_level(std::size_t cells, std::size_t head, double head_value, double tail_value) {
  std::vector<double> values(cells, tail_value);
  std::fill_n(values.begin(), head, head_value);
  return MarginalField({cells}, std::move(values));
}

}  // namespace

GeneratedField gen_acc_lower(double v, std::size_t cells, Alignment align) {
  require_unit(v, "volume");
  require_cells(cells);
  if (v < 0.5) return {MarginalField({cells}, std::vector<double>(cells, v)), v};
  const Aligned a = align_breakpoint(2.0 * v - 1.0, cells, align);
  const double realized =
      a.exact ? v : static_cast<double>(a.count + cells) / static_cast<double>(2 * cells);
  return {two_level(cells, a.count, 1.0, 0.5), realized};
}

GeneratedField gen_acc_upper(double v, std::size_t cells, Alignment align) {
  require_unit(v, "volume");
  require_cells(cells);
  if (v >= 0.5) return {MarginalField({cells}, std::vector<double>(cells, v)), v};
  const Aligned a = align_breakpoint(2.0 * v, cells, align);
  const double realized = a.exact ? v : static_cast<double>(a.count) / static_cast<double>(2 * cells);
  return {two_level(cells, a.count, 0.5, 0.0), realized};
}

GeneratedField gen_dice_sharp(double vp, std::size_t cells, Alignment align) {
  if (!(vp > 0.0 && vp <= 1.0)) {
    throw InvalidArgument("dice-sharp parameter must lie in (0,1], got " + std::to_string(vp));
  }
  require_cells(cells);
  const Aligned a = align_breakpoint(vp * vp, cells, align);
  if (a.count == 0) {
    throw InvalidArgument("dice-sharp parameter " + std::to_string(vp) + " snaps to 0 on " +
                          std::to_string(cells) + " cells");
  }
  const double realized =
      a.exact ? vp : std::sqrt(static_cast<double>(a.count) / static_cast<double>(cells));
  return {two_level(cells, a.count, 1.0, realized / (1.0 + realized)), realized};
}

GeneratedField gen_fig3() { return gen_acc_upper(0.4, 5, Alignment::Strict); }

GeneratedField gen_fig4() { return gen_dice_sharp(0.4, 25, Alignment::Strict); }

std::vector<Segmentation> gen_ensemble(const EnsembleParams& p) {
  if (p.axes != 1 && p.axes != 2) throw InvalidArgument("ensemble supports 1 or 2 axes");
  if (p.annotators == 0) throw InvalidArgument("ensemble needs at least one annotator");
  if (p.cells_per_axis == 0) throw InvalidArgument("cells per axis must be positive");
  if (!(p.jitter >= 0.0) || !std::isfinite(p.jitter)) throw InvalidArgument("jitter must be non-negative");

  const auto n = static_cast<std::int64_t>(p.cells_per_axis);
  const std::int64_t base_lo = n / 4;
  const std::int64_t base_hi = n - n / 4;
  const auto reach = static_cast<std::int64_t>(std::floor(p.jitter * static_cast<double>(n)));
  const Shape shape(p.axes, p.cells_per_axis);

  std::vector<Segmentation> masks;
  masks.reserve(p.annotators);
  for (std::size_t k = 0; k < p.annotators; ++k) {
    SplitMix64 rng = SplitMix64::stream(p.seed, k);
    auto shift = [&]() -> std::int64_t {
      if (reach == 0) return 0;
      return static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(2 * reach + 1))) - reach;
    };

    std::int64_t lo[2] = {0, 0};
    std::int64_t hi[2] = {1, 1};
    bool ok = false;
    for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
      ok = true;
      for (std::size_t axis = 0; axis < p.axes; ++axis) {
        lo[axis] = std::clamp<std::int64_t>(base_lo + shift(), 0, n);
        hi[axis] = std::clamp<std::int64_t>(base_hi + shift(), 0, n);
        ok = ok && lo[axis] < hi[axis];
      }
    }
    if (!ok) throw InvalidArgument("ensemble box stayed empty after 100 redraws");

    std::vector<std::uint8_t> bits(cell_count(shape), 0);
    if (p.axes == 1) {
      for (std::int64_t i = lo[0]; i < hi[0]; ++i) bits[static_cast<std::size_t>(i)] = 1;
    } else {
      for (std::int64_t r = lo[0]; r < hi[0]; ++r) {
        for (std::int64_t c = lo[1]; c < hi[1]; ++c) bits[static_cast<std::size_t>(r * n + c)] = 1;
      }
    }
    masks.emplace_back(shape, std::move(bits));
  }
  return masks;
}

}  // namespace segopt

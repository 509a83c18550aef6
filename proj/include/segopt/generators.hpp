#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "segopt/field.hpp"

namespace segopt {

// How a generator treats a parameter whose construction breakpoint does not
// fall on a cell boundary.
enum class Alignment {
  Snap,    // move the parameter to the nearest aligned value
  Strict,  // throw MisalignedBreakpoint
};

struct GeneratedField {
  MarginalField field;
  // Parameter actually realized on the grid (after snapping).
  double parameter = 0.0;
};

// 1-D field with |m| = v whose Accuracy-optimal volumes start at
// max(2v - 1, 0): ones on the first 2v-1 of the axis and 1/2 elsewhere for
// v >= 1/2, the constant v otherwise.
GeneratedField gen_acc_lower(double v, std::size_t cells, Alignment align = Alignment::Snap);

// 1-D field with |m| = v whose Accuracy-optimal volumes end at min(2v, 1):
// 1/2 on the first 2v of the axis and 0 elsewhere for v < 1/2, the constant
// v otherwise.
GeneratedField gen_acc_upper(double v, std::size_t cells, Alignment align = Alignment::Snap);

// 1-D field with |m| = v' whose Dice-optimal volumes are exactly [v'^2, 1]:
// ones on the first v'^2 of the axis and v'/(1+v') elsewhere.
GeneratedField gen_dice_sharp(double vp, std::size_t cells, Alignment align = Alignment::Snap);

// acc-upper at |m| = 0.4 on 5 cells: Accuracy-optimal volumes [0, 0.8].
GeneratedField gen_fig3();
// dice-sharp at |m| = 0.4 on 25 cells: Dice-optimal volumes [0.16, 1].
GeneratedField gen_fig4();

struct EnsembleParams {
  std::uint64_t seed = 0;
  std::size_t cells_per_axis = 32;
  std::size_t axes = 2;        // 1 or 2
  std::size_t annotators = 5;  // K
  double jitter = 0.1;         // max corner shift, as a fraction of the extent
};

// K axis-aligned box masks around a common base box [n/4, n - n/4) per axis,
// each box face shifted independently by up to floor(jitter * n) cells.
// Mask k draws only from SplitMix64::stream(seed, k); a box that comes out
// empty is redrawn up to 100 times.
std::vector<Segmentation> gen_ensemble(const EnsembleParams& params);

}  // namespace segopt

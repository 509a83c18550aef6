#pragma once

#include <span>

#include "segopt/field.hpp"

namespace segopt {

// sum(s * m) * cell_volume.
double overlap(const Segmentation& s, const MarginalField& m);

// Expected pointwise agreement between s and a label drawn from m.
double accuracy(const Segmentation& s, const MarginalField& m);

// 2 <s, m> / (|s| + |m|). Throws DegenerateDice when both volumes are zero.
double dice(const Segmentation& s, const MarginalField& m);

struct DiceGap {
  double dice_of_mean = 0.0;   // dice against the averaged marginal
  double mean_of_dice = 0.0;   // average of dice against each mask
  double volume_variance = 0.0;
};

// Compares dice against the ensemble marginal with the mean per-mask dice.
// The two coincide when every mask has the same volume.
DiceGap ensemble_dice_gap(std::span<const Segmentation> masks, const Segmentation& s);

}  // namespace segopt

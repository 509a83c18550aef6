#pragma once

#include <cstddef>
#include <vector>

#include "segopt/field.hpp"
#include "segopt/optimize.hpp"

namespace segopt {

inline constexpr std::size_t kMaxOracleCells = 20;
// Slack used when collecting argmax masks, so exact ties are never split by
// summation order.
inline constexpr double kOracleSlack = 1e-12;

struct BruteForceResult {
  double best_value = 0.0;
  // All masks within kOracleSlack of the best value, ordered by bit pattern
  // (cell i is bit i).
  std::vector<Segmentation> optimal_masks;
  // Distinct volumes of the optimal masks, ascending.
  std::vector<double> optimal_volumes;
};

// Exhaustive search over all 2^n masks. Throws GridTooLarge above
// kMaxOracleCells and DegenerateMarginal for Dice on a zero-mass field.
BruteForceResult brute_force(const MarginalField& field, Metric metric);

// Exhaustive search over the masks of volume exactly v (a multiple of the
// cell volume). Throws UnachievableVolume otherwise.
BruteForceResult brute_force_constrained(const MarginalField& field, Metric metric, double v);

}  // namespace segopt

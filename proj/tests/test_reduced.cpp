#include <doctest.h>

#include <cmath>

#include "segopt/error.hpp"
#include "segopt/generators.hpp"
#include "segopt/metrics.hpp"
#include "segopt/reduced.hpp"
#include "support/test_support.hpp"

using namespace segopt;
using segopt::testing::field1d;

namespace {

// Mask of the cells whose complement value is among the first k levels.
Segmentation first_levels(const MarginalField& f, const ValueDistribution& d, std::size_t k) {
  std::vector<std::uint8_t> bits(f.size(), 0);
  for (std::size_t i = 0; i < f.size(); ++i) bits[i] = k > 0 && 1.0 - f[i] <= d.levels()[k - 1];
  return Segmentation(f.shape(), bits);
}

}  // namespace

TEST_CASE("constrained overlap") {
  const ValueDistribution d = build_distribution(field1d({0.6, 0.3}));
  // Volume-0.5 masks are [1,0] (overlap 0.6/2) and [0,1] (0.3/2).
  CHECK(constrained_overlap(d, 0.5) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(constrained_overlap(d, 0.0) == 0.0);
  CHECK(constrained_overlap(d, 1.0) == d.l1_mass());
  CHECK_THROWS_AS(constrained_overlap(d, 1.2), InvalidArgument);
}

TEST_CASE("accuracy curve") {
  const ValueDistribution fig3 = build_distribution(gen_fig3().field);
  CHECK(std::fabs(accuracy_curve(fig3, 0.0) - 0.6) <= 1e-12);
  CHECK(std::fabs(accuracy_curve(fig3, 0.8) - 0.6) <= 1e-12);
  CHECK(std::fabs(accuracy_curve(fig3, 1.0) - 0.4) <= 1e-12);

  const ValueDistribution binary = build_distribution(field1d({1, 0, 0, 1, 0, 0, 1, 0, 0, 0}));
  CHECK(accuracy_curve(binary, 0.3) == doctest::Approx(1.0).epsilon(1e-15));

  const ValueDistribution two = build_distribution(field1d({0.6, 0.3}));
  CHECK(accuracy_curve(two, 0.5) == doctest::Approx(0.65).epsilon(1e-15));
}

TEST_CASE("dice curve") {
  const ValueDistribution fig4 = build_distribution(gen_fig4().field);
  for (int i = 0; i <= 84; ++i) {
    const double v = 0.16 + 0.01 * i;
    CHECK(std::fabs(dice_curve(fig4, std::min(v, 1.0)) - 4.0 / 7.0) <= 1e-12);
  }
  CHECK(dice_curve(fig4, 0.08) < 4.0 / 7.0 - 0.01);

  // Brute force over the four masks of the two-cell field: [1,0] -> 12/19,
  // [1,1] -> 2 * 0.45 / 1.45 = 18/29.
  const ValueDistribution two = build_distribution(field1d({0.6, 0.3}));
  CHECK(dice_curve(two, 0.5) == doctest::Approx(12.0 / 19.0).epsilon(1e-15));
  CHECK(dice_curve(two, 1.0) == doctest::Approx(18.0 / 29.0).epsilon(1e-15));
  CHECK(dice_curve(two, 0.0) == 0.0);

  const ValueDistribution zero = build_distribution(field1d({0.0, 0.0}));
  CHECK_THROWS_AS(dice_curve(zero, 0.0), DegenerateDice);
  CHECK(dice_curve(zero, 0.5) == 0.0);
}

TEST_CASE("dice slope sign") {
  const ValueDistribution sharp = build_distribution(gen_dice_sharp(0.4, 25).field);
  for (double v : {0.01, 0.08, 0.16}) CHECK(std::fabs(dice_slope_sign(sharp, v) - 0.4) <= 1e-14);
  for (double v : {0.1600001, 0.5, 1.0}) CHECK(std::fabs(dice_slope_sign(sharp, v)) <= 1e-14);

  const ValueDistribution two = build_distribution(field1d({0.6, 0.3}));
  // 0.45 + 0.2 - 0.95 * 0.4 and 0.45 + 0.55 - 1.45 * 0.7
  CHECK(dice_slope_sign(two, 0.5) == doctest::Approx(0.27).epsilon(1e-14));
  CHECK(dice_slope_sign(two, 1.0) == doctest::Approx(-0.015).epsilon(1e-12));

  const ValueDistribution binary = build_distribution(field1d({1, 1, 1, 0, 0, 0, 0, 0, 0, 0}));
  CHECK(dice_slope_sign(binary, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(dice_slope_sign(binary, 0.31) < 0.0);
  CHECK(dice_slope_sign(binary, 1.0) < 0.0);

  CHECK_THROWS_AS(dice_slope_sign(two, 0.0), InvalidArgument);
  CHECK_THROWS_AS(dice_slope_sign(two, 1.5), InvalidArgument);
}

TEST_CASE("curve properties on random distributions") {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    CAPTURE(seed);
    const bool from_field = seed % 2 == 0;
    const MarginalField f = segopt::testing::random_field(seed, 1 + seed % 19);
    const ValueDistribution d = from_field ? build_distribution(f)
                                           : build_weighted(segopt::testing::random_weighted(seed, 64));
    if (d.l1_mass() == 0.0) continue;
    const std::vector<double> bp = breakpoints(d);

    double prev_delta = INFINITY;
    for (std::size_t k = 1; k < bp.size(); ++k) {
      const double lo = bp[k - 1];
      const double hi = bp[k];
      const double delta = dice_slope_sign(d, hi);
      // Constant on (c_{k-1}, c_k].
      CHECK(std::fabs(dice_slope_sign(d, 0.5 * (lo + hi)) - delta) <= 1e-14);
      CHECK(delta <= prev_delta + 1e-14);
      prev_delta = delta;

      const double step = dice_curve(d, hi) - dice_curve(d, lo);
      if (delta > 1e-12) CHECK(step > 0.0);
      if (delta < -1e-12) CHECK(step < 0.0);
      if (std::fabs(delta) <= 1e-12) CHECK(std::fabs(step) <= 1e-10);

      // Accuracy slope on the segment is 1 - 2 * level, and levels increase,
      // so the curve is concave.
      const double a_step = accuracy_curve(d, hi) - accuracy_curve(d, lo);
      CHECK(std::fabs(a_step - (1.0 - 2.0 * d.levels()[k - 1]) * d.masses()[k - 1]) <= 1e-12);

      CHECK(std::fabs(accuracy_curve(d, hi) - (1.0 - d.l1_mass() - hi + 2.0 * constrained_overlap(d, hi))) <= 1e-12);
    }

    if (from_field) {
      for (std::size_t k = 0; k < bp.size(); ++k) {
        const Segmentation s = first_levels(f, d, k);
        CHECK(s.volume() == bp[k]);
        CHECK(std::fabs(accuracy(s, f) - accuracy_curve(d, bp[k])) <= 1e-12);
        if (bp[k] > 0.0) CHECK(std::fabs(dice(s, f) - dice_curve(d, bp[k])) <= 1e-12);
      }
    }
  }
}

#include <doctest.h>

#include <cmath>

#include "segopt/error.hpp"
#include "segopt/generators.hpp"
#include "segopt/oracle.hpp"
#include "support/test_support.hpp"

using namespace segopt;
using segopt::testing::field1d;
using segopt::testing::pattern_of;
using segopt::testing::reference_optimum;
using segopt::testing::RefMetric;

namespace {

RefMetric ref(Metric m) { return m == Metric::Accuracy ? RefMetric::Accuracy : RefMetric::Dice; }

std::vector<std::uint32_t> patterns(const BruteForceResult& r) {
  std::vector<std::uint32_t> out;
  for (const Segmentation& s : r.optimal_masks) out.push_back(pattern_of(s));
  return out;
}

}  // namespace

TEST_CASE("brute_force on small fixtures") {
  const BruteForceResult a = brute_force(gen_fig3().field, Metric::Accuracy);
  CHECK(std::fabs(a.best_value - 0.6) <= 1e-12);
  CHECK(a.optimal_volumes.size() == 5);
  CHECK(a.optimal_volumes.front() == 0.0);
  CHECK(std::fabs(a.optimal_volumes.back() - 0.8) <= 1e-12);

  const BruteForceResult d = brute_force(gen_fig3().field, Metric::Dice);
  CHECK(std::fabs(d.best_value - 2.0 / 3.0) <= 1e-12);
  REQUIRE(d.optimal_volumes.size() == 1);
  CHECK(std::fabs(d.optimal_volumes[0] - 0.8) <= 1e-12);

  const BruteForceResult two = brute_force(field1d({0.6, 0.3}), Metric::Dice);
  CHECK(two.best_value == doctest::Approx(12.0 / 19.0).epsilon(1e-15));
  CHECK(patterns(two) == std::vector<std::uint32_t>{1});
}

TEST_CASE("constant one half: every mask is Accuracy-optimal") {
  const BruteForceResult r = brute_force(field1d({0.5, 0.5, 0.5}), Metric::Accuracy);
  CHECK(r.best_value == 0.5);
  CHECK(r.optimal_masks.size() == 8);
  REQUIRE(r.optimal_volumes.size() == 4);
  CHECK(r.optimal_volumes[0] == 0.0);
  CHECK(r.optimal_volumes[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(r.optimal_volumes[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(r.optimal_volumes[3] == 1.0);
}

TEST_CASE("brute_force errors") {
  CHECK_THROWS_AS(brute_force(MarginalField({21}, std::vector<double>(21, 0.5)), Metric::Accuracy), GridTooLarge);
  CHECK_NOTHROW(brute_force(MarginalField({4, 5}, std::vector<double>(20, 0.5)), Metric::Accuracy));
  CHECK_THROWS_AS(brute_force(field1d({0, 0}), Metric::Dice), DegenerateMarginal);
  CHECK_THROWS_AS(brute_force_constrained(field1d({0.2, 0.4, 0.6}), Metric::Dice, 0.5), UnachievableVolume);
}

TEST_CASE("constrained extremes are unique masks") {
  const MarginalField f = field1d({0.2, 0.9, 0.4, 0.7});
  const BruteForceResult z = brute_force_constrained(f, Metric::Accuracy, 0.0);
  REQUIRE(z.optimal_masks.size() == 1);
  CHECK(z.optimal_masks[0].ones() == 0);
  const BruteForceResult o = brute_force_constrained(f, Metric::Dice, 1.0);
  REQUIRE(o.optimal_masks.size() == 1);
  CHECK(o.optimal_masks[0].ones() == 4);
  const BruteForceResult h = brute_force_constrained(f, Metric::Accuracy, 0.5);
  CHECK(patterns(h) == std::vector<std::uint32_t>{0b1010});
}

TEST_CASE("brute_force agrees with the reference enumeration") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    CAPTURE(seed);
    const std::size_t cells = 1 + seed % 12;
    const MarginalField f = segopt::testing::random_field(seed, cells);
    for (Metric metric : {Metric::Accuracy, Metric::Dice}) {
      if (metric == Metric::Dice && f.l1_mass() == 0.0) continue;
      const BruteForceResult r = brute_force(f, metric);
      const auto expected = reference_optimum({f.values().begin(), f.values().end()}, ref(metric));
      CHECK(std::fabs(r.best_value - expected.best) <= 1e-12);
      CHECK(patterns(r) == expected.patterns);
    }
    const int ones = static_cast<int>(seed % (cells + 1));
    const double v = static_cast<double>(ones) / static_cast<double>(cells);
    const BruteForceResult c = brute_force_constrained(f, Metric::Accuracy, v);
    const auto expected = reference_optimum({f.values().begin(), f.values().end()}, RefMetric::Accuracy, ones);
    CHECK(std::fabs(c.best_value - expected.best) <= 1e-12);
    CHECK(patterns(c) == expected.patterns);
  }
}

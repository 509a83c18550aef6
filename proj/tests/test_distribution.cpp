#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "segopt/distribution.hpp"
#include "segopt/error.hpp"
#include "segopt/generators.hpp"
#include "support/test_support.hpp"

using namespace segopt;
using segopt::testing::field1d;

namespace {

// Midpoint-rule quadrature of the quantile over [0, v].
double quadrature_of_quantile(const ValueDistribution& d, double v, int steps) {
  double acc = 0.0;
  const double h = v / steps;
  for (int i = 0; i < steps; ++i) acc += d.quantile((i + 0.5) * h);
  return acc * h;
}

std::vector<double> probe_volumes(const ValueDistribution& d) {
  std::vector<double> vs = {0.0, 1.0};
  double prev = 0.0;
  for (double c : d.cumulative()) {
    vs.push_back(c);
    vs.push_back(0.5 * (prev + c));
    prev = c;
  }
  return vs;
}

}  // namespace

TEST_CASE("build from a field groups equal complement values") {
  const ValueDistribution d = build_distribution(field1d({0.6, 0.3}));
  REQUIRE(d.size() == 2);
  CHECK(d.levels()[0] == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(d.levels()[1] == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(d.masses()[0] == 0.5);
  CHECK(d.masses()[1] == 0.5);
  CHECK(d.l1_mass() == doctest::Approx(0.45).epsilon(1e-15));

  const ValueDistribution c = build_distribution(MarginalField({3, 3}, std::vector<double>(9, 0.4)));
  REQUIRE(c.size() == 1);
  CHECK(c.levels()[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(c.masses()[0] == 1.0);

  const ValueDistribution b = build_distribution(field1d({1, 1, 0, 0}));
  REQUIRE(b.size() == 2);
  CHECK(b.levels()[0] == 0.0);
  CHECK(b.levels()[1] == 1.0);
  CHECK(b.masses()[0] == 0.5);
  CHECK(b.cumulative().back() == 1.0);
}

TEST_CASE("weighted construction") {
  const std::vector<WeightedValue> one = {{0.5, 1.0}};
  const ValueDistribution d = build_weighted(one);
  REQUIRE(d.size() == 1);
  CHECK(d.levels()[0] == 0.5);
  CHECK(d.masses()[0] == 1.0);

  const std::vector<WeightedValue> dup = {{0.3, 0.5}, {0.3, 0.5}};
  const ValueDistribution m = build_weighted(dup);
  REQUIRE(m.size() == 1);
  CHECK(m.masses()[0] == 1.0);

  CHECK_THROWS_AS(build_weighted(std::vector<WeightedValue>{{0.3, 0.5}, {0.2, 0.0}}), InvalidArgument);
  CHECK_THROWS_AS(build_weighted(std::vector<WeightedValue>{{0.3, 0.5}, {0.2, -0.5}}), InvalidArgument);
  CHECK_THROWS_AS(build_weighted(std::vector<WeightedValue>{{0.3, 0.5}, {0.2, 0.6}}), InvalidArgument);
  CHECK_THROWS_AS(build_weighted(std::vector<WeightedValue>{{1.3, 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(build_weighted(std::vector<WeightedValue>{}), InvalidArgument);
  // Within 1e-9 of 1 is accepted and renormalized.
  const ValueDistribution r = build_weighted(std::vector<WeightedValue>{{0.1, 0.5}, {0.9, 0.5 + 5e-10}});
  CHECK(r.cumulative().back() == 1.0);
}

TEST_CASE("cdf and left limit") {
  const ValueDistribution d = build_weighted(std::vector<WeightedValue>{{0.6, 0.5}, {0.3, 0.5}});
  const double lo = d.levels()[0];
  const double hi = d.levels()[1];
  CHECK(d.cdf(lo) == 0.5);
  CHECK(d.cdf(0.69) == 0.5);
  CHECK(d.cdf(hi) == 1.0);
  CHECK(d.cdf(1.0) == 1.0);
  CHECK(d.cdf(0.0) == 0.0);
  CHECK(d.cdf_left(hi) == 0.5);
  CHECK(d.cdf_left(0.0) == 0.0);
  CHECK_THROWS_AS(d.cdf(1.5), InvalidArgument);
  CHECK_THROWS_AS(d.cdf_left(-0.1), InvalidArgument);

  const ValueDistribution fig3 = build_distribution(gen_fig3().field);
  CHECK(fig3.cdf(0.5) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(fig3.cdf_left(0.5) == 0.0);
}

TEST_CASE("quantile") {
  const ValueDistribution d = build_weighted(std::vector<WeightedValue>{{0.6, 0.5}, {0.3, 0.5}});
  CHECK(d.quantile(0.5) == d.levels()[0]);
  CHECK(d.quantile(0.500001) == d.levels()[1]);
  CHECK(d.quantile(0.0) == d.levels()[0]);
  CHECK(d.quantile(1.0) == d.levels()[1]);
  CHECK_THROWS_AS(d.quantile(1.0000001), InvalidArgument);

  const ValueDistribution fig4 = build_distribution(gen_fig4().field);
  CHECK(fig4.quantile(0.5) == doctest::Approx(5.0 / 7.0).epsilon(1e-15));
  CHECK(fig4.quantile(0.16) == 0.0);
}

TEST_CASE("integral of the quantile") {
  const ValueDistribution d = build_weighted(std::vector<WeightedValue>{{0.6, 0.5}, {0.3, 0.5}});
  // Hand integration of the step quantile 0.4 on (0,0.5], 0.7 on (0.5,1].
  CHECK(d.integral_quantile(0.5) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(d.integral_quantile(1.0) == doctest::Approx(0.55).epsilon(1e-15));
  CHECK(d.integral_quantile(0.0) == 0.0);

  // (1 - 0.16) * 5/7.
  const ValueDistribution fig4 = build_distribution(gen_fig4().field);
  CHECK(std::fabs(fig4.integral_quantile(1.0) - 0.6) <= 1e-14);
}

TEST_CASE("integral of the quantile matches quadrature") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const ValueDistribution d = build_weighted(segopt::testing::random_weighted(seed, 12));
    for (double v : {0.13, 0.5, 0.77, 1.0}) {
      // Midpoint rule on a step function: error <= jumps * step.
      CHECK(std::fabs(d.integral_quantile(v) - quadrature_of_quantile(d, v, 20000)) <= 12.0 * v / 20000);
    }
  }
}

TEST_CASE("distribution properties on random inputs") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const ValueDistribution d = seed % 3 == 0
                                    ? build_distribution(segopt::testing::random_field(seed, 1 + seed % 57))
                                    : build_weighted(segopt::testing::random_weighted(seed, 64));
    CAPTURE(seed);

    // Strictly increasing levels, positive masses, c_K = 1.
    for (std::size_t k = 0; k < d.size(); ++k) {
      CHECK(d.masses()[k] > 0.0);
      if (k) CHECK(d.levels()[k - 1] < d.levels()[k]);
    }
    CHECK(d.cumulative().back() == 1.0);
    CHECK(std::fabs(d.integral_quantile(1.0) + d.l1_mass() - 1.0) <= 1e-14);

    std::vector<double> ts(d.levels().begin(), d.levels().end());
    ts.push_back(0.0);
    ts.push_back(1.0);
    const std::vector<double> vs = probe_volumes(d);

    double prev_cdf = 0.0;
    std::vector<double> sorted_ts = ts;
    std::sort(sorted_ts.begin(), sorted_ts.end());
    for (double t : sorted_ts) {
      CHECK(d.cdf(t) >= prev_cdf);
      CHECK(d.cdf_left(t) <= d.cdf(t));
      prev_cdf = d.cdf(t);
      // quantile(0) is pinned to the smallest level, so the Galois
      // identities are checked on (0,1] only.
      if (d.cdf(t) > 0.0) CHECK(d.quantile(d.cdf(t)) <= t);
    }
    for (double v : vs) {
      CHECK(d.cdf(d.quantile(v)) >= v);
      if (v > 0.0) {
        for (double t : ts) CHECK((d.quantile(v) <= t) == (d.cdf(t) >= v));
      }
      // Overlap and quantile integral partition the volume.
      CHECK(std::fabs(d.overlap(v) - (v - d.integral_quantile(v))) <= 1e-14);
    }
    std::vector<double> sorted_vs = vs;
    std::sort(sorted_vs.begin(), sorted_vs.end());
    for (std::size_t i = 1; i < sorted_vs.size(); ++i) {
      CHECK(d.quantile(sorted_vs[i - 1]) <= d.quantile(sorted_vs[i]));
    }
  }
}

TEST_CASE("field masses reproduce the field mass") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MarginalField f = segopt::testing::random_field(seed, 1 + 97 * seed);
    const ValueDistribution d = build_distribution(f);
    CHECK(std::fabs(d.l1_mass() - f.l1_mass()) <= 1e-14);
  }
}

TEST_CASE("integral_quantile(1) + mass = 1 on a 10^6-cell field") {
  const MarginalField f = segopt::testing::random_field(7, 1000000);
  const ValueDistribution d = build_distribution(f);
  CHECK(std::fabs(d.integral_quantile(1.0) + d.l1_mass() - 1.0) <= 1e-12);
  CHECK(std::fabs(d.l1_mass() - f.l1_mass()) <= 1e-14);
}

TEST_CASE("volume interval validates its endpoints") {
  CHECK_NOTHROW(VolumeInterval(0.0, 1.0));
  CHECK_NOTHROW(VolumeInterval(0.3, 0.3));
  CHECK_THROWS_AS(VolumeInterval(0.5, 0.4), InvalidArgument);
  CHECK_THROWS_AS(VolumeInterval(-0.1, 0.4), InvalidArgument);
  CHECK_THROWS_AS(VolumeInterval(0.1, 1.1), InvalidArgument);
}

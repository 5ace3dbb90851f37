#include <cmath>
#include <limits>

#include "doctest.h"
#include "fracmorrey/error.hpp"
#include "fracmorrey/weights.hpp"
#include "helpers.hpp"

using namespace fracmorrey;

TEST_CASE("A_p constants") {
  WeightFamily fam;
  auto one = ap_constant(WeightDescriptor::constant(1.0), 2.0, fam);
  CHECK(one.constant == 1.0);
  CHECK_FALSE(one.infinite);
  CHECK(ap_constant(WeightDescriptor::constant(1.0), 3.0, WeightFamily{.dimension = 2}).constant == 1.0);

  auto half = ap_constant(WeightDescriptor::power(0.5), 2.0, fam);
  CHECK_FALSE(half.infinite);
  CHECK(std::isfinite(half.constant));
  CHECK(half.constant >= 1.0);
  for (std::size_t i = 1; i < half.trend.size(); ++i) CHECK(half.trend[i] < 2.0 * half.trend[i - 1]);

  auto sing = ap_constant(WeightDescriptor::power(-2.0), 2.0, fam);
  CHECK(sing.infinite);

  auto scaled = ap_constant(WeightDescriptor::power(0.5, 7.0), 2.0, fam);
  CHECK(scaled.constant == doctest::Approx(half.constant).epsilon(1e-12));

  double prev = std::numeric_limits<double>::infinity();
  for (double p : {2.0, 4.0, 8.0, 16.0}) {
    const double c = ap_constant(WeightDescriptor::power(1.5), p, fam).constant;
    CHECK(c <= prev * (1 + 1e-12));
    CHECK(c >= 1.0);
    prev = c;
  }
  CHECK_THROWS_AS(ap_constant(WeightDescriptor::constant(1.0), 1.0, fam), ValidationError);
}

TEST_CASE("A_1 check") {
  Domain d = fmtest::line(-4, 4, 256);
  auto one = a1_check(WeightDescriptor::constant(1.0), d);
  CHECK(one.constant == 1.0);
  CHECK_FALSE(one.infinite);
  auto sing = a1_check(WeightDescriptor::power(-0.5), d);
  CHECK_FALSE(sing.infinite);
  for (std::size_t i = 1; i < sing.trend.size(); ++i) CHECK(sing.trend[i] < 1.2 * sing.trend[i - 1]);
  auto lin = a1_check(WeightDescriptor::power(1.0), d);
  CHECK(lin.infinite);
}

TEST_CASE("A_infinity sweep") {
  WeightFamily fam;
  auto one = ainf_estimate(WeightDescriptor::constant(1.0), fam);
  REQUIRE(one.witness_p);
  CHECK(*one.witness_p == 2.0);
  CHECK(one.constant == 1.0);
  auto pw = ainf_estimate(WeightDescriptor::power(2.5), fam);
  REQUIRE(pw.witness_p);
  CHECK(*pw.witness_p == 4.0);  // gamma < n(p - 1) first holds at p = 4
  CHECK(pw.sweep[0].second == std::numeric_limits<double>::infinity());
  CHECK(*pw.subset_exponent > 0.0);
  CHECK_THROWS_AS(ainf_estimate(WeightDescriptor::power(-2.0), fam), ValidationError);
}

TEST_CASE("doubling constants") {
  WeightFamily fam;
  CHECK(doubling_constant(WeightDescriptor::constant(1.0), fam).constant == 2.0);
  CHECK(doubling_constant(WeightDescriptor::constant(1.0), WeightFamily{.dimension = 2}).constant == 4.0);
  auto lin = doubling_constant(WeightDescriptor::power(1.0), fam);
  CHECK(lin.constant == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(lin.extremal_center[0] == 0.0);
}

TEST_CASE("reverse doubling constants") {
  WeightFamily fam;
  auto one = rd_constant(WeightDescriptor::constant(1.0), 1.0, fam);
  CHECK(one.constant == 1.0);
  CHECK_FALSE(one.infinite);
  auto lin = rd_constant(WeightDescriptor::power(1.0), 1.0, fam);
  CHECK(std::isfinite(lin.constant));
  CHECK_FALSE(lin.infinite);
  auto steep = rd_constant(WeightDescriptor::constant(1.0), 2.0, fam);
  CHECK(steep.infinite);

  auto pairs = nested_ball_pairs(fam, 3, 0);
  double prev = 0.0;
  for (double beta : {0.25, 0.5, 1.0, 1.5}) {
    const double c = rd_constant(WeightDescriptor::power(0.5), beta, pairs).constant;
    CHECK(c >= prev);
    prev = c;
  }
  std::vector<BallPair> bad{{{0.0}, 1.0, {0.8}, 0.5}};
  CHECK_THROWS_AS(rd_constant(WeightDescriptor::constant(1.0), 1.0, bad), ValidationError);
}

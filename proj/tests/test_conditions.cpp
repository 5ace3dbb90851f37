#include <doctest.h>

#include <cmath>
#include <random>

#include "fracmorrey/conditions.hpp"
#include "fracmorrey/error.hpp"

using namespace fracmorrey;

TEST_CASE("running sup identities") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(0.01, 10.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 40);
    std::vector<double> F(n), G(n);
    for (auto& g : G) g = d(rng);
    for (auto& f : F) f = d(rng);
    std::sort(F.begin(), F.end(), std::greater<>());
    const auto below = running_sup(std::span<const double>(G), SupDirection::FromBelow);
    double lhs = 0, rhs = 0;
    for (int k = 0; k < n; ++k) {
      lhs = std::max(lhs, F[k] * G[k]);
      rhs = std::max(rhs, F[k] * below[k]);
    }
    CHECK(lhs == rhs);
    std::sort(F.begin(), F.end());
    const auto above = running_sup(std::span<const double>(G), SupDirection::FromAbove);
    lhs = rhs = 0;
    for (int k = 0; k < n; ++k) {
      lhs = std::max(lhs, F[k] * G[k]);
      rhs = std::max(rhs, F[k] * above[k]);
    }
    CHECK(lhs == rhs);
  }
}

TEST_CASE("running sup on a three point grid") {
  const std::vector<double> g{3, 1, 2};
  CHECK(running_sup(std::span<const double>(g), SupDirection::FromBelow) == std::vector<double>{3, 3, 3});
  CHECK(running_sup(std::span<const double>(g), SupDirection::FromAbove) == std::vector<double>{3, 2, 2});
}

TEST_CASE("U1 and U2 for powers") {
  const RadialGrid grid(0.25, 64, 2);
  const auto U1 = compute_U1(RadialFunction::power(-1), RadialFunction::power(0.5), grid);
  const auto U2 = compute_U2(RadialFunction::power(0.5), grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(U1.values[k] == doctest::Approx(std::pow(grid[k], -0.5)));
    CHECK(U2.values[k] == doctest::Approx(std::sqrt(grid[k])));
  }
  // numeric path with a non-power factor agrees
  const auto u1 = RadialFunction::power(0.5) * RadialFunction::callable([](double) { return 1.0; }, 0, 0);
  const auto num = compute_U1(RadialFunction::power(-1), u1, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) CHECK(num.values[k] == doctest::Approx(U1.values[k]).epsilon(1e-12));
  CHECK(std::isinf(compute_U2(RadialFunction::power(-0.5), grid).values[0]));
}

TEST_CASE("cor52 closed forms") {
  const double beta = 0.75;
  for (double a : {0.25, 0.5}) {
    const auto rep = cor52_condition(RadialFunction::power(a), beta);
    CHECK_FALSE(rep.infinite);
    CHECK_FALSE(rep.truncated);
    CHECK(rep.value == doctest::Approx(1.0 / a).epsilon(1e-3));
  }
  CHECK(cor52_condition(RadialFunction::power(beta), beta).value == doctest::Approx(1.0 / beta).epsilon(1e-3));
  CHECK(cor52_condition(RadialFunction::constant(1.0), beta).infinite);
  CHECK(cor52_condition(RadialFunction::power(1.0), beta).infinite);
  // scale invariance
  CHECK(cor52_condition(RadialFunction::power(0.5, 7.0), beta).value ==
        doctest::Approx(cor52_condition(RadialFunction::power(0.5), beta).value).epsilon(1e-12));
  // sum of powers stays between the two pure values
  const auto mix = cor52_condition(RadialFunction::power_sum({{1, 0.25}, {1, 0.5}}), beta);
  CHECK(mix.truncated);
  CHECK(mix.value >= 2.0 - 1e-3);
  CHECK(mix.value <= 4.0 + 1e-3);
}

TEST_CASE("gm condition") {
  // n = 1, p = 2, lambda = 1/2, alpha = 1/4
  const auto rep = gm_condition(RadialFunction::power(-0.25), 1, 2.0, 0.25);
  CHECK(rep.condition_id == "gm");
  CHECK(rep.value == doctest::Approx(4.0).epsilon(1e-3));
  // (n - lambda)/p > n - alpha
  CHECK(gm_condition(RadialFunction::power(0.5), 1, 2.0, 0.25).infinite);
  CHECK_THROWS_AS(gm_condition(RadialFunction::constant(0.0), 1, 2.0, 0.25), ValidationError);
  CHECK_THROWS_AS(gm_condition(RadialFunction::power(-0.25), 1, 2.0, 1.5), ValidationError);
}

TEST_CASE("thm64 reduces to cor52") {
  const auto omega = RadialFunction::power(-0.25);
  const auto v = WeightDescriptor::power(0.5);
  const auto rep = thm64_condition(omega, v, 1, 2.0, 0.25);
  const auto ref = cor52_condition(omega * RadialFunction::ball_measure_at_origin(v, 1, 0.5), 0.75);
  CHECK(rep.value == ref.value);
  CHECK(rep.value == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("thm61 at the origin") {
  const auto omega = RadialFunction::power(-0.25);
  const auto v = WeightDescriptor::power(0.5);
  const RadialGrid grid(std::ldexp(1.0, -16), std::ldexp(1.0, 16), std::exp2(1.0 / 8));
  const auto rep = thm61_condition(omega, WeightDescriptor::constant(1), v, 1, 2.0, 0.25, {Point{0.0}}, grid);
  CHECK(rep.value == doctest::Approx(2.0).epsilon(1e-3));
  const auto many =
      thm61_condition(omega, WeightDescriptor::constant(1), v, 1, 2.0, 0.25, {Point{0.0}, Point{0.5}, Point{2.0}}, grid);
  CHECK(many.value >= rep.value);
  CHECK(many.truncated);
}

TEST_CASE("theorem51 power case") {
  // u0 = t^{-1}, u1 = u2 = t^{1/2}, v1 = 1, v2 = |y|^{-1}: I = beta / a = 2
  const auto u0 = RadialFunction::power(-1.0);
  const auto u = RadialFunction::power(0.5);
  const auto rep = theorem51_I(u0, u, u, WeightDescriptor::constant(1), WeightDescriptor::power(-1.0));
  CHECK_FALSE(rep.infinite);
  CHECK(rep.value == doctest::Approx(2.0).epsilon(0.03));
  REQUIRE(rep.stable);
  CHECK(*rep.stable);
  CHECK(std::abs(*rep.refined_value - 2.0) < std::abs(rep.value - 2.0));

  const auto zero = theorem51_I(u0, u, RadialFunction::constant(0), RadialFunction::constant(1),
                                RadialFunction::power(-1.0));
  CHECK(zero.value == 0.0);
  const auto trivial = theorem51_I(RadialFunction::constant(1), u, u, WeightDescriptor::constant(1),
                                   WeightDescriptor::power(-1.0));
  CHECK(trivial.infinite);
}

TEST_CASE("oracle against I") {
  const auto u0 = RadialFunction::power(-1.0);
  const auto u = RadialFunction::power(0.5);
  const auto v1 = RadialFunction::constant(1);
  const auto v2 = RadialFunction::power(-1.0);
  const double I = theorem51_I(u0, u, u, v1, v2).value;
  double prev = 0.0;
  for (int k = 1; k <= 4; ++k) {
    OracleOptions o;
    o.shells = k;
    const auto res = best_constant_oracle(u0, u, u, v1, v2, o);
    CHECK(res.value >= prev);
    prev = res.value;
  }
  OracleOptions o;
  const auto res = best_constant_oracle(u0, u, u, v1, v2, o);
  CHECK(res.value <= I);
  CHECK(I / res.value <= 4.0);
  CHECK(equivalence_constant(I, res.value) >= 1.0);
  const auto scaled = best_constant_oracle(u0, u, u.scaled(3.0), v1, v2, o);
  CHECK(scaled.value == doctest::Approx(3.0 * res.value).epsilon(1e-12));
}

#include <cmath>
#include <random>

#include "doctest.h"
#include "fracmorrey/error.hpp"
#include "fracmorrey/norms.hpp"
#include "helpers.hpp"

using namespace fracmorrey;

namespace {

GridFunction ones_weight(const Domain& d) { return sample_weight(WeightDescriptor::constant(1.0), d); }

}  // namespace

TEST_CASE("weighted Lp norms") {
  Domain d = fmtest::line(-2, 2, 256);
  GridFunction f = sample(fmtest::unit_indicator(), d);
  Region all = region_cells(d, RegionKind::Ball, {0.0}, 3.0);
  CHECK(weighted_lp_norm(f, 2.0, all, ones_weight(d)) == doctest::Approx(std::sqrt(2.0)));

  auto v = WeightDescriptor::power(0.5);
  Region b = region_cells(d, RegionKind::Ball, {0.0}, 1.0);
  auto vs = sample_weight(v, d);
  for (double p : {1.0, 2.0, 3.5})
    CHECK(weighted_lp_norm(f, p, b, vs) == doctest::Approx(std::pow(weight_measure(vs, b), 1 / p)).epsilon(1e-13));
  CHECK(weighted_lp_norm(f, kInfinity, b, ones_weight(d)) == 1.0);
  CHECK_THROWS_AS(weighted_lp_norm(f, 0.5, b, vs), ValidationError);

  double prev = 1;
  for (int n : {64, 256, 1024}) {
    Domain dn = fmtest::line(-2, 2, n);
    Region bn = region_cells(dn, RegionKind::Ball, {0.0}, 1.0);
    const double err = std::abs(weighted_lp_norm(sample(fmtest::unit_indicator(), dn), 1.0, bn, WeightDescriptor::power(1.0)) - 1.0);
    CHECK(err < 4.0 / n);
    CHECK(err <= prev);
    prev = err;
  }
}

TEST_CASE("rearrangement and weak Lorentz norm") {
  Domain d = fmtest::line(-2, 2, 64);
  auto v = sample_weight(WeightDescriptor::power(0.5), d);
  GridFunction ind = sample(fmtest::unit_indicator(), d);
  Region b = region_cells(d, RegionKind::Ball, {0.0}, 1.0);
  const double vb = weight_measure(v, b);
  auto r = rearrangement(ind, v);
  REQUIRE(r.values.size() == 1);
  CHECK(r.values[0] == 1.0);
  CHECK(r.support() == doctest::Approx(vb).epsilon(1e-14));
  CHECK(r(0.0) == 1.0);
  CHECK(r(vb * 1.01) == 0.0);
  CHECK(weak_lorentz_norm(r, 3.0) == doctest::Approx(std::pow(vb, 1 / 3.0)).epsilon(1e-14));

  auto z = rearrangement(GridFunction::zeros(d), v);
  CHECK(z.values.empty());
  CHECK(z(0.5) == 0.0);
  CHECK(weak_lorentz_norm(z, 2.0) == 0.0);

  // two levels with v = 1
  auto one = ones_weight(d);
  std::vector<double> vals(64, 0.0);
  for (int k = 10; k < 20; ++k) vals[k] = 2.0;
  for (int k = 30; k < 50; ++k) vals[k] = 1.0;
  GridFunction two(d, vals, true);
  auto r2 = rearrangement(two, one);
  const double e1 = 10 * d.cell_width(), e2 = 20 * d.cell_width();
  REQUIRE(r2.values.size() == 2);
  CHECK(r2(0.5 * e1) == 2.0);
  CHECK(r2(e1 + 0.1) == 1.0);
  CHECK(r2.ends[1] == doctest::Approx(e1 + e2));
  CHECK(weak_lorentz_norm(r2, 2.0) == doctest::Approx(std::max(2 * std::sqrt(e1), std::sqrt(e1 + e2))));
}

TEST_CASE("Morrey norms") {
  Domain d = fmtest::line(-4, 4, 257);
  GridFunction f = sample(fmtest::unit_indicator(), d);
  CHECK(morrey_norm(GridFunction::zeros(d), 2.0, 1.0) == 0.0);
  CHECK(morrey_norm(f, 2.0, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  // lambda = 0 gives the global norm
  CHECK(morrey_norm(f, 2.0, 0.0) == doctest::Approx(weighted_lp_norm(f, 2.0, ones_weight(d))));

  auto one = WeightDescriptor::constant(1.0);
  CHECK(generalized_weighted_morrey_norm(f, 2.0, RadialWeight(one), one) ==
        doctest::Approx(weighted_lp_norm(f, 2.0, ones_weight(d))));
  CHECK(generalized_weighted_morrey_norm(f, 2.0, RadialWeight::classical(2.0, 1.0), one) == morrey_norm(f, 2.0, 1.0));
  CHECK(central_morrey_norm(f, 2.0, RadialWeight::classical(2.0, 1.0), one) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(central_morrey_norm(f, 2.0, RadialWeight(one), one) == doctest::Approx(weighted_lp_norm(f, 2.0, ones_weight(d))));
  CHECK(central_morrey_norm(GridFunction::zeros(d), 2.0, RadialWeight(one), one) == 0.0);
  CHECK_THROWS_AS(central_morrey_norm(f, 2.0, RadialWeight(one, WeightDescriptor::power(1.0)), one), ValidationError);

  // even grid: the origin is a cell face
  Domain e = fmtest::line(-4, 4, 256);
  GridFunction fe = sample(fmtest::unit_indicator(), e);
  CHECK(fmtest::rel_close(central_morrey_norm(fe, 2.0, RadialWeight::classical(2.0, 0.5), one), std::pow(2.0, 0.5) * 1.0, 0.05));
}

TEST_CASE("Morrey norm properties") {
  Domain d = fmtest::line(-2, 2, 64);
  GridFunction f = sample(FunctionDescriptor::step(4, 8, Shape{RegionKind::Cube, {0.0}, 1.5}), d);
  auto v = WeightDescriptor::power(0.5);
  auto om = RadialWeight(WeightDescriptor::power(-0.3));
  const double full = generalized_weighted_morrey_norm(f, 2.0, om, v);
  CHECK(central_morrey_norm(f, 2.0, om, v) <= full);
  CHECK(generalized_weighted_morrey_norm(f.scaled(2.5), 2.0, om, v) == doctest::Approx(2.5 * full).epsilon(1e-14));
  GridFunction neg(d, f.values, false);
  for (auto& x : neg.values) x = -x;
  CHECK(generalized_weighted_morrey_norm(neg, 2.0, om, v) == full);
}

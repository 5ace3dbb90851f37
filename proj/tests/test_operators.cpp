#include <cmath>
#include <random>

#include "doctest.h"
#include "fracmorrey/error.hpp"
#include "fracmorrey/operators.hpp"
#include "helpers.hpp"

using namespace fracmorrey;

namespace {

GridFunction indicator_on(const Domain& d) { return sample(fmtest::unit_indicator(), d); }

GridFunction random_step(const Domain& d, unsigned seed) {
  return sample(FunctionDescriptor::step(seed, 16, Shape{RegionKind::Cube, {0.0}, 2.0}), d);
}

}  // namespace

TEST_CASE("fractional maximal closed forms") {
  Domain d = fmtest::line(-4, 4, 1024);
  GridFunction f = indicator_on(d);
  const std::vector<double> x0{0.0};
  CHECK(fmtest::rel_close(fractional_maximal(f, 0.5, x0), std::sqrt(2.0), 0.02));
  // averages of the indicator about a cell center peak at 1
  Domain odd = fmtest::line(-4, 4, 1025);
  CHECK(fractional_maximal(indicator_on(odd), 0.0, x0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fractional_maximal(GridFunction::zeros(d), 0.5, x0) == 0.0);
  CHECK_THROWS_AS(fractional_maximal(f, 1.0, x0), ValidationError);
}

TEST_CASE("riesz closed forms") {
  Domain d = fmtest::line(-4, 4, 1024);
  GridFunction f = indicator_on(d);
  CHECK(fmtest::rel_close(riesz_potential(f, 0.5, std::vector<double>{0.0}), 4.0, 0.02));
  CHECK(fmtest::rel_close(riesz_potential(f, 0.5, std::vector<double>{2.0}), 2 * (std::sqrt(3.0) - 1), 0.02));
  CHECK(riesz_potential(GridFunction::zeros(d), 0.5, std::vector<double>{0.0}) == 0.0);
  CHECK_THROWS_AS(riesz_potential(f, 0.0, std::vector<double>{0.0}), ValidationError);
  // centre cell of an odd grid
  Domain odd = fmtest::line(-4, 4, 1025);
  GridFunction fo = indicator_on(odd);
  GridFunction field_i = field(Operator::RieszPotential, fo, {.alpha = 0.5});
  CHECK(fmtest::rel_close(field_i[512], 4.0, 0.02));
}

TEST_CASE("fields agree with pointwise evaluation at centers") {
  Domain d = fmtest::line(-2, 2, 64);
  GridFunction f = random_step(d, 3);
  auto m = field(Operator::FractionalMaximal, f, {.alpha = 0.3});
  auto i = field(Operator::RieszPotential, f, {.alpha = 0.3});
  CubeFamily fam = default_cube_family(d);
  auto s = field(Operator::SharpMaximal, f, {.cubes = fam});
  auto l = field(Operator::LocalSharpMaximal, f, {.lambda = 0.3, .cubes = fam});
  for (std::size_t k = 0; k < d.cell_count(); k += 7) {
    const auto x = d.center(k);
    CHECK(m[k] == fractional_maximal(f, 0.3, x));
    CHECK(i[k] == riesz_potential(f, 0.3, x));
    CHECK(s[k] == sharp_maximal(f, x, fam));
    CHECK(l[k] == local_sharp_maximal(f, 0.3, x, fam));
  }
  Domain d2 = fmtest::square(-1, 1, 12);
  GridFunction f2 = random_step(d2, 5);
  auto m2 = fractional_maximal_field(f2, 1.0);
  for (std::size_t k = 0; k < d2.cell_count(); k += 11) CHECK(m2[k] == fractional_maximal(f2, 1.0, d2.center(k)));
  CHECK(field(Operator::FractionalMaximal, GridFunction::zeros(d), {.alpha = 0.5}).values ==
        std::vector<double>(d.cell_count(), 0.0));
}

TEST_CASE("pointwise domination M <= omega^{alpha/n-1} I") {
  Domain d = fmtest::line(-2, 2, 256);
  for (unsigned seed = 0; seed < 5; ++seed) {
    GridFunction f = random_step(d, seed);
    for (double a : {0.25, 0.5, 0.75}) {
      auto m = fractional_maximal_field(f, a);
      auto i = riesz_potential_direct(f, a);
      for (std::size_t k = 0; k < d.cell_count(); ++k) CHECK(m[k] <= std::pow(2.0, a - 1) * i[k] * (1 + 1e-12));
    }
  }
  Domain d2 = fmtest::square(-1, 1, 16);
  GridFunction f2 = random_step(d2, 9);
  auto m2 = fractional_maximal_field(f2, 1.2);
  auto i2 = riesz_potential_direct(f2, 1.2);
  const double c = std::pow(unit_ball_volume(2), 1.2 / 2 - 1);
  for (std::size_t k = 0; k < d2.cell_count(); ++k) CHECK(m2[k] <= c * i2[k] * (1 + 1e-12));
}

TEST_CASE("homogeneity, monotonicity and radius-set stability") {
  Domain d = fmtest::line(-2, 2, 128);
  GridFunction f = random_step(d, 11);
  GridFunction g(d, f.values, true);
  for (auto& v : g.values) v += 0.1;
  auto mf = fractional_maximal_field(f, 0.5), mg = fractional_maximal_field(g, 0.5);
  auto m3 = fractional_maximal_field(f.scaled(3.0), 0.5);
  auto i3 = riesz_potential_direct(f.scaled(3.0), 0.5), i1 = riesz_potential_direct(f, 0.5);
  auto ig = riesz_potential_direct(g, 0.5);
  for (std::size_t k = 0; k < d.cell_count(); ++k) {
    CHECK(mf[k] <= mg[k]);
    CHECK(i1[k] <= ig[k]);
    CHECK(m3[k] == doctest::Approx(3 * mf[k]).epsilon(1e-14));
    CHECK(i3[k] == doctest::Approx(3 * i1[k]).epsilon(1e-14));
  }
  RadialGrid coarse(d.equal_volume_radius(), 2 * d.diameter(), 2.0);
  auto mc = fractional_maximal_field(f, 0.5, coarse);
  auto mr = fractional_maximal_field(f, 0.5, coarse.refined());
  for (std::size_t k = 0; k < d.cell_count(); ++k) CHECK(mc[k] <= mr[k]);

  CubeFamily fam = default_cube_family(d);
  GridFunction shifted(d, f.values, true);
  for (auto& v : shifted.values) v += 5.0;
  auto s1 = sharp_maximal_field(f, fam), s2 = sharp_maximal_field(f.scaled(2.0), fam);
  for (std::size_t k = 0; k < d.cell_count(); ++k) CHECK(s2[k] == doctest::Approx(2 * s1[k]).epsilon(1e-14));
}

TEST_CASE("tail integral") {
  Domain d = fmtest::line(-4, 4, 1024);
  GridFunction f = sample(FunctionDescriptor::indicator({RegionKind::Ball, {0.0}, 2.0}), d);
  Region q = region_cells(d, RegionKind::Cube, {0.0}, 1.0);
  CHECK(fmtest::rel_close(tail_integral(f, q, 0.5), 4 * (std::sqrt(2.0) - 1), 0.01));
  GridFunction inner = sample(FunctionDescriptor::indicator({RegionKind::Ball, {0.0}, 0.5}), d);
  CHECK(tail_integral(inner, q, 0.5) == 0.0);
  CHECK(tail_integral(GridFunction::zeros(d), q, 0.5) == 0.0);
}

TEST_CASE("sharp maximal functions") {
  Domain d = fmtest::line(-2, 2, 256);
  CubeFamily fam = default_cube_family(d);
  GridFunction c(d, std::vector<double>(256, 3.0), true);
  CHECK(sharp_maximal(c, std::vector<double>{0.0}, fam) == 0.0);
  CHECK(local_sharp_maximal(c, 0.5, std::vector<double>{0.0}, fam) == 0.0);

  // chi_[0, inf) restricted to the box
  std::vector<double> hv(256);
  for (int k = 0; k < 256; ++k) hv[k] = d.center(k)[0] > 0 ? 1.0 : 0.0;
  GridFunction heav(d, hv, true);
  const std::vector<double> x0{0.0};
  // odd lattice cubes: m ones against m + 1 zeros, m/(2m+1) -> 1/2
  const double sh = sharp_maximal(heav, x0, fam);
  CHECK(sh <= 0.5);
  CHECK(sh >= 0.5 - 2.0 / 256);
  CHECK(local_sharp_maximal(heav, 0.25, x0, fam) == doctest::Approx(0.5));
  CHECK(local_sharp_maximal(heav, 0.5, x0, fam) == 0.0);

  GridFunction ind = random_step(d, 1);
  for (auto& v : ind.values) v = v > 0.5 ? 1.0 : 0.0;
  auto s = sharp_maximal_field(ind, fam);
  for (double v : s.values) CHECK(v <= 0.5);

  CHECK(mean_deviation_from_median({0, 0, 1, 1}) == 0.5);
  CHECK(local_oscillation({0, 1, 2, 3}, 0.5) == 0.5);
  CHECK(local_oscillation({0, 1}, 1.0) == 0.0);
}

TEST_CASE("local sharp maximal is bounded by the sharp maximal") {
  Domain d = fmtest::line(-2, 2, 64);
  CubeFamily fam = default_cube_family(d);
  std::mt19937_64 rng(17);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 5; ++t) {
    std::vector<double> v(64);
    for (auto& x : v) x = nd(rng);
    GridFunction f(d, v, false);
    double bmo = 0.0;
    for (double s : sharp_maximal_field(f, fam).values) bmo = std::max(bmo, s);
    for (double lam : {0.1, 0.3, 0.5, 1.0}) {
      double top = 0.0;
      for (double s : local_sharp_maximal_field(f, lam, fam).values) top = std::max(top, s);
      CHECK(lam * top <= bmo * (1 + 1e-12));
    }
  }
}

TEST_CASE("riesz fft matches direct summation") {
  for (int n : {16, 64, 256}) {
    Domain d = fmtest::line(-2, 2, n);
    GridFunction f = random_step(d, static_cast<unsigned>(n));
    auto a = riesz_potential_direct(f, 0.4), b = riesz_potential_fft(f, 0.4);
    double diff = 0, top = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      diff = std::max(diff, std::abs(a[k] - b[k]));
      top = std::max(top, std::abs(a[k]));
    }
    CHECK(diff <= 1e-10 * top);
  }
  Domain d2 = fmtest::square(-1, 1, 32);
  GridFunction f2 = random_step(d2, 2);
  auto a = riesz_potential_direct(f2, 1.5), b = riesz_potential_fft(f2, 1.5);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-10 * a[k]);
}

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fracmorrey/error.hpp"
#include "fracmorrey/geometry.hpp"
#include "helpers.hpp"

using namespace fracmorrey;

TEST_CASE("build_grid centers and widths") {
  Domain d = fmtest::line(-2, 2, 8);
  CHECK(d.cell_count() == 8);
  CHECK(d.cell_width() == doctest::Approx(0.5));
  CHECK(d.center(0)[0] == doctest::Approx(-1.75));
  CHECK(d.center(7)[0] == doctest::Approx(1.75));

  Domain sq = fmtest::square(0, 1, 4);
  CHECK(sq.cell_count() == 16);
  CHECK(sq.cell_volume() == doctest::Approx(1.0 / 16));

  CHECK_THROWS_AS(fmtest::line(-2, 2, 0), ValidationError);
  CHECK_THROWS_AS(fmtest::line(1, 1, 4), ValidationError);
  CHECK_THROWS_AS(Domain({{0, 1}, {0, 2}}, 4), ValidationError);
}

TEST_CASE("region_cells uses strict center membership") {
  Domain d = fmtest::line(-2, 2, 8);
  Region r = region_cells(d, RegionKind::Ball, {0.0}, 1.0);
  CHECK(r.cells.size() == 4);
  CHECK(r.measure == doctest::Approx(2.0));

  Region tiny = region_cells(d, RegionKind::Ball, {0.0}, 0.2);
  CHECK(tiny.cells.empty());
  CHECK(tiny.measure == 0.0);

  CHECK_THROWS_AS(region_cells(d, RegionKind::Ball, {0.0}, 0.0), ValidationError);
}

TEST_CASE("disk measure converges to pi") {
  double prev_err = 1.0;
  for (int n : {16, 64, 256}) {
    Domain d = fmtest::square(-1, 1, n);
    Region r = region_cells(d, RegionKind::Ball, {0.0, 0.0}, 1.0);
    const double err = std::abs(r.measure - std::numbers::pi);
    CHECK(err < 8.0 / n);
    CHECK(err <= prev_err);
    prev_err = err;
  }
}

TEST_CASE("region monotonicity and translation") {
  Domain d = fmtest::square(-2, 2, 32);
  Region a = region_cells(d, RegionKind::Ball, {0.0625, 0.0625}, 0.5);
  Region b = region_cells(d, RegionKind::Ball, {0.0625, 0.0625}, 0.9);
  for (auto c : a.cells) CHECK(std::find(b.cells.begin(), b.cells.end(), c) != b.cells.end());

  const double h = d.cell_width();
  Region s = region_cells(d, RegionKind::Cube, {0.0625 + 3 * h, 0.0625}, 0.5);
  REQUIRE(s.cells.size() == region_cells(d, RegionKind::Cube, {0.0625, 0.0625}, 0.5).cells.size());
  Region base = region_cells(d, RegionKind::Cube, {0.0625, 0.0625}, 0.5);
  for (std::size_t i = 0; i < base.cells.size(); ++i) CHECK(s.cells[i] == base.cells[i] + 3 * 32);

  Region left = region_cells(d, RegionKind::Cube, {-1.0, 0.0}, 0.5);
  Region right = region_cells(d, RegionKind::Cube, {1.0, 0.0}, 0.5);
  Region both = region_cells(d, RegionKind::Cube, {0.0, 0.0}, 1.5);
  CHECK(left.measure + right.measure <= both.measure + 1e-12);
}

TEST_CASE("radial_grid covers the range") {
  RadialGrid g(0.25, 2, 2);
  REQUIRE(g.size() == 4);
  CHECK(g[0] == 0.25);
  CHECK(g[3] == 2.0);
  RadialGrid g2(1, 1.5, 2);
  REQUIRE(g2.size() == 2);
  CHECK(g2[1] == 2.0);
  CHECK_THROWS_AS(RadialGrid(1, 2, 1), ValidationError);
  CHECK_THROWS_AS(RadialGrid(2, 1, 2), ValidationError);
  CHECK_THROWS_AS(RadialGrid(0, 1, 2), ValidationError);

  RadialGrid r = g.refined();
  CHECK(r.size() == 7);
  CHECK(r[2] == 0.5);
}

TEST_CASE("offset shells are sorted and grouped") {
  OffsetShells s(2, 3);
  CHECK(s.size() == 49);
  const auto& st = s.shell_starts();
  CHECK(st.back() == s.size());
  CHECK(st[1] - st[0] == 1);
  CHECK(st[2] - st[1] == 4);
  for (std::size_t k = 1; k < s.size(); ++k) CHECK(s.sq_norm(k - 1) <= s.sq_norm(k));
}

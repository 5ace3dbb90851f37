#include <cmath>

#include "doctest.h"
#include "fracmorrey/error.hpp"
#include "fracmorrey/harness.hpp"
#include "fracmorrey/norms.hpp"
#include "fracmorrey/operators.hpp"
#include "helpers.hpp"

using namespace fracmorrey;

namespace {

ExperimentSpec small(const std::string& id) {
  ExperimentSpec s = default_experiment(id);
  s.cells = 128;
  s.levels = 2;
  return s;
}

void same_ratios(const EquivalenceReport& a, const EquivalenceReport& b) {
  REQUIRE(a.instances.size() == b.instances.size());
  for (std::size_t i = 0; i < a.instances.size(); ++i)
    CHECK(a.instances[i].ratio == doctest::Approx(b.instances[i].ratio).epsilon(1e-10));
}

}  // namespace

TEST_CASE("ratio_stats") {
  std::vector<Instance> v{{"a", "", 2, 1, 2}, {"b", "", 1, 1, 1}, {"c", "", 8, 2, 4}};
  const auto s = ratio_stats(v);
  CHECK(s.count == 3);
  CHECK(s.min == 1.0);
  CHECK(s.max == 4.0);
  CHECK(s.median == 2.0);
  CHECK(s.spread == 4.0);
  const auto e = ratio_stats({});
  CHECK(e.count == 0);
}

TEST_CASE("every experiment id has defaults") {
  for (const auto& id : experiment_ids()) {
    const auto s = default_experiment(id);
    CHECK(s.id == id);
    CHECK_FALSE(s.functions.empty());
  }
  CHECK_THROWS_AS(default_experiment("nope"), ValidationError);
}

TEST_CASE("empty family passes vacuously") {
  for (const auto& id : experiment_ids()) {
    ExperimentSpec s = small(id);
    s.functions.clear();
    const auto r = verify(s);
    CHECK(r.instances.empty());
    CHECK(r.stats.count == 0);
    CHECK(r.pass);
  }
}

TEST_CASE("zero function is skipped") {
  ExperimentSpec s = small("thm41");
  s.functions = {FunctionDescriptor::zero()};
  const auto r = verify(s);
  CHECK(r.instances.empty());
  CHECK(r.pass);
}

TEST_CASE("ratios are invariant under scaling f") {
  for (const char* id : {"mw", "thm41", "lem44", "thm35", "lem31", "morrey_equiv"}) {
    CAPTURE(id);
    ExperimentSpec s = small(id);
    s.functions.resize(std::min<std::size_t>(s.functions.size(), 3));
    if (s.regions.size() > 4) s.regions.resize(4);
    ExperimentSpec t = s;
    for (auto& f : t.functions) f = FunctionDescriptor::scaled(3.5, f);
    same_ratios(verify(s), verify(t));
  }
}

TEST_CASE("thm41 tail term closed form") {
  ExperimentSpec s = default_experiment("thm41");
  s.half_width = 4;
  s.cells = 1024;
  s.levels = 1;
  const Shape ball2{RegionKind::Ball, {0.0}, 2.0};
  const Shape q{RegionKind::Cube, {0.0}, 1.0};
  s.functions = {FunctionDescriptor::indicator(ball2)};
  s.regions = {q};
  const auto r = verify(s);
  REQUIRE(r.instances.size() == 1);
  const Domain d = s.domain(0);
  const GridFunction f = sample(s.functions[0], d);
  const Region reg = region_cells(d, q.kind, q.center_point(1), q.radius);
  const double m = weighted_lp_norm(fractional_maximal_field(f, 0.5), 2.0, reg, sample_weight(s.weight, d));
  const double tail = r.instances[0].rhs - m;
  CHECK(fmtest::rel_close(tail, std::sqrt(2.0) * 4 * (std::sqrt(2.0) - 1), 0.01));
  CHECK(r.instances[0].lhs > 0.0);
}

TEST_CASE("thm41 on support inside Q has no tail") {
  ExperimentSpec s = small("thm41");
  s.functions = {FunctionDescriptor::indicator({RegionKind::Ball, {0.0}, 0.5})};
  s.regions = {{RegionKind::Cube, {0.0}, 2.0}};
  const auto a = verify(s);
  ExperimentSpec t = s;
  t.id = "lem44";
  const auto b = verify(t);
  REQUIRE(a.instances.size() == 1);
  REQUIRE(b.instances.size() == 1);
  CHECK(a.instances[0].lhs == doctest::Approx(b.instances[0].lhs).epsilon(1e-12));
}

TEST_CASE("default experiments pass at small resolution") {
  for (const char* id : {"mw", "thm41", "thm35", "lem31", "sharp_equiv", "lem23", "morrey_equiv"}) {
    CAPTURE(id);
    ExperimentSpec s = small(id);
    const auto r = verify(s);
    CHECK(r.stats.count > 0);
    CHECK(r.pass);
    CHECK(r.refinement.size() == 2);
    for (const auto& c : r.checks) CHECK(c.holds);
  }
}

TEST_CASE("thm35 lower side uses 2^(alpha-n)") {
  const auto r = verify(small("thm35"));
  bool found = false;
  for (const auto& c : r.checks) {
    if (c.name != "lower_side") continue;
    found = true;
    CHECK(c.constant == doctest::Approx(std::pow(2.0, 0.75 - 1.0)));
  }
  CHECK(found);
}

TEST_CASE("reports are deterministic") {
  const auto a = verify(small("thm41"));
  const auto b = verify(small("thm41"));
  REQUIRE(a.instances.size() == b.instances.size());
  for (std::size_t i = 0; i < a.instances.size(); ++i) {
    CHECK(a.instances[i].lhs == b.instances[i].lhs);
    CHECK(a.instances[i].rhs == b.instances[i].rhs);
  }
}

TEST_CASE("invalid parameters are rejected") {
  ExperimentSpec s = small("thm41");
  s.alpha = 1.5;
  CHECK_THROWS_AS(verify(s), ValidationError);
  s = small("mw");
  s.p = 0.5;
  CHECK_THROWS_AS(verify(s), ValidationError);
}

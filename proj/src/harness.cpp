#include "fracmorrey/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "fracmorrey/conditions.hpp"
#include "fracmorrey/error.hpp"
#include "fracmorrey/grammar.hpp"
#include "fracmorrey/norms.hpp"
#include "fracmorrey/operators.hpp"
#include "fracmorrey/weights.hpp"

namespace fracmorrey {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string point_label(const Point& x) {
  char buf[64];
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.6g", i ? "," : "", x[i]);
    out += buf;
  }
  return x.size() > 1 ? "[" + out + "]" : out;
}

std::string shape_label(const Shape& s) { return to_string(s); }

Region region_of(const Domain& d, const Shape& s, double scale = 1.0) {
  return region_cells(d, s.kind, s.center_point(d.dimension()), s.radius * scale);
}

GridFunction restrict_to(const GridFunction& f, const Region& r) {
  GridFunction g = GridFunction::zeros(f.domain);
  g.nonnegative = f.nonnegative;
  for (std::size_t c : r.cells) g.values[c] = f.values[c];
  return g;
}

bool all_zero(const GridFunction& f) {
  return std::all_of(f.values.begin(), f.values.end(), [](double x) { return x == 0.0; });
}

Instance make_instance(std::string f, std::string region, double lhs, double rhs) {
  Instance in{std::move(f), std::move(region), lhs, rhs, 0.0};
  in.ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? kInf : 0.0);
  return in;
}

struct LevelResult {
  std::vector<Instance> instances;
  std::vector<SideCheck> checks;
};

void note_side(std::vector<SideCheck>& checks, const std::string& name, double constant, double tolerance, double lhs,
               double rhs) {
  auto it = std::find_if(checks.begin(), checks.end(), [&](const SideCheck& c) { return c.name == name; });
  if (it == checks.end()) {
    checks.push_back({name, constant, tolerance, kInf, true});
    it = checks.end() - 1;
  }
  if (rhs <= 0.0) return;
  it->worst = std::min(it->worst, lhs / (constant * rhs));
  it->holds = it->worst >= 1.0 - tolerance;
}

void validate(const ExperimentSpec& spec) {
  require(spec.p > 1.0 && std::isfinite(spec.p), "p must lie in (1, inf)");
  require(spec.dimension >= 1 && spec.dimension <= 3, "dimension must be 1, 2 or 3");
  require(spec.alpha > 0.0 && spec.alpha < spec.dimension, "alpha must lie in (0, n)");
  require(spec.cells >= 2, "grid needs at least 2 cells per axis");
  require(spec.levels >= 1 && spec.levels <= 4, "levels must lie in [1, 4]");
  require(spec.half_width > 0.0, "box half-width must be positive");
  require(spec.spread_bound >= 1.0, "spread bound must be at least 1");
  require(spec.drift_bound > 0.0, "drift bound must be positive");
}

void require_nonnegative(const ExperimentSpec& spec) {
  for (const auto& f : spec.functions)
    require(f.nonnegative(), "experiment " + spec.id + " needs nonnegative functions: " + to_string(f));
}

template <class PerLevel>
EquivalenceReport run(const ExperimentSpec& spec, PerLevel&& per_level) {
  validate(spec);
  EquivalenceReport rep;
  rep.id = spec.id;
  rep.spread_bound = spec.spread_bound;
  rep.drift_bound = spec.drift_bound;
  rep.box = spec.domain(0).box();
  std::map<std::string, SideCheck> merged;
  std::vector<std::string> order;
  for (int l = 0; l < spec.levels; ++l) {
    const Domain d = spec.domain(l);
    LevelResult lr = per_level(d);
    rep.refinement.push_back(ratio_stats(lr.instances, d.cells_per_axis()));
    for (const auto& c : lr.checks) {
      auto [it, fresh] = merged.emplace(c.name, c);
      if (fresh) {
        order.push_back(c.name);
      } else {
        it->second.worst = std::min(it->second.worst, c.worst);
        it->second.holds = it->second.holds && c.holds;
      }
    }
    if (l + 1 == spec.levels) rep.instances = std::move(lr.instances);
  }
  for (const auto& n : order) rep.checks.push_back(merged[n]);
  rep.stats = rep.refinement.back();
  for (std::size_t l = 1; l < rep.refinement.size(); ++l) {
    const auto& a = rep.refinement[l - 1];
    const auto& b = rep.refinement[l];
    if (a.count == 0 || b.count == 0) continue;
    for (auto [x, y] : {std::pair{a.min, b.min}, std::pair{a.median, b.median}, std::pair{a.max, b.max}}) {
      const double rel = x > 0.0 ? std::abs(y / x - 1.0) : (y > 0.0 ? kInf : 0.0);
      rep.drift = std::max(rep.drift, rel);
    }
  }
  rep.pass = rep.stats.count == 0 ||
             (std::isfinite(rep.stats.max) && rep.stats.spread <= rep.spread_bound && rep.drift <= rep.drift_bound);
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.holds;
  return rep;
}

std::vector<FunctionDescriptor> parse_all(std::initializer_list<const char*> texts) {
  std::vector<FunctionDescriptor> out;
  for (const char* t : texts) out.push_back(parse_function(t));
  return out;
}

std::vector<FunctionDescriptor> family10() {
  return parse_all({"ind(ball(0, 1))", "ind(ball(0.5, 0.25))", "ind(cube(-1, 0.5))", "ind(ball(0, 2))",
                    "ind(ball(1.5, 0.5))", "step(1, 4)", "step(2, 8)", "step(3, 4, cube(1, 1))",
                    "step(4, 16, cube(-1, 2))", "sum(ind(ball(0, 1)), scaled(0.5, ind(ball(2, 0.5))))"});
}

std::vector<Shape> shapes20(RegionKind kind) {
  std::vector<Shape> out;
  for (double c : {0.0, 0.5, -1.25, 2.0, 3.5})
    for (double s : {0.25, 0.5, 1.0, 2.0}) out.push_back({kind, {c}, s});
  return out;
}

// sup_{t > r} |B(x0, t)|^{alpha/n - 1} sum_{|y - x0| < t} f(y) h^n
double ball_average_sup(const GridFunction& f, const Point& x0, double r, double alpha) {
  const Domain& d = f.domain;
  const int n = d.dimension();
  std::vector<std::pair<double, double>> dist;
  dist.reserve(d.cell_count());
  Point y(n);
  for (std::size_t j = 0; j < d.cell_count(); ++j) {
    d.center(j, y);
    double r2 = 0.0;
    for (int a = 0; a < n; ++a) r2 += (y[a] - x0[a]) * (y[a] - x0[a]);
    dist.emplace_back(std::sqrt(r2), f.values[j]);
  }
  std::sort(dist.begin(), dist.end());
  double best = 0.0, acc = 0.0;
  const double hv = d.cell_volume();
  std::size_t i = 0;
  while (i < dist.size()) {
    const double t = dist[i].first;
    if (t > r) best = std::max(best, std::pow(ball_volume(n, t), alpha / n - 1.0) * acc * hv);
    while (i < dist.size() && dist[i].first == t) acc += dist[i++].second;
  }
  const double big = 2.0 * d.diameter();
  best = std::max(best, std::pow(ball_volume(n, std::max(big, r * (1 + 1e-12))), alpha / n - 1.0) * acc * hv);
  return best;
}

}  // namespace

Domain ExperimentSpec::domain(int level) const {
  std::vector<Interval> box(static_cast<std::size_t>(dimension), Interval{-half_width, half_width});
  return Domain(box, cells << level);
}

std::vector<std::string> experiment_ids() {
  return {"mw", "thm41", "lem44", "thm35", "lem31", "sharp_equiv", "lem23", "morrey_equiv"};
}

ExperimentSpec default_experiment(const std::string& id) {
  ExperimentSpec s;
  s.id = id;
  if (id == "mw") {
    s.functions = parse_all({"ind(ball(0, 1))", "ind(ball(0.5, 0.25))", "step(1, 4)", "step(2, 8)", "gauss(0, 0.5)"});
    s.cells = 256;
    s.levels = 3;
  } else if (id == "thm41" || id == "lem44") {
    s.functions = family10();
    s.regions = shapes20(RegionKind::Cube);
  } else if (id == "thm35" || id == "lem31") {
    s.functions = family10();
    s.regions = shapes20(RegionKind::Ball);
    s.cells = 256;
    s.alpha = 0.75;
    if (id == "lem31") s.spread_bound = kInf;
  } else if (id == "sharp_equiv") {
    s.functions = parse_all({"ind(ball(0, 1))", "step(1, 4)", "gauss(0, 0.5)"});
    s.cells = 256;
    s.drift_bound = 0.25;
  } else if (id == "lem23") {
    s.functions = family10();
    s.functions.push_back(parse_function("ind(cube(0, 8))"));
    s.functions.push_back(parse_function("sum(ind(ball(0, 1)), scaled(-1, ind(ball(0.5, 0.25))))"));
    s.regions = shapes20(RegionKind::Cube);
    s.cells = 256;
    s.spread_bound = kInf;
  } else if (id == "morrey_equiv") {
    s.functions = parse_all({"ind(ball(0, 1))", "ind(ball(0.5, 0.25))", "step(1, 4)", "gauss(0, 0.5)"});
    s.alpha = 0.25;
    s.lambda = 0.5;
    s.omega = WeightDescriptor::power(-s.lambda / s.p);
    s.cells = 256;
  } else {
    throw ValidationError("unknown experiment: " + id);
  }
  return s;
}

RatioStats ratio_stats(const std::vector<Instance>& instances, int cells) {
  RatioStats s;
  s.cells = cells;
  std::vector<double> r;
  for (const auto& in : instances)
    if (in.rhs > 0.0 || in.lhs > 0.0) r.push_back(in.ratio);
  s.count = r.size();
  if (r.empty()) return s;
  std::sort(r.begin(), r.end());
  s.min = r.front();
  s.max = r.back();
  const std::size_t m = r.size() / 2;
  s.median = r.size() % 2 ? r[m] : 0.5 * (r[m - 1] + r[m]);
  s.spread = s.min > 0.0 ? s.max / s.min : kInf;
  return s;
}

EquivalenceReport verify_mw(const ExperimentSpec& spec) {
  validate(spec);
  require_nonnegative(spec);
  require(!ainf_estimate(spec.weight, WeightFamily{spec.dimension}).infinite, "weight shows no A_infinity evidence");
  return run(spec, [&](const Domain& d) {
    LevelResult lr;
    const GridFunction vs = sample_weight(spec.weight, d);
    for (const auto& f : spec.functions) {
      const GridFunction fs = sample(f, d);
      if (all_zero(fs)) continue;
      const double lhs = weighted_lp_norm(riesz_potential_direct(fs, spec.alpha), spec.p, vs);
      const double rhs = weighted_lp_norm(fractional_maximal_field(fs, spec.alpha), spec.p, vs);
      if (rhs == 0.0 && lhs > 0.0) throw ComputationError("M-norm vanishes while the I-norm does not: " + to_string(f));
      lr.instances.push_back(make_instance(to_string(f), "", lhs, rhs));
    }
    return lr;
  });
}

EquivalenceReport verify_thm41(const ExperimentSpec& spec) {
  validate(spec);
  require_nonnegative(spec);
  const int n = spec.dimension;
  const double tail_const = std::pow(1.0 + std::sqrt(static_cast<double>(n)), spec.alpha - n);
  const double max_const = std::pow(unit_ball_volume(n), 1.0 - spec.alpha / n);
  return run(spec, [&](const Domain& d) {
    LevelResult lr;
    const GridFunction vs = sample_weight(spec.weight, d);
    for (const auto& f : spec.functions) {
      const GridFunction fs = sample(f, d);
      if (all_zero(fs)) continue;
      const GridFunction I = riesz_potential_direct(fs, spec.alpha);
      const GridFunction M = fractional_maximal_field(fs, spec.alpha);
      for (const auto& q : spec.regions) {
        const Region reg = region_of(d, q);
        if (reg.cells.empty()) continue;
        const double lhs = weighted_lp_norm(I, spec.p, reg, vs);
        const double mpart = weighted_lp_norm(M, spec.p, reg, vs);
        const double tail = std::pow(weight_measure(vs, reg), 1.0 / spec.p) * tail_integral(fs, reg, spec.alpha);
        lr.instances.push_back(make_instance(to_string(f), shape_label(q), lhs, mpart + tail));
        note_side(lr.checks, "tail_term", tail_const, 1e-12, lhs, tail);
        note_side(lr.checks, "maximal_term", max_const, 1e-12, lhs, mpart);
      }
    }
    return lr;
  });
}

EquivalenceReport verify_lem44(const ExperimentSpec& spec) {
  validate(spec);
  require_nonnegative(spec);
  const int n = spec.dimension;
  const double max_const = std::pow(unit_ball_volume(n), 1.0 - spec.alpha / n);
  return run(spec, [&](const Domain& d) {
    LevelResult lr;
    const GridFunction vs = sample_weight(spec.weight, d);
    for (const auto& f : spec.functions) {
      const GridFunction fs = sample(f, d);
      for (const auto& q : spec.regions) {
        const Region reg = region_of(d, q);
        if (reg.cells.empty()) continue;
        const GridFunction g = restrict_to(fs, region_of(d, q, 2.0));
        if (all_zero(g)) continue;
        const double lhs = weighted_lp_norm(riesz_potential_direct(g, spec.alpha), spec.p, reg, vs);
        const double rhs = weighted_lp_norm(fractional_maximal_field(g, spec.alpha), spec.p, reg, vs);
        lr.instances.push_back(make_instance(to_string(f), shape_label(q), lhs, rhs));
        note_side(lr.checks, "maximal_term", max_const, 1e-12, lhs, rhs);
      }
    }
    return lr;
  });
}

EquivalenceReport verify_thm35(const ExperimentSpec& spec) {
  validate(spec);
  require_nonnegative(spec);
  require(spec.q > spec.p, "q must exceed p");
  const int n = spec.dimension;
  const double beta = spec.q * (1.0 - spec.alpha / n);
  require(!rd_constant(spec.weight, beta, WeightFamily{n}).infinite, "weight fails the reverse doubling check");
  const double low = std::pow(2.0, spec.alpha - n);
  return run(spec, [&](const Domain& d) {
    LevelResult lr;
    const GridFunction vs = sample_weight(spec.weight, d);
    for (const auto& f : spec.functions) {
      const GridFunction fs = sample(f, d);
      if (all_zero(fs)) continue;
      const GridFunction M = fractional_maximal_field(fs, spec.alpha);
      for (const auto& b : spec.regions) {
        const Region reg = region_of(d, b);
        if (reg.cells.empty()) continue;
        const double lhs = weighted_lp_norm(M, spec.p, reg, vs);
        const double rhs = std::pow(weight_measure(vs, reg), 1.0 / spec.p) *
                           ball_average_sup(fs, b.center_point(n), b.radius, spec.alpha);
        lr.instances.push_back(make_instance(to_string(f), shape_label(b), lhs, rhs));
        note_side(lr.checks, "lower_side", low, spec.side_tolerance, lhs, rhs);
      }
    }
    return lr;
  });
}

EquivalenceReport verify_lem31(const ExperimentSpec& spec) {
  validate(spec);
  require(spec.q > spec.p && spec.q >= 1.0, "lemma needs 0 < p < q and q >= 1");
  require_nonnegative(spec);
  const int n = spec.dimension;
  const double beta = spec.q * (1.0 - spec.alpha / n);
  return run(spec, [&](const Domain& d) {
    LevelResult lr;
    const GridFunction vs = sample_weight(spec.weight, d);
    for (const auto& f : spec.functions) {
      const GridFunction fs = sample(f, d);
      for (const auto& b : spec.regions) {
        const Region reg = region_of(d, b);
        if (reg.cells.empty()) continue;
        const Region twice = region_of(d, b, 2.0);
        const GridFunction g = restrict_to(fs, twice);
        if (all_zero(g)) continue;
        const Point x0 = b.center_point(n);
        double sup = 0.0;
        for (int j = 0; j <= 8; ++j) {
          const double rr = std::ldexp(b.radius, -j);
          for (int side : {0, 1, -1}) {
            Point c = x0;
            c[0] += side * (b.radius - rr);
            sup = std::max(sup, spec.weight.ball_measure(c, rr) / std::pow(ball_volume(n, rr), beta));
          }
        }
        double l1 = 0.0;
        for (std::size_t c : twice.cells) l1 += std::abs(g.values[c]);
        l1 *= d.cell_volume();
        const double vb = spec.weight.ball_measure(x0, b.radius);
        const double lhs = weighted_lp_norm(fractional_maximal_field(g, spec.alpha), spec.p, reg, vs);
        const double rhs = std::pow(vb, 1.0 / spec.p - 1.0 / spec.q) * std::pow(sup, 1.0 / spec.q) * l1;
        lr.instances.push_back(make_instance(to_string(f), shape_label(b), lhs, rhs));
      }
    }
    return lr;
  });
}

EquivalenceReport verify_sharp_equiv(const ExperimentSpec& spec) {
  validate(spec);
  require_nonnegative(spec);
  return run(spec, [&](const Domain& d) {
    LevelResult lr;
    const CubeFamily fam = default_cube_family(d);
    for (const auto& f : spec.functions) {
      const GridFunction fs = sample(f, d);
      if (all_zero(fs)) continue;
      const GridFunction S = sharp_maximal_field(riesz_potential_direct(fs, spec.alpha), fam);
      const GridFunction M = fractional_maximal_field(fs, spec.alpha);
      const std::string label = to_string(f);
      for (std::size_t i = 0; i < d.cell_count(); ++i) {
        if (!(M.values[i] > 0.0)) continue;
        lr.instances.push_back(make_instance(label, point_label(d.center(i)), S.values[i], M.values[i]));
      }
    }
    return lr;
  });
}

EquivalenceReport verify_lem23(const ExperimentSpec& spec) {
  validate(spec);
  return run(spec, [&](const Domain& d) {
    LevelResult lr;
    const GridFunction vs = sample_weight(spec.weight, d);
    const CubeFamily fam = default_cube_family(d);
    for (const auto& f : spec.functions) {
      const GridFunction fs = sample(f, d);
      if (all_zero(fs)) continue;
      const GridFunction S = sharp_maximal_field(fs, fam);
      for (const auto& q : spec.regions) {
        const Region reg = region_of(d, q);
        if (reg.cells.empty()) continue;
        double avg = 0.0;
        for (std::size_t c : reg.cells) avg += std::abs(fs.values[c]);
        avg /= static_cast<double>(reg.cells.size());
        const double lhs = weighted_lp_norm(fs, spec.p, reg, vs);
        const double rhs =
            std::pow(weight_measure(vs, reg), 1.0 / spec.p) * avg + weighted_lp_norm(S, spec.p, reg, vs);
        if (lhs == 0.0 && rhs == 0.0) continue;
        lr.instances.push_back(make_instance(to_string(f), shape_label(q), lhs, rhs));
      }
    }
    return lr;
  });
}

EquivalenceReport verify_morrey_equiv(const ExperimentSpec& spec) {
  validate(spec);
  require_nonnegative(spec);
  const int n = spec.dimension;
  const RadialFunction om = RadialFunction::from_weight(spec.omega);
  ConditionReport cond;
  if (spec.central) {
    cond = thm64_condition(om, spec.weight, n, spec.p, spec.alpha);
  } else {
    const RadialGrid grid(std::ldexp(1.0, -16), std::ldexp(1.0, 16), std::exp2(1.0 / 8));
    std::vector<Point> centers;
    for (double c : {0.0, 0.5, 2.0}) centers.emplace_back(n, c);
    cond = thm61_condition(om, WeightDescriptor::constant(1.0), spec.weight, n, spec.p, spec.alpha, centers, grid);
  }
  const RadialWeight omega(spec.omega);
  EquivalenceReport rep = run(spec, [&](const Domain& d) {
    LevelResult lr;
    const GridFunction vs = sample_weight(spec.weight, d);
    for (const auto& f : spec.functions) {
      const GridFunction fs = sample(f, d);
      if (all_zero(fs)) continue;
      const GridFunction I = riesz_potential_direct(fs, spec.alpha);
      const GridFunction M = fractional_maximal_field(fs, spec.alpha);
      const double lhs = spec.central ? central_morrey(I, spec.p, omega, vs).value
                                      : generalized_weighted_morrey(I, spec.p, omega, vs).value;
      const double rhs = spec.central ? central_morrey(M, spec.p, omega, vs).value
                                      : generalized_weighted_morrey(M, spec.p, omega, vs).value;
      lr.instances.push_back(make_instance(to_string(f), "", lhs, rhs));
    }
    return lr;
  });
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s condition: %s", cond.condition_id.c_str(),
                cond.infinite ? "infinite (necessity probe)" : "finite");
  rep.note = buf;
  if (!cond.infinite) {
    std::snprintf(buf, sizeof buf, " (%.12g)", cond.value);
    rep.note += buf;
  }
  return rep;
}

EquivalenceReport verify(const ExperimentSpec& spec) {
  if (spec.id == "mw") return verify_mw(spec);
  if (spec.id == "thm41") return verify_thm41(spec);
  if (spec.id == "lem44") return verify_lem44(spec);
  if (spec.id == "thm35") return verify_thm35(spec);
  if (spec.id == "lem31") return verify_lem31(spec);
  if (spec.id == "sharp_equiv") return verify_sharp_equiv(spec);
  if (spec.id == "lem23") return verify_lem23(spec);
  if (spec.id == "morrey_equiv") return verify_morrey_equiv(spec);
  throw ValidationError("unknown experiment: " + spec.id);
}

}  // namespace fracmorrey

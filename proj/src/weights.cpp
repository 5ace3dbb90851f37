#include "fracmorrey/weights.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fracmorrey/error.hpp"
#include "fracmorrey/operators.hpp"

namespace fracmorrey {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void cube_bounds(const Point& c, double s, std::vector<double>& lo, std::vector<double>& hi) {
  lo.resize(c.size());
  hi.resize(c.size());
  for (std::size_t a = 0; a < c.size(); ++a) {
    lo[a] = c[a] - s;
    hi[a] = c[a] + s;
  }
}

double box_volume(const std::vector<double>& lo, const std::vector<double>& hi) {
  double v = 1.0;
  for (std::size_t a = 0; a < lo.size(); ++a) v *= hi[a] - lo[a];
  return v;
}

std::string format_p(const char* prefix, double p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s(%g)", prefix, p);
  return buf;
}

// Runs one estimate per refinement level and fills the trend fields.
template <class PerLevel>
void run_levels(ClassReport& rep, int levels, PerLevel&& per_level) {
  require(levels >= 1, "at least one refinement level is needed");
  for (int l = 0; l < levels; ++l) {
    ClassReport lvl = per_level(l);
    rep.trend.push_back(lvl.constant);
    rep.constant = lvl.constant;
    rep.extremal_center = lvl.extremal_center;
    rep.extremal_size = lvl.extremal_size;
    rep.extremal_inner_center = lvl.extremal_inner_center;
    rep.extremal_inner_size = lvl.extremal_inner_size;
    rep.family_count = lvl.family_count;
    rep.size_min = lvl.size_min;
    rep.size_max = lvl.size_max;
  }
  rep.infinite = diverges(rep.trend);
}

template <class PerCube>
ClassReport cube_max(const WeightFamily& family, int level, PerCube&& value) {
  ClassReport r;
  const auto sizes = family.sizes(level);
  r.size_min = sizes.front();
  r.size_max = sizes.back();
  r.extremal_center = Point(family.dimension, 0.0);
  r.extremal_size = sizes.front();
  bool first = true;
  for (double s : sizes) {
    for (const auto& c : family.centers(s)) {
      ++r.family_count;
      const double v = value(c, s);
      if (first || v > r.constant || (std::isnan(r.constant))) {
        r.constant = v;
        r.extremal_center = c;
        r.extremal_size = s;
        first = false;
      }
    }
  }
  return r;
}

}  // namespace

std::vector<double> WeightFamily::sizes(int level) const {
  require(k_min <= k_max, "weight family needs k_min <= k_max");
  std::vector<double> out;
  for (int k = k_min - level; k <= k_max; ++k) out.push_back(std::ldexp(1.0, k));
  return out;
}

std::vector<Point> WeightFamily::centers(double size) const {
  std::vector<Point> out{Point(dimension, 0.0)};
  for (double t : shifts) {
    Point axis(dimension, 0.0);
    axis[0] = t * size;
    out.push_back(axis);
    if (dimension > 1) out.emplace_back(dimension, t * size);
  }
  return out;
}

std::size_t WeightFamily::count(int level) const { return sizes(level).size() * centers(1.0).size(); }

bool diverges(const std::vector<double>& trend) {
  for (double t : trend)
    if (!std::isfinite(t)) return true;
  if (trend.size() < 2) return false;
  for (std::size_t i = 1; i < trend.size(); ++i)
    if (!(trend[i] >= 2.0 * trend[i - 1])) return false;
  return true;
}

ClassReport ap_constant(const WeightDescriptor& v, double p, const WeightFamily& family, int levels) {
  require(p > 1.0, "A_p needs p > 1");
  require(family.dimension >= 1, "family dimension must be positive");
  const double dual = -1.0 / (p - 1.0);  // 1 - p'
  ClassReport rep;
  rep.class_id = format_p("A_p", p);
  run_levels(rep, levels, [&](int level) {
    return cube_max(family, level, [&](const Point& c, double s) {
      std::vector<double> lo, hi;
      cube_bounds(c, s, lo, hi);
      const double vol = box_volume(lo, hi);
      const double a = v.box_integral(lo, hi) / vol;
      const double b = v.pow_box_integral(dual, lo, hi) / vol;
      if (!std::isfinite(a) || !std::isfinite(b)) return kInf;
      return a * std::pow(b, p - 1.0);
    });
  });
  return rep;
}

ClassReport a1_check(const WeightDescriptor& v, const Domain& domain, int levels) {
  ClassReport rep;
  rep.class_id = "A_1";
  run_levels(rep, levels, [&](int level) {
    const Domain d = domain.refined(1 << level);
    const GridFunction vs = sample_weight(v, d);
    const GridFunction mv = fractional_maximal_field(vs, 0.0);
    ClassReport r;
    r.family_count = d.cell_count();
    r.size_min = d.cell_width();
    r.size_max = d.diameter();
    for (std::size_t i = 0; i < d.cell_count(); ++i) {
      const double ratio = vs.values[i] > 0.0 ? mv.values[i] / vs.values[i] : (mv.values[i] > 0.0 ? kInf : 1.0);
      if (ratio > r.constant) {
        r.constant = ratio;
        r.extremal_center = d.center(i);
        r.extremal_size = d.cell_width();
      }
    }
    return r;
  });
  return rep;
}

ClassReport ainf_estimate(const WeightDescriptor& v, const WeightFamily& family, std::uint64_t seed) {
  require(v.locally_integrable(family.dimension), "weight is not locally integrable, so it is not a weight");
  ClassReport rep;
  rep.class_id = "A_inf";
  rep.infinite = true;
  rep.constant = kInf;
  for (double p : {2.0, 4.0, 8.0, 16.0}) {
    const ClassReport ap = ap_constant(v, p, family);
    const double value = ap.infinite ? kInf : ap.constant;
    rep.sweep.emplace_back(p, value);
    if (!rep.witness_p && !ap.infinite) {
      rep.witness_p = p;
      rep.constant = ap.constant;
      rep.infinite = false;
      rep.trend = ap.trend;
      rep.extremal_center = ap.extremal_center;
      rep.extremal_size = ap.extremal_size;
      rep.family_count = ap.family_count;
      rep.size_min = ap.size_min;
      rep.size_max = ap.size_max;
    }
  }
  rep.subset_exponent = ainf_subset_exponent(v, family, seed);
  return rep;
}

ClassReport doubling_constant(const WeightDescriptor& v, const WeightFamily& family, int levels) {
  ClassReport rep;
  rep.class_id = "Doubling";
  run_levels(rep, levels, [&](int level) {
    return cube_max(family, level, [&](const Point& c, double s) {
      const double small = v.cube_measure(c, s);
      const double big = v.cube_measure(c, 2.0 * s);
      if (!std::isfinite(small) || !std::isfinite(big)) return kInf;
      return big / small;
    });
  });
  return rep;
}

std::vector<BallPair> nested_ball_pairs(const WeightFamily& family, int depth, int level) {
  require(depth >= 1, "nesting depth must be at least 1");
  std::vector<BallPair> out;
  for (double R : family.sizes(0)) {
    for (const auto& x : family.centers(R)) {
      for (int j = 1; j <= depth + level; ++j) {
        const double r = std::ldexp(R, -j);
        for (int side : {0, 1, -1}) {
          Point inner = x;
          inner[0] += side * (R - r);
          out.push_back({x, R, inner, r});
        }
      }
    }
  }
  return out;
}

ClassReport rd_constant(const WeightDescriptor& v, double beta, const std::vector<BallPair>& pairs) {
  require(beta > 0.0, "RD needs beta > 0");
  require(!pairs.empty(), "ball pair family is empty");
  ClassReport rep;
  rep.class_id = format_p("RD", beta);
  rep.family_count = pairs.size();
  rep.size_min = kInf;
  bool first = true;
  for (const auto& pr : pairs) {
    double off = 0.0;
    for (std::size_t a = 0; a < pr.outer_center.size(); ++a)
      off += (pr.inner_center[a] - pr.outer_center[a]) * (pr.inner_center[a] - pr.outer_center[a]);
    require(pr.inner_radius > 0.0 && std::sqrt(off) + pr.inner_radius <= pr.outer_radius * (1 + 1e-12),
            "ball pair is not nested");
    const int n = static_cast<int>(pr.outer_center.size());
    const double vin = v.ball_measure(pr.inner_center, pr.inner_radius);
    const double vout = v.ball_measure(pr.outer_center, pr.outer_radius);
    const double vol_ratio = ball_volume(n, pr.outer_radius) / ball_volume(n, pr.inner_radius);
    const double value = std::isfinite(vout) ? vin / vout * std::pow(vol_ratio, beta) : kInf;
    rep.size_min = std::min(rep.size_min, pr.inner_radius);
    rep.size_max = std::max(rep.size_max, pr.outer_radius);
    if (first || value > rep.constant) {
      rep.constant = value;
      rep.extremal_center = pr.outer_center;
      rep.extremal_size = pr.outer_radius;
      rep.extremal_inner_center = pr.inner_center;
      rep.extremal_inner_size = pr.inner_radius;
      first = false;
    }
  }
  rep.trend = {rep.constant};
  rep.infinite = !std::isfinite(rep.constant);
  return rep;
}

ClassReport rd_constant(const WeightDescriptor& v, double beta, const WeightFamily& family, int depth, int levels) {
  ClassReport rep;
  rep.class_id = format_p("RD", beta);
  run_levels(rep, levels, [&](int level) { return rd_constant(v, beta, nested_ball_pairs(family, depth, level)); });
  return rep;
}

double ainf_subset_exponent(const WeightDescriptor& v, const WeightFamily& family, std::uint64_t seed, int trials,
                            int subdivisions) {
  const int n = family.dimension;
  std::vector<std::pair<Point, double>> cubes;
  for (double s : family.sizes(0))
    for (const auto& c : family.centers(s)) cubes.emplace_back(c, s);
  std::size_t pieces = 1;
  for (int a = 0; a < n; ++a) pieces *= static_cast<std::size_t>(subdivisions);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, cubes.size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  double best = kInf;
  std::vector<double> lo(n), hi(n);
  for (int t = 0; t < trials; ++t) {
    const auto& [c, s] = cubes[pick(rng)];
    const double step = 2.0 * s / subdivisions;
    double in = 0.0, total = 0.0;
    std::size_t chosen = 0;
    for (std::size_t k = 0; k < pieces; ++k) {
      std::size_t r = k;
      for (int a = n - 1; a >= 0; --a) {
        const auto j = static_cast<double>(r % static_cast<std::size_t>(subdivisions));
        r /= static_cast<std::size_t>(subdivisions);
        lo[a] = c[a] - s + j * step;
        hi[a] = lo[a] + step;
      }
      const double m = v.box_integral(lo, hi);
      total += m;
      if (coin(rng)) {
        in += m;
        ++chosen;
      }
    }
    if (chosen == 0 || chosen == pieces) continue;
    const double frac = static_cast<double>(chosen) / static_cast<double>(pieces);
    best = std::min(best, std::log(in / total) / std::log(frac));
  }
  return best;
}

}  // namespace fracmorrey

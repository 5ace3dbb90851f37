#include "fracmorrey/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fracmorrey/error.hpp"

namespace fracmorrey {

namespace {

void check_p(double p) { require(p >= 1.0, "p must be at least 1"); }

void check_same_grid(const GridFunction& f, const GridFunction& v) {
  require(f.size() == v.size() && f.domain.dimension() == v.domain.dimension(),
          "function and weight samples live on different grids");
}

double cell_mass(double f, double v, double p) { return std::pow(std::abs(f), p) * v; }

// Radii visited around every center besides the lattice distances.
std::vector<double> policy_radii(const Domain& d, const MorreyOptions& opts) {
  std::vector<double> out{d.equal_volume_radius(), 2.0 * d.diameter()};
  if (opts.extra_radii) out.insert(out.end(), opts.extra_radii->radii().begin(), opts.extra_radii->radii().end());
  std::sort(out.begin(), out.end());
  out.erase(std::remove_if(out.begin(), out.end(), [&](double r) { return r < d.equal_volume_radius(); }), out.end());
  return out;
}

template <class Visit>
void sweep_center(const GridFunction& f, const GridFunction& v, double p, std::size_t idx, const OffsetShells& shells,
                  const std::vector<double>& radii, Visit&& visit) {
  const Domain& d = f.domain;
  const int n = d.dimension();
  const int N = d.cells_per_axis();
  const double floor = d.equal_volume_radius();
  const auto mi = d.multi_index(idx);
  std::vector<int> at(n);
  const auto& starts = shells.shell_starts();
  std::size_t g = 0;
  double cum = 0.0;
  for (std::size_t s = 0; s + 1 < starts.size(); ++s) {
    const double ds = d.cell_width() * std::sqrt(static_cast<double>(shells.sq_norm(starts[s])));
    for (; g < radii.size() && radii[g] <= ds; ++g) visit(radii[g], cum);
    if (ds >= floor) visit(ds, cum);
    for (std::size_t k = starts[s]; k < starts[s + 1]; ++k) {
      const auto off = shells.offset(k);
      bool inside = true;
      for (int a = 0; a < n; ++a) {
        at[a] = mi[a] + off[a];
        if (at[a] < 0 || at[a] >= N) {
          inside = false;
          break;
        }
      }
      if (inside) {
        const std::size_t j = d.linear_index(at);
        cum += cell_mass(f.values[j], v.values[j], p);
      }
    }
  }
  for (; g < radii.size(); ++g) visit(radii[g], cum);
}

template <class Visit>
void sweep_point(const GridFunction& f, const GridFunction& v, double p, std::span<const double> x,
                 const std::vector<double>& radii, Visit&& visit) {
  const Domain& d = f.domain;
  const int n = d.dimension();
  const double floor = d.equal_volume_radius();
  std::vector<std::pair<double, double>> dm(d.cell_count());
  std::vector<double> c(n);
  for (std::size_t i = 0; i < dm.size(); ++i) {
    d.center(i, c);
    double s = 0.0;
    for (int a = 0; a < n; ++a) s += (c[a] - x[a]) * (c[a] - x[a]);
    dm[i] = {std::sqrt(s), cell_mass(f.values[i], v.values[i], p)};
  }
  std::sort(dm.begin(), dm.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t g = 0, i = 0;
  double cum = 0.0;
  while (i < dm.size()) {
    const double dist = dm[i].first;
    for (; g < radii.size() && radii[g] <= dist; ++g) visit(radii[g], cum);
    if (dist >= floor) visit(dist, cum);
    const double tie = dist * (1.0 + 1e-12);
    while (i < dm.size() && dm[i].first <= tie) cum += dm[i++].second;
  }
  for (; g < radii.size(); ++g) visit(radii[g], cum);
}

}  // namespace

double weighted_lp_norm(const GridFunction& f, double p, const Region& region, const GridFunction& v) {
  check_same_grid(f, v);
  if (std::isinf(p) && p > 0) {
    double m = 0.0;
    for (std::size_t c : region.cells) m = std::max(m, std::abs(f.values[c]) * v.values[c]);
    return m;
  }
  check_p(p);
  double s = 0.0;
  for (std::size_t c : region.cells) s += cell_mass(f.values[c], v.values[c], p);
  return std::pow(s * f.domain.cell_volume(), 1.0 / p);
}

double weighted_lp_norm(const GridFunction& f, double p, const Region& region, const WeightDescriptor& v) {
  return weighted_lp_norm(f, p, region, sample_weight(v, f.domain));
}

double weighted_lp_norm(const GridFunction& f, double p, const GridFunction& v) {
  check_same_grid(f, v);
  Region all;
  all.cells.resize(f.size());
  std::iota(all.cells.begin(), all.cells.end(), std::size_t{0});
  return weighted_lp_norm(f, p, all, v);
}

double Rearrangement::operator()(double t) const {
  if (t < 0.0) return values.empty() ? 0.0 : values.front();
  const auto it = std::upper_bound(ends.begin(), ends.end(), t);
  return it == ends.end() ? 0.0 : values[static_cast<std::size_t>(it - ends.begin())];
}

double Rearrangement::power_integral(double p) const {
  double s = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) s += std::pow(values[j], p) * measures[j];
  return s;
}

Rearrangement rearrangement(const GridFunction& f, const GridFunction& v) {
  check_same_grid(f, v);
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.values[i] != 0.0 && v.values[i] > 0.0) order.push_back(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(f.values[a]) > std::abs(f.values[b]); });
  Rearrangement r;
  const double vol = f.domain.cell_volume();
  double cum = 0.0;
  for (std::size_t k = 0; k < order.size();) {
    const double level = std::abs(f.values[order[k]]);
    double m = 0.0;
    for (; k < order.size() && std::abs(f.values[order[k]]) == level; ++k) m += v.values[order[k]] * vol;
    cum += m;
    r.values.push_back(level);
    r.measures.push_back(m);
    r.ends.push_back(cum);
  }
  return r;
}

Rearrangement rearrangement(const GridFunction& f, const WeightDescriptor& v) {
  return rearrangement(f, sample_weight(v, f.domain));
}

double weak_lorentz_norm(const Rearrangement& r, double q) {
  require(q >= 1.0, "q must be at least 1");
  double best = 0.0;
  for (std::size_t j = 0; j < r.values.size(); ++j) best = std::max(best, std::pow(r.ends[j], 1.0 / q) * r.values[j]);
  return best;
}

double weak_lorentz_norm(const GridFunction& f, double q, const GridFunction& v) {
  return weak_lorentz_norm(rearrangement(f, v), q);
}

RadialWeight::RadialWeight(WeightDescriptor radial)
    : eval_([radial](std::span<const double>, double r) { return radial.radial(r); }), x_dependent_(false) {}

RadialWeight::RadialWeight(WeightDescriptor radial, WeightDescriptor spatial)
    : eval_([radial, spatial](std::span<const double> x, double r) { return radial.radial(r) * spatial(x); }),
      x_dependent_(!spatial.is_constant()) {}

RadialWeight::RadialWeight(Evaluator eval, bool x_dependent) : eval_(std::move(eval)), x_dependent_(x_dependent) {}

double RadialWeight::operator()(std::span<const double> x, double r) const { return eval_(x, r); }

double RadialWeight::operator()(double r) const {
  require(!x_dependent_, "omega depends on x; a center is required");
  return eval_({}, r);
}

MorreyResult generalized_weighted_morrey(const GridFunction& f, double p, const RadialWeight& omega,
                                         const GridFunction& v, const MorreyOptions& opts) {
  check_p(p);
  check_same_grid(f, v);
  const Domain& d = f.domain;
  const int n = d.dimension();
  const double vol = d.cell_volume();
  const auto radii = policy_radii(d, opts);
  const OffsetShells shells(n, d.cells_per_axis() - 1);
  std::vector<MorreyResult> per(d.cell_count());
  const auto count = static_cast<long>(d.cell_count());
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < count; ++i) {
    const Point x = d.center(static_cast<std::size_t>(i));
    MorreyResult best{0.0, x, 0.0};
    sweep_center(f, v, p, static_cast<std::size_t>(i), shells, radii, [&](double r, double cum) {
      if (cum == 0.0) return;
      const double val = omega(x, r) * std::pow(cum * vol, 1.0 / p);
      if (val > best.value) best = {val, x, r};
    });
    per[static_cast<std::size_t>(i)] = best;
  }
  MorreyResult best{0.0, d.center(0), radii.front()};
  for (const auto& m : per)
    if (m.value > best.value) best = m;
  const Point origin(n, 0.0);
  if (!d.center_index(origin)) {
    const auto c = central_morrey(f, p, omega, v, opts);
    if (c.value > best.value) best = c;
  }
  return best;
}

MorreyResult central_morrey(const GridFunction& f, double p, const RadialWeight& omega, const GridFunction& v,
                            const MorreyOptions& opts) {
  check_p(p);
  check_same_grid(f, v);
  const Domain& d = f.domain;
  const Point origin(d.dimension(), 0.0);
  const double vol = d.cell_volume();
  const auto radii = policy_radii(d, opts);
  MorreyResult best{0.0, origin, radii.front()};
  sweep_point(f, v, p, origin, radii, [&](double r, double cum) {
    if (cum == 0.0) return;
    const double val = omega(origin, r) * std::pow(cum * vol, 1.0 / p);
    if (val > best.value) best = {val, origin, r};
  });
  return best;
}

double generalized_weighted_morrey_norm(const GridFunction& f, double p, const RadialWeight& omega,
                                        const WeightDescriptor& v) {
  return generalized_weighted_morrey(f, p, omega, sample_weight(v, f.domain)).value;
}

double central_morrey_norm(const GridFunction& f, double p, const RadialWeight& omega, const WeightDescriptor& v) {
  require(!omega.x_dependent(), "the central Morrey norm needs omega depending on r only");
  return central_morrey(f, p, omega, sample_weight(v, f.domain)).value;
}

double morrey_norm(const GridFunction& f, double p, double lambda) {
  require(lambda >= 0.0, "lambda must be nonnegative");
  check_p(p);
  return generalized_weighted_morrey_norm(f, p, RadialWeight::classical(p, lambda), WeightDescriptor::constant(1.0));
}

}  // namespace fracmorrey

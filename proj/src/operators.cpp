#include "fracmorrey/operators.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <numeric>

#include "fracmorrey/error.hpp"

namespace fracmorrey {

namespace {

void check_alpha_maximal(const GridFunction& f, double alpha) {
  require(alpha >= 0.0 && alpha < f.domain.dimension(), "alpha must lie in [0, n) for the fractional maximal operator");
}

void check_alpha_riesz(const GridFunction& f, double alpha) {
  require(alpha > 0.0 && alpha < f.domain.dimension(), "alpha must lie in (0, n) for the Riesz potential");
}

// |B(r)|^{alpha/n - 1} h^n: converts a sum of cell values into the averaged
// quantity of M_alpha.
double maximal_scale(int n, double alpha, double r, double cell_volume) {
  return std::pow(ball_volume(n, r), alpha / n - 1.0) * cell_volume;
}

// Shell distances and radial grid radii arranged for the sweep around a cell
// center. radii_before[s] holds grid radii in (d_{s-1}, d_s].
struct MaximalPlan {
  OffsetShells shells;
  std::vector<double> shell_dist;
  std::vector<std::vector<double>> radii_before;
  std::vector<double> radii_after;
  double floor = 0.0;

  MaximalPlan(const Domain& d, const std::vector<double>& radii)
      : shells(d.dimension(), d.cells_per_axis() - 1), floor(d.equal_volume_radius()) {
    const auto& starts = shells.shell_starts();
    const std::size_t ns = starts.size() - 1;
    shell_dist.resize(ns);
    radii_before.resize(ns);
    for (std::size_t s = 0; s < ns; ++s)
      shell_dist[s] = d.cell_width() * std::sqrt(static_cast<double>(shells.sq_norm(starts[s])));
    for (double r : radii) {
      if (r < floor) continue;
      auto it = std::lower_bound(shell_dist.begin(), shell_dist.end(), r);
      if (it == shell_dist.end())
        radii_after.push_back(r);
      else
        radii_before[static_cast<std::size_t>(it - shell_dist.begin())].push_back(r);
    }
  }
};

double maximal_at_cell(const GridFunction& f, double alpha, std::size_t idx, const MaximalPlan& plan) {
  const Domain& d = f.domain;
  const int n = d.dimension();
  const int N = d.cells_per_axis();
  const double vol = d.cell_volume();
  const auto mi = d.multi_index(idx);
  std::vector<int> at(n);
  const auto& starts = plan.shells.shell_starts();
  double best = 0.0, cum = 0.0;
  for (std::size_t s = 0; s + 1 < starts.size(); ++s) {
    for (double r : plan.radii_before[s]) best = std::max(best, maximal_scale(n, alpha, r, vol) * cum);
    const double ds = plan.shell_dist[s];
    if (ds >= plan.floor) best = std::max(best, maximal_scale(n, alpha, ds, vol) * cum);
    for (std::size_t k = starts[s]; k < starts[s + 1]; ++k) {
      const auto off = plan.shells.offset(k);
      bool inside = true;
      for (int a = 0; a < n; ++a) {
        at[a] = mi[a] + off[a];
        if (at[a] < 0 || at[a] >= N) {
          inside = false;
          break;
        }
      }
      if (inside) cum += f.values[d.linear_index(at)];
    }
  }
  for (double r : plan.radii_after) best = std::max(best, maximal_scale(n, alpha, r, vol) * cum);
  return best;
}

// The floor radius plus any caller-supplied radii, sorted.
std::vector<double> extra_radii(const Domain& d, const std::optional<RadialGrid>& radii) {
  std::vector<double> out{d.equal_volume_radius()};
  if (radii) out.insert(out.end(), radii->radii().begin(), radii->radii().end());
  std::sort(out.begin(), out.end());
  return out;
}

double maximal_general(const GridFunction& f, double alpha, std::span<const double> x,
                       const std::vector<double>& radii) {
  const Domain& d = f.domain;
  const int n = d.dimension();
  const double vol = d.cell_volume();
  const double floor = d.equal_volume_radius();
  std::vector<std::pair<double, double>> dv(d.cell_count());
  std::vector<double> c(n);
  for (std::size_t i = 0; i < dv.size(); ++i) {
    d.center(i, c);
    double s = 0.0;
    for (int a = 0; a < n; ++a) s += (c[a] - x[a]) * (c[a] - x[a]);
    dv[i] = {std::sqrt(s), f.values[i]};
  }
  std::sort(dv.begin(), dv.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t g = 0;
  double best = 0.0, cum = 0.0;
  std::size_t i = 0;
  while (i < dv.size()) {
    const double dist = dv[i].first;
    for (; g < radii.size() && radii[g] <= dist; ++g)
      if (radii[g] >= floor) best = std::max(best, maximal_scale(n, alpha, radii[g], vol) * cum);
    if (dist >= floor) best = std::max(best, maximal_scale(n, alpha, dist, vol) * cum);
    const double tie = dist * (1.0 + 1e-12);
    while (i < dv.size() && dv[i].first <= tie) cum += dv[i++].second;
  }
  for (; g < radii.size(); ++g)
    if (radii[g] >= floor) best = std::max(best, maximal_scale(n, alpha, radii[g], vol) * cum);
  return best;
}

double riesz_self_term(const Domain& d, double alpha) {
  const int n = d.dimension();
  const double surface = n == 1 ? 2.0 : n * unit_ball_volume(n);
  return surface / alpha * std::pow(d.equal_volume_radius(), alpha);
}

// Kernel |o h|^{alpha-n} h^n indexed by offset o in [-(N-1), N-1]^n, with the
// self term at o = 0.
struct RieszKernel {
  int n, span;
  std::vector<double> k;

  RieszKernel(const Domain& d, double alpha) : n(d.dimension()), span(2 * d.cells_per_axis() - 1) {
    const int N = d.cells_per_axis();
    const double h = d.cell_width();
    std::size_t total = 1;
    for (int a = 0; a < n; ++a) total *= static_cast<std::size_t>(span);
    k.resize(total);
    std::vector<int> o(n);
    for (std::size_t i = 0; i < total; ++i) {
      std::size_t t = i;
      long sq = 0;
      for (int a = n - 1; a >= 0; --a) {
        o[a] = static_cast<int>(t % span) - (N - 1);
        t /= span;
        sq += static_cast<long>(o[a]) * o[a];
      }
      k[i] = sq == 0 ? riesz_self_term(d, alpha)
                     : std::pow(h * std::sqrt(static_cast<double>(sq)), alpha - n) * d.cell_volume();
    }
  }

  double at(std::span<const int> off, int N) const {
    std::size_t i = 0;
    for (int a = 0; a < n; ++a) i = i * span + static_cast<std::size_t>(off[a] + N - 1);
    return k[i];
  }
};

double riesz_at_cell(const GridFunction& f, std::size_t idx, const RieszKernel& kernel) {
  const Domain& d = f.domain;
  const int n = d.dimension();
  const int N = d.cells_per_axis();
  const auto mi = d.multi_index(idx);
  std::vector<int> off(n);
  double s = 0.0;
  for (std::size_t j = 0; j < d.cell_count(); ++j) {
    if (f.values[j] == 0.0) continue;
    std::size_t t = j;
    for (int a = n - 1; a >= 0; --a) {
      off[a] = static_cast<int>(t % N) - mi[a];
      t /= N;
    }
    s += f.values[j] * kernel.at(off, N);
  }
  return s;
}

std::mutex fftw_plan_mutex;

// Number of lattice offsets j >= 0 with j h < s.
int cube_reach(double s, double h) {
  int j = static_cast<int>(std::floor(s / h));
  while (j > 0 && j * h >= s) --j;
  return j;
}

bool cube_inside(const Domain& d, std::span<const int> mi, int m) {
  for (int v : mi)
    if (v - m < 0 || v + m >= d.cells_per_axis()) return false;
  return true;
}

// Values on the lattice cube of reach m about a cell.
std::vector<double> cube_values(const GridFunction& f, std::span<const int> mi, int m) {
  const Domain& d = f.domain;
  const int n = d.dimension();
  const int side = 2 * m + 1;
  std::size_t total = 1;
  for (int a = 0; a < n; ++a) total *= static_cast<std::size_t>(side);
  std::vector<double> out;
  out.reserve(total);
  std::vector<int> at(n);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t t = i;
    for (int a = n - 1; a >= 0; --a) {
      at[a] = mi[a] + static_cast<int>(t % side) - m;
      t /= side;
    }
    out.push_back(f.values[d.linear_index(at)]);
  }
  return out;
}

template <class CubeValue>
GridFunction sharp_field_impl(const GridFunction& f, const CubeFamily& family, CubeValue&& value) {
  const Domain& d = f.domain;
  const int n = d.dimension();
  require(!family.half_sides.empty(), "cube family is empty");
  std::vector<double> out(d.cell_count(), 0.0);
  std::vector<int> at(n);
  for (std::size_t c = 0; c < d.cell_count(); ++c) {
    const auto mi = d.multi_index(c);
    for (double s : family.half_sides) {
      const int m = cube_reach(s, d.cell_width());
      if (!cube_inside(d, mi, m)) continue;
      const double v = value(cube_values(f, mi, m));
      if (v == 0.0) continue;
      const int side = 2 * m + 1;
      std::size_t total = 1;
      for (int a = 0; a < n; ++a) total *= static_cast<std::size_t>(side);
      for (std::size_t i = 0; i < total; ++i) {
        std::size_t t = i;
        for (int a = n - 1; a >= 0; --a) {
          at[a] = mi[a] + static_cast<int>(t % side) - m;
          t /= side;
        }
        auto& o = out[d.linear_index(at)];
        o = std::max(o, v);
      }
    }
  }
  return GridFunction(d, std::move(out), true);
}

template <class CubeValue>
double sharp_point_impl(const GridFunction& f, std::span<const double> x, const CubeFamily& family, CubeValue&& value) {
  const Domain& d = f.domain;
  const int n = d.dimension();
  require(static_cast<int>(x.size()) == n, "point dimension mismatch");
  require(!family.half_sides.empty(), "cube family is empty");
  const double h = d.cell_width();
  const auto ci = d.center_index(x);
  double best = 0.0;
  std::vector<double> c(n);
  for (std::size_t k = 0; k < d.cell_count(); ++k) {
    const auto mk = d.multi_index(k);
    d.center(k, c);
    for (double s : family.half_sides) {
      const int m = cube_reach(s, h);
      if (!cube_inside(d, mk, m)) continue;
      bool contains = true;
      if (ci) {
        const auto mx = d.multi_index(*ci);
        for (int a = 0; a < n; ++a)
          if (std::abs(mx[a] - mk[a]) > m) contains = false;
      } else {
        for (int a = 0; a < n; ++a)
          if (!(std::abs(x[a] - c[a]) < s)) contains = false;
      }
      if (contains) best = std::max(best, value(cube_values(f, mk, m)));
    }
  }
  return best;
}

}  // namespace

CubeFamily default_cube_family(const Domain& domain, double ratio) {
  const double side = domain.box()[0].hi - domain.box()[0].lo;
  return CubeFamily{RadialGrid(domain.cell_width(), 0.5 * side, ratio).radii()};
}

double fractional_maximal(const GridFunction& f, double alpha, std::span<const double> x,
                          const std::optional<RadialGrid>& radii) {
  check_alpha_maximal(f, alpha);
  require(static_cast<int>(x.size()) == f.domain.dimension(), "point dimension mismatch");
  const auto set = extra_radii(f.domain, radii);
  if (auto idx = f.domain.center_index(x)) return maximal_at_cell(f, alpha, *idx, MaximalPlan(f.domain, set));
  return maximal_general(f, alpha, x, set);
}

GridFunction fractional_maximal_field(const GridFunction& f, double alpha, const std::optional<RadialGrid>& radii) {
  check_alpha_maximal(f, alpha);
  const MaximalPlan plan(f.domain, extra_radii(f.domain, radii));
  std::vector<double> out(f.size());
  const auto count = static_cast<long>(f.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < count; ++i) out[i] = maximal_at_cell(f, alpha, static_cast<std::size_t>(i), plan);
  return GridFunction(f.domain, std::move(out), true);
}

double riesz_potential(const GridFunction& f, double alpha, std::span<const double> x) {
  check_alpha_riesz(f, alpha);
  const Domain& d = f.domain;
  const int n = d.dimension();
  require(static_cast<int>(x.size()) == n, "point dimension mismatch");
  if (auto idx = d.center_index(x)) return riesz_at_cell(f, *idx, RieszKernel(d, alpha));
  const auto own = d.locate(x);
  std::vector<double> c(n);
  double s = 0.0;
  for (std::size_t j = 0; j < d.cell_count(); ++j) {
    if (f.values[j] == 0.0) continue;
    if (own && j == *own) {
      s += f.values[j] * riesz_self_term(d, alpha);
      continue;
    }
    d.center(j, c);
    double q = 0.0;
    for (int a = 0; a < n; ++a) q += (c[a] - x[a]) * (c[a] - x[a]);
    s += f.values[j] * std::pow(std::sqrt(q), alpha - n) * d.cell_volume();
  }
  return s;
}

GridFunction riesz_potential_direct(const GridFunction& f, double alpha) {
  check_alpha_riesz(f, alpha);
  const RieszKernel kernel(f.domain, alpha);
  std::vector<double> out(f.size());
  const auto count = static_cast<long>(f.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < count; ++i) out[i] = riesz_at_cell(f, static_cast<std::size_t>(i), kernel);
  return GridFunction(f.domain, std::move(out), f.nonnegative);
}

GridFunction riesz_potential_fft(const GridFunction& f, double alpha) {
  check_alpha_riesz(f, alpha);
  const Domain& d = f.domain;
  const int n = d.dimension();
  const int N = d.cells_per_axis();
  const int M = 2 * N;
  std::vector<int> dims(n, M);
  std::size_t total = 1;
  for (int a = 0; a < n; ++a) total *= static_cast<std::size_t>(M);
  const std::size_t ctotal = total / M * (M / 2 + 1);

  const RieszKernel kernel(d, alpha);
  std::vector<double> fk(total, 0.0), kk(total, 0.0);
  std::vector<int> mi(n), off(n);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t t = i;
    bool in_f = true, in_k = true;
    for (int a = n - 1; a >= 0; --a) {
      const int j = static_cast<int>(t % M);
      t /= M;
      mi[a] = j;
      if (j >= N) in_f = false;
      off[a] = j < N ? j : j - M;
      if (j == N) in_k = false;
    }
    if (in_f) fk[i] = f.values[d.linear_index(mi)];
    if (in_k) kk[i] = kernel.at(off, N);
  }

  auto* fc = fftw_alloc_complex(ctotal);
  auto* kc = fftw_alloc_complex(ctotal);
  fftw_plan pf, pk, pb;
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    pf = fftw_plan_dft_r2c(n, dims.data(), fk.data(), fc, FFTW_ESTIMATE);
    pk = fftw_plan_dft_r2c(n, dims.data(), kk.data(), kc, FFTW_ESTIMATE);
    pb = fftw_plan_dft_c2r(n, dims.data(), fc, fk.data(), FFTW_ESTIMATE);
  }
  fftw_execute(pf);
  fftw_execute(pk);
  const double scale = 1.0 / static_cast<double>(total);
  for (std::size_t i = 0; i < ctotal; ++i) {
    const std::complex<double> a(fc[i][0], fc[i][1]), b(kc[i][0], kc[i][1]);
    const auto p = a * b * scale;
    fc[i][0] = p.real();
    fc[i][1] = p.imag();
  }
  fftw_execute(pb);
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    fftw_destroy_plan(pf);
    fftw_destroy_plan(pk);
    fftw_destroy_plan(pb);
  }
  fftw_free(fc);
  fftw_free(kc);

  std::vector<double> out(d.cell_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto m = d.multi_index(i);
    std::size_t p = 0;
    for (int a = 0; a < n; ++a) p = p * M + static_cast<std::size_t>(m[a]);
    out[i] = fk[p];
    if (f.nonnegative && out[i] < 0.0) out[i] = 0.0;
  }
  return GridFunction(d, std::move(out), f.nonnegative);
}

double tail_integral(const GridFunction& f, const Region& q, double alpha) {
  const Domain& d = f.domain;
  const int n = d.dimension();
  require(alpha > 0.0 && alpha < n, "alpha must lie in (0, n)");
  std::vector<char> in_q(d.cell_count(), 0);
  for (std::size_t c : q.cells) in_q[c] = 1;
  std::vector<double> y(n);
  double s = 0.0;
  for (std::size_t j = 0; j < d.cell_count(); ++j) {
    if (in_q[j] || f.values[j] == 0.0) continue;
    d.center(j, y);
    double r2 = 0.0;
    for (int a = 0; a < n; ++a) r2 += (y[a] - q.center[a]) * (y[a] - q.center[a]);
    if (r2 == 0.0) continue;
    s += f.values[j] * std::pow(std::sqrt(r2), alpha - n);
  }
  return s * d.cell_volume();
}

double mean_deviation_from_median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double med = values[(values.size() - 1) / 2];
  double s = 0.0;
  for (double v : values) s += std::abs(v - med);
  return s / static_cast<double>(values.size());
}

double local_oscillation(std::vector<double> values, double lambda) {
  require(lambda > 0.0 && lambda <= 1.0, "lambda must lie in (0, 1]");
  const auto count = static_cast<double>(values.size());
  const auto k = static_cast<long>(std::ceil((1.0 - lambda) * count - 1e-9));
  if (k <= 0) return 0.0;
  std::sort(values.begin(), values.end());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + static_cast<std::size_t>(k) <= values.size(); ++i)
    best = std::min(best, values[i + k - 1] - values[i]);
  return 0.5 * best;
}

double sharp_maximal(const GridFunction& f, std::span<const double> x, const CubeFamily& family) {
  return sharp_point_impl(f, x, family, [](std::vector<double> v) { return mean_deviation_from_median(std::move(v)); });
}

double local_sharp_maximal(const GridFunction& f, double lambda, std::span<const double> x, const CubeFamily& family) {
  require(lambda > 0.0 && lambda <= 1.0, "lambda must lie in (0, 1]");
  return sharp_point_impl(f, x, family, [lambda](std::vector<double> v) { return local_oscillation(std::move(v), lambda); });
}

GridFunction sharp_maximal_field(const GridFunction& f, const CubeFamily& family) {
  return sharp_field_impl(f, family, [](std::vector<double> v) { return mean_deviation_from_median(std::move(v)); });
}

GridFunction local_sharp_maximal_field(const GridFunction& f, double lambda, const CubeFamily& family) {
  require(lambda > 0.0 && lambda <= 1.0, "lambda must lie in (0, 1]");
  return sharp_field_impl(f, family, [lambda](std::vector<double> v) { return local_oscillation(std::move(v), lambda); });
}

GridFunction field(Operator op, const GridFunction& f, const OperatorParams& params) {
  switch (op) {
    case Operator::FractionalMaximal:
      return fractional_maximal_field(f, params.alpha, params.radii);
    case Operator::RieszPotential:
      return riesz_potential_direct(f, params.alpha);
    case Operator::SharpMaximal:
      return sharp_maximal_field(f, params.cubes ? *params.cubes : default_cube_family(f.domain));
    case Operator::LocalSharpMaximal:
      return local_sharp_maximal_field(f, params.lambda, params.cubes ? *params.cubes : default_cube_family(f.domain));
  }
  throw ValidationError("unknown operator");
}

}  // namespace fracmorrey

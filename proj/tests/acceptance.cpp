// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fracmorrey/conditions.hpp"
#include "fracmorrey/harness.hpp"
#include "fracmorrey/norms.hpp"
#include "fracmorrey/operators.hpp"
#include "fracmorrey/weights.hpp"

using namespace fracmorrey;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds, 0 for none
  std::function<Outcome()> run;
};

std::string fmtd(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

void expect(Outcome& o, bool ok, const std::string& what) {
  if (!ok) o.pass = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += (ok ? "" : "FAILED ") + what;
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

Domain line(double h, int n) { return Domain({{-h, h}}, n); }

GridFunction unit_indicator(const Domain& d) {
  return sample(FunctionDescriptor::indicator({RegionKind::Ball, {0.0}, 1.0}), d);
}

Outcome closed_forms() {
  Outcome o;
  const Domain d = line(4, 1024);
  const GridFunction f = unit_indicator(d);
  const double m0 = fractional_maximal(f, 0.5, std::vector<double>{0.0});
  const double i0 = riesz_potential(f, 0.5, std::vector<double>{0.0});
  const double i2 = riesz_potential(f, 0.5, std::vector<double>{2.0});
  expect(o, rel_close(m0, std::sqrt(2.0), 0.02), "M(0)=" + fmtd("%.6f", m0));
  expect(o, rel_close(i0, 4.0, 0.02), "I(0)=" + fmtd("%.6f", i0));
  expect(o, rel_close(i2, 2 * (std::sqrt(3.0) - 1), 0.02), "I(2)=" + fmtd("%.6f", i2));
  return o;
}

Outcome domination() {
  Outcome o;
  for (const auto& [n, eps] : std::vector<std::pair<int, double>>{{1024, 0.05}, {2048, 0.025}}) {
    const Domain d = line(4, n);
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const GridFunction f = sample(FunctionDescriptor::step(seed, 16, {RegionKind::Cube, {0.0}, 2.0}), d);
      for (double a : {0.25, 0.5, 0.75}) {
        const GridFunction m = fractional_maximal_field(f, a);
        const GridFunction i = riesz_potential_fft(f, a);
        const double c = std::pow(2.0, a - 1);
        for (std::size_t k = 0; k < d.cell_count(); ++k)
          if (i[k] > 0) worst = std::max(worst, m[k] / (c * i[k]));
      }
    }
    expect(o, worst <= 1 + eps, "N=" + std::to_string(n) + " max M/(c I)=" + fmtd("%.6f", worst));
  }
  return o;
}

Outcome theorem51() {
  Outcome o;
  const auto u0 = RadialFunction::power(-1.0);
  const auto u = RadialFunction::power(0.5);
  const auto v1 = RadialFunction::constant(1.0);
  const auto v2 = RadialFunction::power(-1.0);
  const auto I = theorem51_I(u0, u, u, v1, v2);
  expect(o, !I.infinite && rel_close(I.value, 2.0, 0.03), "I=" + fmtd("%.5f", I.value));
  double prev = 0.0;
  bool monotone = true;
  double O4 = 0.0;
  for (int k = 1; k <= 6; ++k) {
    OracleOptions opt;
    opt.shells = k;
    const double v = best_constant_oracle(u0, u, u, v1, v2, opt).value;
    monotone = monotone && v >= prev;
    prev = v;
    if (k == 4) O4 = v;
  }
  expect(o, O4 <= I.value, "O(k=4)=" + fmtd("%.5f", O4));
  expect(o, I.value / O4 <= 4.0, "I/O=" + fmtd("%.4f", I.value / O4));
  expect(o, monotone, "O nondecreasing in k=1..6");
  return o;
}

Outcome cor52() {
  Outcome o;
  const double beta = 1.0;
  const auto a = cor52_condition(RadialFunction::power(0.5), beta);
  expect(o, !a.infinite && rel_close(a.value, 2.0, 0.03), "r^(1/2): " + fmtd("%.6f", a.value));
  const auto b = cor52_condition(RadialFunction::power(0.75), 0.75);
  expect(o, !b.infinite && rel_close(b.value, 1 / 0.75, 0.03), "r^beta: " + fmtd("%.6f", b.value));
  expect(o, cor52_condition(RadialFunction::constant(1.0), beta).infinite, "u=1 infinite");
  const auto g = gm_condition(RadialFunction::power(-0.25), 1, 2.0, 0.25);
  expect(o, !g.infinite && rel_close(g.value, 4.0, 0.03), "gm=" + fmtd("%.6f", g.value));
  expect(o, gm_condition(RadialFunction::power(0.5), 1, 2.0, 0.25).infinite, "divergent gm infinite");
  return o;
}

Outcome running_sups() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> dist(0.01, 10.0);
  int bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 64);
    std::vector<double> F(n), G(n);
    for (auto& g : G) g = dist(rng);
    for (auto& f : F) f = dist(rng);
    std::sort(F.begin(), F.end(), std::greater<>());
    auto check = [&](SupDirection dir) {
      const auto s = running_sup(std::span<const double>(G), dir);
      double lhs = 0, rhs = 0;
      for (int k = 0; k < n; ++k) {
        lhs = std::max(lhs, F[k] * G[k]);
        rhs = std::max(rhs, F[k] * s[k]);
      }
      if (lhs != rhs) ++bad;
    };
    check(SupDirection::FromBelow);
    std::reverse(F.begin(), F.end());
    check(SupDirection::FromAbove);
  }
  expect(o, bad == 0, std::to_string(2000 - bad) + "/2000 bitwise equal");
  return o;
}

GridFunction random_function(std::mt19937_64& rng, const Domain& d) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(d.cell_count());
  for (auto& x : v) x = u(rng) < 0.3 ? 0.0 : std::floor(u(rng) * 8) / 4;
  return GridFunction(d, std::move(v), true);
}

Outcome hardy_littlewood() {
  Outcome o;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Domain d = line(4, 256);
  const std::vector<WeightDescriptor> weights{WeightDescriptor::constant(1.0), WeightDescriptor::power(0.5),
                                              WeightDescriptor::power(-0.5), WeightDescriptor::power(1.5)};
  int held = 0;
  double tightest = kInfinity;
  for (int t = 0; t < 100; ++t) {
    const GridFunction f = random_function(rng, d);
    const GridFunction vs = sample_weight(weights[t % weights.size()], d);
    const double p = 1 + 3 * u(rng);
    const double q = p * (1.1 + 3 * u(rng));
    const Shape b{RegionKind::Ball, {-3 + 6 * u(rng)}, 0.1 + 2 * u(rng)};
    const Region reg = region_cells(d, b.kind, b.center_point(1), b.radius);
    GridFunction fb = GridFunction::zeros(d);
    for (std::size_t k : reg.cells) fb.values[k] = f[k];
    const double lhs = weighted_lp_norm(f, p, reg, vs);
    const double vb = weight_measure(vs, reg);
    const double rhs = std::pow(1 - p / q, -1 / p) * weak_lorentz_norm(fb, q, vs) * std::pow(vb, 1 / p - 1 / q);
    if (lhs <= rhs) ++held;
    if (lhs > 0) tightest = std::min(tightest, rhs / lhs);
  }
  expect(o, held == 100, std::to_string(held) + "/100 hold, min rhs/lhs=" + fmtd("%.4f", tightest));
  return o;
}

Outcome weight_classes() {
  Outcome o;
  const WeightFamily fam;
  const auto one = WeightDescriptor::constant(1.0);
  for (double p : {1.5, 2.0, 4.0}) {
    const double c = ap_constant(one, p, fam).constant;
    expect(o, c == 1.0, "A_" + fmtd("%g", p) + "(1)=" + fmtd("%.17g", c));
  }
  const auto half = ap_constant(WeightDescriptor::power(0.5), 2.0, fam);
  double growth = 1.0;
  for (std::size_t i = 1; i < half.trend.size(); ++i) growth = std::max(growth, half.trend[i] / half.trend[i - 1]);
  expect(o, !half.infinite && std::isfinite(half.constant) && growth < 2.0,
         "A_2(|x|^1/2)=" + fmtd("%.5f", half.constant) + " growth " + fmtd("%.4f", growth));
  expect(o, ap_constant(WeightDescriptor::power(-2.0), 2.0, fam).infinite, "A_2(|x|^-2) infinite");
  const double dbl = doubling_constant(one, fam).constant;
  expect(o, dbl == 2.0, "doubling(1)=" + fmtd("%.17g", dbl));
  const double rd = rd_constant(one, 1.0, fam).constant;
  expect(o, rd == 1.0, "RD_1(1)=" + fmtd("%.17g", rd));
  return o;
}

Outcome two_sided() {
  Outcome o;
  const std::vector<std::pair<std::string, WeightDescriptor>> weights{
      {"v=1", WeightDescriptor::constant(1.0)}, {"v=|x|^1/2", WeightDescriptor::power(0.5)}};
  for (const auto& [tag, w] : weights) {
    ExperimentSpec s = default_experiment("thm41");
    s.weight = w;
    s.cells = 512;
    s.levels = 2;
    const auto r = verify_thm41(s);
    expect(o, s.functions.size() == 10 && s.regions.size() == 20, std::to_string(r.instances.size()) + " instances");
    expect(o, r.stats.spread <= 25.0, tag + " spread " + fmtd("%.3f", r.stats.spread));
    expect(o, r.drift < 0.10, tag + " drift " + fmtd("%.4f", r.drift));
    for (const auto& c : r.checks)
      if (c.name == "tail_term") expect(o, c.holds, tag + " lhs/tail min " + fmtd("%.4f", c.worst));
    expect(o, r.pass, tag + " report pass");
  }
  return o;
}

Outcome rearrangements() {
  Outcome o;
  const Domain d = line(2, 128);
  const GridFunction vs = sample_weight(WeightDescriptor::power(0.5), d);
  const GridFunction ind = unit_indicator(d);
  const Region b = region_cells(d, RegionKind::Ball, {0.0}, 1.0);
  const double vb = weight_measure(vs, b);
  const auto r = rearrangement(ind, vs);
  const bool ind_ok = r.values.size() == 1 && r.values[0] == 1.0 && r(0.0) == 1.0 && r(vb * 1.0001) == 0.0 &&
                      rel_close(r.support(), vb, 1e-14) &&
                      rel_close(weak_lorentz_norm(r, 3.0), std::pow(vb, 1 / 3.0), 1e-14);
  expect(o, ind_ok, "indicator identities");

  std::mt19937_64 rng(99);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const GridFunction f = random_function(rng, d);
    const auto rf = rearrangement(f, vs);
    for (double p : {1.0, 2.0, 3.0}) {
      const double direct = std::pow(weighted_lp_norm(f, p, vs), p);
      const double from_r = rf.power_integral(p);
      worst = std::max(worst, std::abs(direct - from_r) / std::max(direct, 1e-300));
    }
  }
  expect(o, worst <= 1e-12, "equimeasurability max rel diff " + fmtd("%.2e", worst));
  return o;
}

Outcome fft_vs_direct() {
  Outcome o;
  double worst = 0.0;
  auto compare = [&](const Domain& d, std::uint64_t seed, double a) {
    const GridFunction f = sample(FunctionDescriptor::step(seed, 8, {RegionKind::Cube, {0.0}, 1.0}), d);
    const auto x = riesz_potential_direct(f, a), y = riesz_potential_fft(f, a);
    double diff = 0, top = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      diff = std::max(diff, std::abs(x[k] - y[k]));
      top = std::max(top, std::abs(x[k]));
    }
    worst = std::max(worst, diff / top);
  };
  for (int n : {16, 64, 128, 256})
    for (double a : {0.25, 0.5, 0.75}) compare(line(2, n), static_cast<std::uint64_t>(n), a);
  for (int n : {16, 32, 64})
    for (double a : {0.5, 1.0, 1.5}) compare(Domain({{-2, 2}, {-2, 2}}, n), static_cast<std::uint64_t>(n), a);
  expect(o, worst <= 1e-10, "max rel diff " + fmtd("%.2e", worst));
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "operator closed forms", 5, closed_forms},
      {2, "pointwise domination M <= 2^(a-1) I", 60, domination},
      {3, "power case and shell oracle", 120, theorem51},
      {4, "radial condition closed forms", 0, cor52},
      {5, "running sup identities", 0, running_sups},
      {6, "Hardy-Littlewood chain", 0, hardy_littlewood},
      {7, "weight classes", 0, weight_classes},
      {8, "two-sided local estimate", 0, two_sided},
      {9, "rearrangement and weak Lorentz", 0, rearrangements},
      {10, "Riesz FFT vs direct sum", 0, fft_vs_direct},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0) expect(o, secs < c.time_limit, "time " + fmtd("%.2fs", secs) + " < " + fmtd("%gs", c.time_limit));
    if (!o.pass) ++failed;
    std::printf("%s  %2d  %-38s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

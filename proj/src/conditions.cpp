#include "fracmorrey/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracmorrey/error.hpp"
#include "fracmorrey/quadrature.hpp"

namespace fracmorrey {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double eval_sum(const std::vector<PowerTerm>& terms, double r) {
  double s = 0.0;
  for (const auto& t : terms) s += t.coef * (t.exponent == 0.0 ? 1.0 : std::pow(r, t.exponent));
  return s;
}

double log_term(const PowerTerm& t, double log_r) { return std::log(t.coef) + t.exponent * log_r; }

ConditionReport infinite_report(std::string id, std::string note) {
  ConditionReport rep;
  rep.condition_id = std::move(id);
  rep.value = kInf;
  rep.infinite = true;
  rep.note = std::move(note);
  return rep;
}

void check_samples(const std::vector<double>& u, const char* what) {
  bool any = false;
  for (double x : u) {
    if (!(x >= 0.0) || std::isinf(x)) throw ValidationError(std::string(what) + " must be finite and nonnegative");
    any = any || x > 0.0;
  }
  if (!any) throw ValidationError(std::string(what) + " vanishes identically");
}

// The Cor 5.2 functional on sampled u with power-law tails matched at the
// grid ends.
ConditionReport cor52_core(const std::vector<double>& r, const std::vector<double>& u, double e0, double einf,
                           double beta, bool exact) {
  require(beta > 0.0, "beta must be positive");
  check_samples(u, "u");
  const std::string id = "cor52";
  if (e0 < 0.0) return infinite_report(id, "u is unbounded near 0, so psi is infinite");
  if (einf - beta > 0.0) return infinite_report(id, "u grows faster than r^beta, so psi is infinite");

  const std::size_t K = r.size() - 1;
  std::vector<double> V(r.size()), psi(r.size()), J(r.size()), F(r.size());
  double run = u[0];
  for (std::size_t k = 0; k <= K; ++k) V[k] = run = std::max(run, u[k]);

  PowerEnvelope tail;
  tail.terms.push_back({V[K], -beta});
  if (einf > 0.0) tail.terms.push_back({u[K] * std::pow(r[K], -einf), einf - beta});
  for (std::size_t k = K + 1; k-- > 0;) {
    const double phi = V[k] * std::pow(r[k], -beta);
    psi[k] = k == K ? std::max(phi, tail(r[K])) : std::max(phi, psi[k + 1]);
  }

  J[K] = tail.inverse_integral(-beta - 1.0, r[K], kInf);
  if (!std::isfinite(J[K])) return infinite_report(id, "the tail integral of 1/psi diverges");
  for (std::size_t k = K; k-- > 0;) {
    const double g0 = std::pow(r[k], -beta) / psi[k];
    const double g1 = std::pow(r[k + 1], -beta) / psi[k + 1];
    J[k] = J[k + 1] + 0.5 * (g0 + g1) * std::log(r[k + 1] / r[k]);
  }

  ConditionReport rep;
  rep.condition_id = id;
  rep.truncated = !exact;
  rep.value = -1.0;
  auto consider = [&](double value, double at) {
    if (value > rep.value) {
      rep.value = value;
      rep.argmax_r = at;
    }
  };
  for (std::size_t k = 0; k <= K; ++k) {
    F[k] = std::pow(r[k], beta) * psi[k] * J[k];
    rep.profile.emplace_back(r[k], F[k]);
    consider(F[k], r[k]);
  }

  // below the grid: V = P t^{e0}, psi = max(P t^{e0 - beta}, psi_0)
  if (e0 < beta) {
    const double P = u[0] * std::pow(r[0], -e0);
    const double rstar = std::pow(psi[0] / P, 1.0 / (e0 - beta));
    if (rstar < r[0]) {
      const double Jstar = J[0] + (std::pow(rstar, -beta) - std::pow(r[0], -beta)) / (beta * psi[0]);
      consider(std::pow(rstar, beta) * psi[0] * Jstar, rstar);
    }
    consider(e0 > 0.0 ? 1.0 / e0 : kInf, 0.0);
  } else {
    consider(1.0 / beta, 0.0);
  }

  // above the grid: F is monotone on each piece of the envelope
  const auto pieces = tail.pieces(r[K], kInf);
  std::vector<double> Jlo(pieces.size());
  double acc = 0.0;
  for (std::size_t i = pieces.size(); i-- > 0;) {
    const auto& pc = pieces[i];
    acc += quad::power_integral(1.0 / pc.term.coef, -beta - 1.0 - pc.term.exponent, pc.lo, pc.hi);
    Jlo[i] = acc;
  }
  for (std::size_t i = 1; i < pieces.size(); ++i)
    consider(std::pow(pieces[i].lo, beta) * tail(pieces[i].lo) * Jlo[i], pieces[i].lo);
  consider(1.0 / (beta + pieces.back().term.exponent), kInf);

  rep.infinite = !std::isfinite(rep.value);
  if (rep.infinite) rep.note = "u is bounded below near 0, so the integral diverges at small r";
  return rep;
}

struct U1Profile {
  std::vector<double> values;
  PowerEnvelope tail;
  bool infinite = false;
  std::string note;
};

U1Profile u1_profile(const RadialFunction& u0, const RadialFunction& u1, const std::vector<double>& r) {
  U1Profile out;
  if (u1.lower_exponent() < 0.0 && !u1.is_zero()) {
    out.infinite = true;
    out.note = "u1 is unbounded near 0";
    return out;
  }
  const std::size_t K = r.size() - 1;
  std::vector<double> V(r.size());
  double run = u1(r[0]);
  for (std::size_t k = 0; k <= K; ++k) V[k] = run = std::max(run, u1(r[k]));
  const double e0 = u0.upper_exponent();
  const double e1 = u1.upper_exponent();
  const double c0 = u0(r[K]) * std::pow(r[K], -e0);
  out.tail.terms.push_back({c0 * V[K], e0});
  if (e1 > 0.0) out.tail.terms.push_back({c0 * u1(r[K]) * std::pow(r[K], -e1), e0 + e1});
  for (const auto& t : out.tail.terms) {
    if (t.exponent > 0.0 && t.coef > 0.0) {
      out.infinite = true;
      out.note = "u0 sup u1 grows at infinity";
      return out;
    }
  }
  out.values.resize(r.size());
  for (std::size_t k = K + 1; k-- > 0;) {
    const double phi = u0(r[k]) * V[k];
    out.values[k] = k == K ? std::max(phi, out.tail(r[K])) : std::max(phi, out.values[k + 1]);
  }
  return out;
}

ConditionReport theorem51_core(const RadialFunction& u0, const RadialFunction& u1, const RadialFunction& u2,
                               const RadialFunction& v1, const RadialFunction& v2, const RadialGrid& grid) {
  const std::string id = "thm51_I";
  const auto& r = grid.radii();
  const std::size_t K = r.size() - 1;
  const U1Profile U1 = u1_profile(u0, u1, r);
  if (U1.infinite) return infinite_report(id, "U1 is infinite: " + U1.note);
  for (double x : U1.values)
    if (!(x > 0.0)) throw ValidationError("U1 vanishes on the grid");

  ConditionReport rep;
  rep.condition_id = id;
  rep.truncated = !(u0.exact_tails() && u1.exact_tails() && u2.exact_tails() && v1.exact_tails() &&
                    v2.exact_tails());
  if (u2.is_zero() || v2.is_zero()) {
    for (double x : r) rep.profile.emplace_back(x, 0.0);
    rep.argmax_r = r[0];
    return rep;
  }
  if (u2.lower_exponent() < 0.0) return infinite_report(id, "u2 is unbounded near 0, so U2 is infinite");

  auto ratio = [&](double x) { return v2(x) / v1(x); };
  const double eq = v2.upper_exponent() - v1.upper_exponent();
  if (eq > 0.0) return infinite_report(id, "v2/v1 grows at infinity, so the esssup is infinite");
  const double cq = ratio(r[K]) * std::pow(r[K], -eq);

  std::vector<double> U2(r.size()), h(r.size()), W(r.size());
  double run = u2(r[0]);
  for (std::size_t k = 0; k <= K; ++k) U2[k] = run = std::max(run, u2(r[k]));
  for (std::size_t k = K + 1; k-- > 0;) h[k] = k == K ? ratio(r[K]) : std::max(ratio(r[k]), h[k + 1]);
  for (std::size_t k = 0; k <= K; ++k) W[k] = 1.0 / U1.values[k];

  // tail of the Stieltjes integral: W = 1/(c t^e) on each envelope piece
  double S = 0.0;
  for (const auto& pc : U1.tail.pieces(r[K], kInf)) {
    const double e = pc.term.exponent;
    if (e == 0.0) continue;
    S += quad::power_integral(cq * (-e) / pc.term.coef, eq - e - 1.0, pc.lo, pc.hi);
  }
  if (!std::isfinite(S)) return infinite_report(id, "the Stieltjes integral diverges at infinity");

  rep.value = -1.0;
  std::vector<double> I(r.size());
  for (std::size_t k = K + 1; k-- > 0;) {
    if (k < K) S += h[k] * (W[k + 1] - W[k]);
    I[k] = U2[k] == 0.0 ? 0.0 : U2[k] * (W[k] * h[k] + S);
  }
  for (std::size_t k = 0; k <= K; ++k) {
    rep.profile.emplace_back(r[k], I[k]);
    if (I[k] > rep.value) {
      rep.value = I[k];
      rep.argmax_r = r[k];
    }
  }
  rep.infinite = !std::isfinite(rep.value);
  return rep;
}

void enumerate_compositions(int parts, int total, std::vector<int>& cur, int idx,
                            const std::function<void(const std::vector<int>&)>& visit) {
  if (idx == parts - 1) {
    cur[idx] = total;
    visit(cur);
    return;
  }
  for (int c = 0; c <= total; ++c) {
    cur[idx] = c;
    enumerate_compositions(parts, total - c, cur, idx + 1, visit);
  }
}

}  // namespace

// ---------------------------------------------------------------- RadialFunction

RadialFunction RadialFunction::power(double exponent, double coef) {
  require(coef >= 0.0 && std::isfinite(coef) && std::isfinite(exponent), "power needs a finite nonnegative coefficient");
  RadialFunction f;
  f.scale_ = coef;
  f.factors_.push_back({{{1.0, exponent}}, 1.0});
  return f;
}

RadialFunction RadialFunction::constant(double c) { return power(0.0, c); }

RadialFunction RadialFunction::power_sum(std::vector<PowerTerm> terms, double k) {
  require(!terms.empty(), "power sum needs at least one term");
  for (const auto& t : terms)
    require(t.coef > 0.0 && std::isfinite(t.coef) && std::isfinite(t.exponent), "power sum coefficients must be positive");
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.exponent < b.exponent; });
  RadialFunction f;
  f.factors_.push_back({std::move(terms), k});
  return f;
}

RadialFunction RadialFunction::from_weight(const WeightDescriptor& v, double k) { return power_sum(v.terms(), k); }

RadialFunction RadialFunction::ball_measure_at_origin(const WeightDescriptor& v, int n, double k) {
  require(n >= 1, "dimension must be positive");
  require(v.locally_integrable(n), "weight is not locally integrable");
  const double surface = n * unit_ball_volume(n);
  std::vector<PowerTerm> terms;
  for (const auto& t : v.terms()) terms.push_back({t.coef * surface / (n + t.exponent), n + t.exponent});
  return power_sum(std::move(terms), k);
}

RadialFunction RadialFunction::callable(Fn f, double lower_exponent, double upper_exponent) {
  require(static_cast<bool>(f), "callable radial function is empty");
  RadialFunction out;
  out.calls_.push_back({std::move(f), lower_exponent, upper_exponent});
  return out;
}

RadialFunction RadialFunction::operator*(const RadialFunction& o) const {
  RadialFunction out = *this;
  out.scale_ *= o.scale_;
  out.factors_.insert(out.factors_.end(), o.factors_.begin(), o.factors_.end());
  out.calls_.insert(out.calls_.end(), o.calls_.begin(), o.calls_.end());
  return out;
}

RadialFunction RadialFunction::scaled(double c) const {
  require(c >= 0.0 && std::isfinite(c), "scale must be finite and nonnegative");
  RadialFunction out = *this;
  out.scale_ *= c;
  return out;
}

double RadialFunction::operator()(double r) const {
  double v = scale_;
  if (v == 0.0) return 0.0;
  for (const auto& f : factors_) {
    const double s = eval_sum(f.terms, r);
    v *= f.k == 1.0 ? s : std::pow(s, f.k);
  }
  for (const auto& c : calls_) v *= c.f(r);
  return v;
}

double RadialFunction::lower_exponent() const {
  double e = 0.0;
  for (const auto& f : factors_) e += f.k * f.terms.front().exponent;
  for (const auto& c : calls_) e += c.lower;
  return e;
}

double RadialFunction::upper_exponent() const {
  double e = 0.0;
  for (const auto& f : factors_) e += f.k * f.terms.back().exponent;
  for (const auto& c : calls_) e += c.upper;
  return e;
}

bool RadialFunction::exact_tails() const { return as_power().has_value(); }

std::optional<PowerTerm> RadialFunction::as_power() const {
  if (!calls_.empty()) return std::nullopt;
  PowerTerm out{scale_, 0.0};
  for (const auto& f : factors_) {
    if (f.terms.size() != 1) return std::nullopt;
    out.coef *= std::pow(f.terms[0].coef, f.k);
    out.exponent += f.k * f.terms[0].exponent;
  }
  return out;
}

// ---------------------------------------------------------------- PowerEnvelope

double PowerEnvelope::operator()(double t) const {
  double v = 0.0;
  for (const auto& p : terms) v = std::max(v, p.coef * std::pow(t, p.exponent));
  return v;
}

std::vector<PowerEnvelope::Piece> PowerEnvelope::pieces(double lo, double hi) const {
  std::vector<PowerTerm> live;
  for (const auto& p : terms)
    if (p.coef > 0.0) live.push_back(p);
  require(!live.empty(), "envelope has no positive term");
  std::vector<Piece> out;
  double t = lo;
  while (t < hi) {
    const double lt = std::log(t);
    std::size_t best = 0;
    for (std::size_t i = 1; i < live.size(); ++i) {
      const double a = log_term(live[i], lt), b = log_term(live[best], lt);
      const double tol = 1e-12 * std::max(1.0, std::abs(b));
      if (a > b + tol || (a >= b - tol && live[i].exponent > live[best].exponent)) best = i;
    }
    double next = hi;
    for (const auto& p : live) {
      if (p.exponent <= live[best].exponent) continue;
      const double x = std::exp((std::log(live[best].coef) - std::log(p.coef)) / (p.exponent - live[best].exponent));
      if (x > t * (1.0 + 1e-14) && x < next) next = x;
    }
    out.push_back({t, next, live[best]});
    t = next;
  }
  return out;
}

double PowerEnvelope::inverse_integral(double q, double lo, double hi) const {
  double s = 0.0;
  for (const auto& pc : pieces(lo, hi)) s += quad::power_integral(1.0 / pc.term.coef, q - pc.term.exponent, pc.lo, pc.hi);
  return s;
}

// ---------------------------------------------------------------- sampled profiles

SampledRadial sample_radial(const RadialFunction& f, const RadialGrid& grid) {
  SampledRadial s;
  s.r = grid.radii();
  s.values.reserve(s.r.size());
  for (double x : s.r) s.values.push_back(f(x));
  return s;
}

std::vector<double> running_sup(std::span<const double> g, SupDirection dir) {
  std::vector<double> out(g.size());
  if (g.empty()) return out;
  if (dir == SupDirection::FromBelow) {
    double run = g[0];
    for (std::size_t k = 0; k < g.size(); ++k) out[k] = run = std::max(run, g[k]);
  } else {
    double run = g[g.size() - 1];
    for (std::size_t k = g.size(); k-- > 0;) out[k] = run = std::max(run, g[k]);
  }
  return out;
}

SampledRadial running_sup(const SampledRadial& g, SupDirection dir) {
  SampledRadial out;
  out.r = g.r;
  out.values = running_sup(std::span<const double>(g.values), dir);
  out.tag = dir == SupDirection::FromBelow ? Monotonicity::Nondecreasing : Monotonicity::Nonincreasing;
  return out;
}

SampledRadial compute_U1(const RadialFunction& u0, const RadialFunction& u1, const RadialGrid& grid) {
  SampledRadial out;
  out.r = grid.radii();
  out.tag = Monotonicity::Nonincreasing;
  const auto p0 = u0.as_power(), p1 = u1.as_power();
  if (p0 && p1) {
    const double s = p0->exponent + p1->exponent;
    const bool inf = p1->exponent < 0.0 || s > 0.0;
    for (double x : out.r) out.values.push_back(inf ? kInf : p0->coef * p1->coef * std::pow(x, s));
    return out;
  }
  const U1Profile prof = u1_profile(u0, u1, out.r);
  out.values = prof.infinite ? std::vector<double>(out.r.size(), kInf) : prof.values;
  return out;
}

SampledRadial compute_U2(const RadialFunction& u2, const RadialGrid& grid) {
  SampledRadial out;
  out.r = grid.radii();
  out.tag = Monotonicity::Nondecreasing;
  if (const auto p = u2.as_power()) {
    for (double x : out.r) out.values.push_back(p->exponent < 0.0 ? kInf : p->coef * std::pow(x, p->exponent));
    return out;
  }
  if (u2.lower_exponent() < 0.0) {
    out.values.assign(out.r.size(), kInf);
    return out;
  }
  return running_sup(sample_radial(u2, grid), SupDirection::FromBelow);
}

// ---------------------------------------------------------------- conditions

RadialGrid default_condition_grid() { return RadialGrid(std::ldexp(1.0, -24), std::ldexp(1.0, 24), std::exp2(1.0 / 16)); }

ConditionReport cor52_condition(const RadialFunction& u, double beta, const RadialGrid& grid) {
  const SampledRadial s = sample_radial(u, grid);
  return cor52_core(s.r, s.values, u.lower_exponent(), u.upper_exponent(), beta, u.exact_tails());
}

ConditionReport gm_condition(const RadialFunction& omega, int n, double p, double alpha, const RadialGrid& grid) {
  require(n >= 1, "dimension must be positive");
  require(p >= 1.0, "p must be at least 1");
  require(alpha > 0.0 && alpha < n, "alpha must lie in (0, n)");
  ConditionReport rep = cor52_condition(omega * RadialFunction::power(n / p), n - alpha, grid);
  rep.condition_id = "gm";
  return rep;
}

ConditionReport thm64_condition(const RadialFunction& omega, const WeightDescriptor& v, int n, double p, double alpha,
                                const RadialGrid& grid) {
  require(n >= 1, "dimension must be positive");
  require(p >= 1.0, "p must be at least 1");
  require(alpha > 0.0 && alpha < n, "alpha must lie in (0, n)");
  ConditionReport rep = cor52_condition(omega * RadialFunction::ball_measure_at_origin(v, n, 1.0 / p), n - alpha, grid);
  rep.condition_id = "thm64";
  return rep;
}

ConditionReport thm61_condition(const RadialFunction& omega_r, const WeightDescriptor& omega_x,
                                const WeightDescriptor& v, int n, double p, double alpha,
                                const std::vector<Point>& centers, const RadialGrid& grid) {
  require(n >= 1, "dimension must be positive");
  require(p >= 1.0, "p must be at least 1");
  require(alpha > 0.0 && alpha < n, "alpha must lie in (0, n)");
  require(!centers.empty(), "no centers given");
  require(v.locally_integrable(n), "weight is not locally integrable");
  ConditionReport best;
  best.condition_id = "thm61";
  best.value = -1.0;
  for (const auto& x : centers) {
    require(static_cast<int>(x.size()) == n, "center dimension does not match n");
    double norm2 = 0.0;
    for (double c : x) norm2 += c * c;
    const double bx = omega_x.radial(std::sqrt(norm2));
    require(std::isfinite(bx) && bx > 0.0, "omega(x, .) must be positive and finite at every center");
    RadialFunction measure;
    if (norm2 == 0.0) {
      measure = RadialFunction::ball_measure_at_origin(v, n, 1.0 / p);
    } else {
      measure = RadialFunction::callable([v, x, p](double t) { return std::pow(v.ball_measure(x, t), 1.0 / p); },
                                         n / p, (n + std::max(0.0, v.max_exponent())) / p);
    }
    ConditionReport rep = cor52_condition(omega_r.scaled(bx) * measure, n - alpha, grid);
    best.truncated = best.truncated || rep.truncated;
    if (rep.value > best.value || rep.infinite) {
      const bool trunc = best.truncated;
      best = std::move(rep);
      best.condition_id = "thm61";
      best.truncated = trunc;
      best.argmax_x = x;
      if (best.infinite) break;
    }
  }
  return best;
}

ConditionReport theorem51_I(const RadialFunction& u0, const RadialFunction& u1, const RadialFunction& u2,
                            const RadialFunction& v1, const RadialFunction& v2, const RadialGrid& grid) {
  require(!v1.is_zero(), "v1 must be positive");
  ConditionReport rep = theorem51_core(u0, u1, u2, v1, v2, grid);
  if (rep.infinite) return rep;
  const ConditionReport fine = theorem51_core(u0, u1, u2, v1, v2, grid.refined());
  rep.refined_value = fine.value;
  rep.stable = !fine.infinite && std::abs(fine.value - rep.value) <= 0.05 * std::abs(rep.value);
  return rep;
}

ConditionReport theorem51_I(const RadialFunction& u0, const RadialFunction& u1, const RadialFunction& u2,
                            const WeightDescriptor& v1, const WeightDescriptor& v2, const RadialGrid& grid) {
  return theorem51_I(u0, u1, u2, RadialFunction::from_weight(v1), RadialFunction::from_weight(v2), grid);
}

// ---------------------------------------------------------------- oracle

OracleResult best_constant_oracle(const RadialFunction& u0, const RadialFunction& u1, const RadialFunction& u2,
                                  const RadialFunction& v1, const RadialFunction& v2, const OracleOptions& opts) {
  require(opts.shells >= 1 && opts.shells <= opts.max_shells, "shell count must lie in [1, max_shells]");
  require(opts.max_shells <= 8, "at most 8 shells are supported");
  require(opts.mesh >= 1, "simplex mesh must be positive");
  require(opts.first_shell > 0.0 && opts.shell_ratio > 1.0, "shells need a positive first radius and ratio > 1");

  const int S = opts.max_shells;
  OracleResult res;
  for (int j = 0; j < S; ++j) res.radii.push_back(opts.first_shell * std::pow(opts.shell_ratio, j));

  std::vector<double> cand;
  for (double s : res.radii)
    for (double f : {1.0 - 1e-9, 1.0, 1.0 + 1e-9}) cand.push_back(s * f);
  const double lo = res.radii.front() / (opts.shell_ratio * opts.shell_ratio);
  const double hi = res.radii.back() * opts.shell_ratio * opts.shell_ratio;
  for (double t = lo; t <= hi; t *= std::exp2(1.0 / 8)) cand.push_back(t);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  const std::size_t C = cand.size();

  std::vector<double> U0(C), U1v(C), U2(C);
  std::vector<int> ge(C), lt(C);
  for (std::size_t c = 0; c < C; ++c) {
    U0[c] = u0(cand[c]);
    U1v[c] = u1(cand[c]);
    U2[c] = u2(cand[c]);
    ge[c] = static_cast<int>(std::lower_bound(res.radii.begin(), res.radii.end(), cand[c]) - res.radii.begin());
    lt[c] = ge[c];  // shells strictly below cand[c]
  }
  std::vector<double> w1(S), w2(S);
  for (int j = 0; j < S; ++j) {
    w1[j] = v1(res.radii[j]);
    w2[j] = v2(res.radii[j]);
  }

  std::vector<int> cur(opts.shells);
  std::vector<double> suffix(S + 1), prefix(S + 1), m(S, 0.0);
  res.value = -1.0;
  bool degenerate = false;
  enumerate_compositions(opts.shells, opts.mesh, cur, 0, [&](const std::vector<int>& comp) {
    ++res.evaluated;
    std::fill(m.begin(), m.end(), 0.0);
    for (int j = 0; j < opts.shells; ++j) m[j] = static_cast<double>(comp[j]) / opts.mesh;
    suffix[S] = 0.0;
    for (int j = S; j-- > 0;) suffix[j] = suffix[j + 1] + m[j] * w2[j];
    prefix[0] = 0.0;
    for (int j = 0; j < S; ++j) prefix[j + 1] = prefix[j] + m[j] * w1[j];
    double num = 0.0, den = 0.0, gmax = 0.0;
    for (std::size_t c = C; c-- > 0;) {
      num = std::max(num, U2[c] * suffix[ge[c]]);
      den = std::max(den, U1v[c] * gmax);  // sup over t > cand[c]
      gmax = std::max(gmax, U0[c] * prefix[lt[c]]);
    }
    if (den == 0.0) {
      if (num > 0.0) degenerate = true;
      return;
    }
    const double ratio = num / den;
    if (ratio > res.value) {
      res.value = ratio;
      res.masses = m;
    }
  });
  if (degenerate || res.value < 0.0) {
    res.value = kInf;
    res.infinite = true;
  }
  return res;
}

double equivalence_constant(double i_value, double oracle_value) {
  require(i_value > 0.0 && oracle_value > 0.0, "equivalence constant needs positive values");
  return std::max(i_value / oracle_value, oracle_value / i_value);
}

}  // namespace fracmorrey

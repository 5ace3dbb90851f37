#include "fracmorrey/functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracmorrey/error.hpp"
#include "fracmorrey/quadrature.hpp"

namespace fracmorrey {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double unit_uniform(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t bits = splitmix64(splitmix64(seed) ^ (index * 0xd1b54a32d192ed03ULL));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

bool is_power_of_two(int k) { return k > 0 && (k & (k - 1)) == 0; }

}  // namespace

Point Shape::center_point(int n) const {
  Point p(n);
  for (int a = 0; a < n; ++a) p[a] = center_coord(a);
  return p;
}

bool Shape::contains(std::span<const double> x) const {
  if (kind == RegionKind::Ball) {
    double s = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a) {
      const double d = x[a] - center_coord(a);
      s += d * d;
    }
    return s < radius * radius;
  }
  for (std::size_t a = 0; a < x.size(); ++a)
    if (!(std::abs(x[a] - center_coord(a)) < radius)) return false;
  return true;
}

FunctionDescriptor::FunctionDescriptor() : FunctionDescriptor(zero()) {}

FunctionDescriptor::FunctionDescriptor(Node node) : node_(std::make_shared<const Node>(std::move(node))) {}

FunctionDescriptor FunctionDescriptor::indicator(Shape region) {
  require(region.radius > 0.0, "indicator region radius must be positive");
  return FunctionDescriptor(Indicator{std::move(region)});
}

FunctionDescriptor FunctionDescriptor::power(double exponent, std::optional<Shape> support) {
  require(std::isfinite(exponent), "power exponent must be finite");
  return FunctionDescriptor(Power{exponent, std::move(support)});
}

FunctionDescriptor FunctionDescriptor::gaussian(Point center, double width) {
  require(width > 0.0, "gaussian width must be positive");
  return FunctionDescriptor(Gaussian{std::move(center), width});
}

FunctionDescriptor FunctionDescriptor::step(std::uint64_t seed, int pieces, Shape support) {
  require(is_power_of_two(pieces), "step piece count must be a power of two");
  require(support.kind == RegionKind::Cube, "step support must be a cube");
  require(support.radius > 0.0, "step support half-side must be positive");
  return FunctionDescriptor(StepRandom{seed, pieces, std::move(support)});
}

FunctionDescriptor FunctionDescriptor::sum(std::vector<std::pair<double, FunctionDescriptor>> terms) {
  for (const auto& t : terms) require(std::isfinite(t.first), "sum coefficient must be finite");
  return FunctionDescriptor(Sum{std::move(terms)});
}

FunctionDescriptor FunctionDescriptor::scaled(double c, FunctionDescriptor f) {
  return sum({{c, std::move(f)}});
}

FunctionDescriptor FunctionDescriptor::zero() { return FunctionDescriptor(Sum{}); }

double FunctionDescriptor::operator()(std::span<const double> x) const {
  return std::visit(
      [&](const auto& nd) -> double {
        using T = std::decay_t<decltype(nd)>;
        if constexpr (std::is_same_v<T, Indicator>) {
          return nd.region.contains(x) ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<T, Power>) {
          if (nd.support && !nd.support->contains(x)) return 0.0;
          const double r = norm(x);
          if (r == 0.0) return nd.exponent < 0.0 ? kInf : (nd.exponent == 0.0 ? 1.0 : 0.0);
          return std::pow(r, nd.exponent);
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          double s = 0.0;
          for (std::size_t a = 0; a < x.size(); ++a) {
            const double d = x[a] - (nd.center.size() == 1 ? nd.center[0] : nd.center[a]);
            s += d * d;
          }
          return std::exp(-s / (2.0 * nd.width * nd.width));
        } else if constexpr (std::is_same_v<T, StepRandom>) {
          if (!nd.support.contains(x)) return 0.0;
          const double piece = 2.0 * nd.support.radius / nd.pieces;
          std::uint64_t idx = 0;
          for (std::size_t a = 0; a < x.size(); ++a) {
            const double lo = nd.support.center_coord(a) - nd.support.radius;
            auto j = static_cast<long>(std::floor((x[a] - lo) / piece));
            j = std::clamp<long>(j, 0, nd.pieces - 1);
            idx = idx * static_cast<std::uint64_t>(nd.pieces) + static_cast<std::uint64_t>(j);
          }
          return unit_uniform(nd.seed, idx);
        } else {
          double s = 0.0;
          for (const auto& [c, g] : nd.terms) s += c * g(x);
          return s;
        }
      },
      *node_);
}

bool FunctionDescriptor::nonnegative() const {
  if (const auto* s = std::get_if<Sum>(node_.get())) {
    for (const auto& [c, g] : s->terms)
      if (c < 0.0 || !g.nonnegative()) return false;
  }
  return true;
}

WeightDescriptor::WeightDescriptor(std::vector<PowerTerm> terms) {
  require(!terms.empty(), "weight needs at least one term");
  for (const auto& t : terms) {
    require(std::isfinite(t.coef) && t.coef > 0.0, "weight coefficients must be positive");
    require(std::isfinite(t.exponent), "weight exponents must be finite");
  }
  std::sort(terms.begin(), terms.end(), [](const PowerTerm& a, const PowerTerm& b) { return a.exponent < b.exponent; });
  for (const auto& t : terms) {
    if (!terms_.empty() && terms_.back().exponent == t.exponent)
      terms_.back().coef += t.coef;
    else
      terms_.push_back(t);
  }
}

WeightDescriptor WeightDescriptor::constant(double c) { return WeightDescriptor({PowerTerm{c, 0.0}}); }

WeightDescriptor WeightDescriptor::power(double exponent, double coef) {
  return WeightDescriptor({PowerTerm{coef, exponent}});
}

WeightDescriptor WeightDescriptor::sum(const WeightDescriptor& a, const WeightDescriptor& b) {
  auto t = a.terms_;
  t.insert(t.end(), b.terms_.begin(), b.terms_.end());
  return WeightDescriptor(std::move(t));
}

WeightDescriptor WeightDescriptor::product(const WeightDescriptor& a, const WeightDescriptor& b) {
  std::vector<PowerTerm> t;
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) t.push_back({x.coef * y.coef, x.exponent + y.exponent});
  return WeightDescriptor(std::move(t));
}

WeightDescriptor WeightDescriptor::scaled(double c, const WeightDescriptor& a) {
  require(c > 0.0, "weight scale must be positive");
  auto t = a.terms_;
  for (auto& x : t) x.coef *= c;
  return WeightDescriptor(std::move(t));
}

double WeightDescriptor::radial(double r) const {
  double s = 0.0;
  for (const auto& t : terms_) {
    if (t.exponent == 0.0)
      s += t.coef;
    else if (r == 0.0)
      s += t.exponent < 0.0 ? kInf : 0.0;
    else
      s += t.coef * std::pow(r, t.exponent);
  }
  return s;
}

double WeightDescriptor::operator()(std::span<const double> x) const { return radial(norm(x)); }

double WeightDescriptor::box_integral(std::span<const double> lo, std::span<const double> hi) const {
  double s = 0.0;
  for (const auto& t : terms_) s += t.coef * quad::power_box_integral(t.exponent, lo, hi);
  return s;
}

double WeightDescriptor::pow_box_integral(double q, std::span<const double> lo, std::span<const double> hi) const {
  if (q == 1.0) return box_integral(lo, hi);
  if (single_term())
    return std::pow(terms_[0].coef, q) * quad::power_box_integral(terms_[0].exponent * q, lo, hi);
  const auto& lead = terms_.front();
  quad::OriginModel model{std::pow(lead.coef, q), lead.exponent * q};
  return quad::box_integral([this, q](std::span<const double> x) { return std::pow((*this)(x), q); }, lo, hi, model);
}

double WeightDescriptor::cube_measure(const Point& x, double s) const {
  std::vector<double> lo(x.size()), hi(x.size());
  for (std::size_t a = 0; a < x.size(); ++a) {
    lo[a] = x[a] - s;
    hi[a] = x[a] + s;
  }
  return box_integral(lo, hi);
}

namespace {

// v(B(x, r)) in n >= 2 off the origin: subdivide the bounding cube, integrate
// boxes inside the ball exactly and resolve the boundary to a fixed depth.
double ball_quadtree(const WeightDescriptor& v, const Point& x, double r, std::vector<double>& lo,
                     std::vector<double>& hi, int depth) {
  const std::size_t n = x.size();
  double near = 0.0, far = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    const double d0 = lo[a] - x[a], d1 = hi[a] - x[a];
    const double nearest = (d0 > 0.0) ? d0 : (d1 < 0.0 ? -d1 : 0.0);
    const double farthest = std::max(std::abs(d0), std::abs(d1));
    near += nearest * nearest;
    far += farthest * farthest;
  }
  if (near >= r * r) return 0.0;
  if (far <= r * r) return v.box_integral(lo, hi);
  if (depth == 0) {
    double s = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      const double d = 0.5 * (lo[a] + hi[a]) - x[a];
      s += d * d;
    }
    return s < r * r ? v.box_integral(lo, hi) : 0.0;
  }
  double total = 0.0;
  std::vector<double> clo(n), chi(n);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    for (std::size_t a = 0; a < n; ++a) {
      const double mid = 0.5 * (lo[a] + hi[a]);
      clo[a] = (mask & (1u << a)) ? mid : lo[a];
      chi[a] = (mask & (1u << a)) ? hi[a] : mid;
    }
    total += ball_quadtree(v, x, r, clo, chi, depth - 1);
  }
  return total;
}

}  // namespace

double WeightDescriptor::ball_measure(const Point& x, double r) const {
  require(r > 0.0, "ball radius must be positive");
  const int n = static_cast<int>(x.size());
  if (n == 1) {
    const double lo = x[0] - r, hi = x[0] + r;
    return box_integral(std::span<const double>(&lo, 1), std::span<const double>(&hi, 1));
  }
  if (norm(x) == 0.0) {
    const double surface = n * unit_ball_volume(n);
    double s = 0.0;
    for (const auto& t : terms_) {
      if (t.exponent <= -n) return kInf;
      s += t.coef * surface * std::pow(r, n + t.exponent) / (n + t.exponent);
    }
    return s;
  }
  std::vector<double> lo(n), hi(n);
  for (int a = 0; a < n; ++a) {
    lo[a] = x[a] - r;
    hi[a] = x[a] + r;
  }
  return ball_quadtree(*this, x, r, lo, hi, n == 2 ? 9 : 5);
}

GridFunction::GridFunction(Domain d, std::vector<double> v, bool nonneg)
    : domain(std::move(d)), values(std::move(v)), nonnegative(nonneg) {
  require(values.size() == domain.cell_count(), "grid function size does not match domain");
  for (double x : values) {
    if (!std::isfinite(x)) throw ComputationError("grid function value is not finite");
    if (nonnegative && x < 0.0) throw ValidationError("grid function flagged nonnegative has a negative value");
  }
}

GridFunction GridFunction::zeros(const Domain& d) { return GridFunction(d, std::vector<double>(d.cell_count(), 0.0), true); }

GridFunction GridFunction::scaled(double c) const {
  std::vector<double> v(values);
  for (auto& x : v) x *= c;
  return GridFunction(domain, std::move(v), nonnegative && c >= 0.0);
}

namespace {

void sample_into(const FunctionDescriptor& f, double coef, const Domain& domain, std::vector<double>& out) {
  const int n = domain.dimension();
  const std::size_t count = domain.cell_count();
  std::vector<double> x(n), lo(n), hi(n);
  if (const auto* s = std::get_if<FunctionDescriptor::Sum>(&f.node())) {
    for (const auto& [c, g] : s->terms) sample_into(g, coef * c, domain, out);
    return;
  }
  const auto* pw = std::get_if<FunctionDescriptor::Power>(&f.node());
  const double h = domain.cell_width();
  const Point origin(n, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    domain.center(i, x);
    double val;
    if (pw && pw->exponent < 0.0 && domain.cell_contains(i, origin)) {
      if (pw->support && !pw->support->contains(x)) {
        val = 0.0;
      } else if (pw->exponent > -n) {
        domain.cell_bounds(i, lo, hi);
        val = quad::power_box_integral(pw->exponent, lo, hi) / domain.cell_volume();
      } else {
        val = std::pow(0.5 * h, pw->exponent);
      }
    } else {
      val = f(x);
    }
    if (!std::isfinite(val)) throw ComputationError("descriptor is not finite at a cell center");
    out[i] += coef * val;
  }
}

}  // namespace

GridFunction sample(const FunctionDescriptor& f, const Domain& domain) {
  std::vector<double> v(domain.cell_count(), 0.0);
  sample_into(f, 1.0, domain, v);
  const bool nonneg = f.nonnegative();
  if (nonneg)
    for (auto& x : v) x = std::max(x, 0.0);
  return GridFunction(domain, std::move(v), nonneg);
}

GridFunction sample_weight(const WeightDescriptor& v, const Domain& domain) {
  const int n = domain.dimension();
  std::vector<double> out(domain.cell_count());
  std::vector<double> x(n), lo(n), hi(n);
  const Point origin(n, 0.0);
  const bool singular = v.min_exponent() < 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (singular && domain.cell_contains(i, origin)) {
      domain.cell_bounds(i, lo, hi);
      out[i] = v.box_integral(lo, hi) / domain.cell_volume();
      if (!std::isfinite(out[i])) throw ComputationError("weight is not locally integrable at the origin");
    } else {
      domain.center(i, x);
      out[i] = v(x);
    }
  }
  return GridFunction(domain, std::move(out), true);
}

double weight_measure(const GridFunction& v_samples, const Region& region) {
  double s = 0.0;
  for (std::size_t c : region.cells) s += v_samples.values[c];
  return s * v_samples.domain.cell_volume();
}

double weight_measure(const WeightDescriptor& v, const Domain& domain, const Region& region) {
  return weight_measure(sample_weight(v, domain), region);
}

}  // namespace fracmorrey

#include "fracmorrey/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace fracmorrey::quad {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr std::array<double, 8> kNodes = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                          -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                          0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kWeights = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                            0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                            0.2223810344533745, 0.1012285362903763};

bool touches_origin(std::span<const double> lo, std::span<const double> hi) {
  for (std::size_t a = 0; a < lo.size(); ++a)
    if (lo[a] > 0.0 || hi[a] < 0.0) return false;
  return true;
}

double distance_to_origin(std::span<const double> lo, std::span<const double> hi) {
  double s = 0.0;
  for (std::size_t a = 0; a < lo.size(); ++a) {
    const double d = lo[a] > 0.0 ? lo[a] : (hi[a] < 0.0 ? -hi[a] : 0.0);
    s += d * d;
  }
  return std::sqrt(s);
}

double diameter(std::span<const double> lo, std::span<const double> hi) {
  double s = 0.0;
  for (std::size_t a = 0; a < lo.size(); ++a) s += (hi[a] - lo[a]) * (hi[a] - lo[a]);
  return std::sqrt(s);
}

double volume(std::span<const double> lo, std::span<const double> hi) {
  double v = 1.0;
  for (std::size_t a = 0; a < lo.size(); ++a) v *= hi[a] - lo[a];
  return v;
}

double power_1d(double e, double lo, double hi) {
  if (e == 0.0) return hi - lo;
  if (lo <= 0.0 && hi >= 0.0 && e <= -1.0) return kInf;
  if (e == -1.0) return lo >= 0.0 ? std::log(hi / lo) : std::log(lo / hi);
  auto F = [e](double x) { return std::copysign(std::pow(std::abs(x), e + 1.0), x) / (e + 1.0); };
  return F(hi) - F(lo);
}

// Splits the box in halves along every axis and applies fn to each child.
template <class Fn>
void for_each_half(std::span<const double> lo, std::span<const double> hi, Fn&& fn) {
  const std::size_t n = lo.size();
  std::vector<double> clo(n), chi(n);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    for (std::size_t a = 0; a < n; ++a) {
      const double mid = 0.5 * (lo[a] + hi[a]);
      if (mask & (1u << a)) {
        clo[a] = mid;
        chi[a] = hi[a];
      } else {
        clo[a] = lo[a];
        chi[a] = mid;
      }
    }
    fn(std::span<const double>(clo), std::span<const double>(chi));
  }
}

double smooth_adaptive(const Integrand& g, std::span<const double> lo, std::span<const double> hi, int depth) {
  const double d = distance_to_origin(lo, hi);
  if (depth >= 40 || d >= 2.0 * diameter(lo, hi)) return gauss_legendre_box(g, lo, hi);
  double s = 0.0;
  for_each_half(lo, hi, [&](auto clo, auto chi) { s += smooth_adaptive(g, clo, chi, depth + 1); });
  return s;
}

// Integral of |x|^e over [0, a_1] x ... x [0, a_n], using
// I = S + 2^{-(n+e)} I where S is the integral over the 2^n - 1 halves
// away from the corner.
double corner_power(double e, std::span<const double> a) {
  const auto n = static_cast<double>(a.size());
  if (e <= -n) return kInf;
  const std::size_t dim = a.size();
  Integrand g = [e](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::pow(s, 0.5 * e);
  };
  std::vector<double> clo(dim), chi(dim);
  double S = 0.0;
  for (unsigned mask = 1; mask < (1u << dim); ++mask) {
    for (std::size_t k = 0; k < dim; ++k) {
      if (mask & (1u << k)) {
        clo[k] = 0.5 * a[k];
        chi[k] = a[k];
      } else {
        clo[k] = 0.0;
        chi[k] = 0.5 * a[k];
      }
    }
    S += smooth_adaptive(g, clo, chi, 0);
  }
  return S / (1.0 - std::pow(2.0, -(n + e)));
}

// Visits each orthant piece of a box that touches the origin, passing the
// piece bounds. Degenerate (zero-width) pieces are skipped.
template <class Fn>
void for_each_orthant(std::span<const double> lo, std::span<const double> hi, Fn&& fn) {
  const std::size_t n = lo.size();
  std::vector<double> olo(n), ohi(n);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    bool empty = false;
    for (std::size_t a = 0; a < n; ++a) {
      if (mask & (1u << a)) {
        olo[a] = lo[a];
        ohi[a] = 0.0;
      } else {
        olo[a] = 0.0;
        ohi[a] = hi[a];
      }
      if (!(ohi[a] > olo[a])) empty = true;
    }
    if (!empty) fn(std::span<const double>(olo), std::span<const double>(ohi));
  }
}

}  // namespace

double gauss_legendre_box(const Integrand& g, std::span<const double> lo, std::span<const double> hi) {
  const std::size_t n = lo.size();
  std::vector<double> x(n);
  std::vector<std::size_t> idx(n, 0);
  double total = 0.0;
  while (true) {
    double w = 1.0;
    for (std::size_t a = 0; a < n; ++a) {
      const double half = 0.5 * (hi[a] - lo[a]);
      x[a] = lo[a] + half * (kNodes[idx[a]] + 1.0);
      w *= half * kWeights[idx[a]];
    }
    total += w * g(x);
    bool done = true;
    for (std::size_t a = n; a > 0; --a) {
      if (++idx[a - 1] < kNodes.size()) {
        done = false;
        break;
      }
      idx[a - 1] = 0;
    }
    if (done) return total;
  }
}

double power_box_integral(double e, std::span<const double> lo, std::span<const double> hi) {
  const std::size_t n = lo.size();
  if (n == 1) return power_1d(e, lo[0], hi[0]);
  if (e == 0.0) return volume(lo, hi);
  if (!touches_origin(lo, hi)) {
    Integrand g = [e](std::span<const double> x) {
      double s = 0.0;
      for (double v : x) s += v * v;
      return std::pow(s, 0.5 * e);
    };
    return smooth_adaptive(g, lo, hi, 0);
  }
  double total = 0.0;
  std::vector<double> extent(n);
  for_each_orthant(lo, hi, [&](auto olo, auto ohi) {
    for (std::size_t a = 0; a < n; ++a) extent[a] = ohi[a] - olo[a];
    total += corner_power(e, extent);
  });
  return total;
}

double box_integral(const Integrand& g, std::span<const double> lo, std::span<const double> hi,
                    const OriginModel& near_origin) {
  if (!touches_origin(lo, hi)) return smooth_adaptive(g, lo, hi, 0);
  const std::size_t n = lo.size();
  double total = 0.0;
  for_each_orthant(lo, hi, [&](auto olo, auto ohi) {
    std::vector<double> cur_lo(olo.begin(), olo.end()), cur_hi(ohi.begin(), ohi.end());
    // Peel off the halves away from the origin 24 times, then close the
    // remaining corner with the origin model.
    for (int level = 0; level < 24; ++level) {
      std::vector<double> mid(n);
      for (std::size_t a = 0; a < n; ++a) mid[a] = 0.5 * (cur_lo[a] + cur_hi[a]);
      std::vector<double> clo(n), chi(n);
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        bool corner = true;
        for (std::size_t a = 0; a < n; ++a) {
          // The half adjacent to the origin is the one with the zero endpoint.
          const bool origin_low = cur_lo[a] == 0.0;
          const bool take_low = (mask & (1u << a)) == 0;
          clo[a] = take_low ? cur_lo[a] : mid[a];
          chi[a] = take_low ? mid[a] : cur_hi[a];
          if (take_low != origin_low) corner = false;
        }
        if (!corner) total += smooth_adaptive(g, clo, chi, 0);
      }
      for (std::size_t a = 0; a < n; ++a) {
        if (cur_lo[a] == 0.0)
          cur_hi[a] = mid[a];
        else
          cur_lo[a] = mid[a];
      }
    }
    if (near_origin.coef != 0.0) total += near_origin.coef * power_box_integral(near_origin.exponent, cur_lo, cur_hi);
  });
  return total;
}

double power_integral(double c, double k, double a, double b) {
  if (c == 0.0) return 0.0;
  if (std::isinf(b)) {
    if (k >= -1.0) return kInf;
    return c * std::pow(a, k + 1.0) / (-k - 1.0);
  }
  if (b <= a) return 0.0;
  if (k == -1.0) return c * std::log(b / a);
  return c * (std::pow(b, k + 1.0) - std::pow(a, k + 1.0)) / (k + 1.0);
}

}  // namespace fracmorrey::quad

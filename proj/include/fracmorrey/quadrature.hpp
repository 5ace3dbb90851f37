#ifndef FRACMORREY_QUADRATURE_HPP
#define FRACMORREY_QUADRATURE_HPP

#include <functional>
#include <span>

namespace fracmorrey::quad {

using Integrand = std::function<double(std::span<const double>)>;

/// Behaviour of an integrand near the origin: g(x) ~ coef * |x|^exponent.
struct OriginModel {
  double coef = 0.0;
  double exponent = 0.0;
};

/// Integral of |x|^e over the box [lo, hi]. Closed form in one dimension;
/// in higher dimensions boxes touching the origin are split into orthant
/// corners and summed with the exact self-similar scaling of |x|^e, the
/// remaining pieces use adaptive tensor Gauss-Legendre. Returns +inf when
/// the box touches the origin and e <= -n.
double power_box_integral(double e, std::span<const double> lo, std::span<const double> hi);

/// Integral of a general integrand over a box. Boxes touching the origin are
/// refined geometrically toward it and the last corner is closed with the
/// origin model.
double box_integral(const Integrand& g, std::span<const double> lo, std::span<const double> hi,
                    const OriginModel& near_origin);

/// Tensor Gauss-Legendre rule (8 points per axis) on a box.
double gauss_legendre_box(const Integrand& g, std::span<const double> lo, std::span<const double> hi);

/// Integral of c * t^k over [a, b] (b may be +inf). +inf when divergent.
double power_integral(double c, double k, double a, double b);

}  // namespace fracmorrey::quad

#endif

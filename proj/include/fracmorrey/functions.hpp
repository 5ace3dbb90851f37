#ifndef FRACMORREY_FUNCTIONS_HPP
#define FRACMORREY_FUNCTIONS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "fracmorrey/geometry.hpp"

namespace fracmorrey {

/// Continuum ball or open cube in R^n. A one-element center is broadcast to
/// every axis (so ball(0, 1) means the unit ball about the origin in any n).
struct Shape {
  RegionKind kind = RegionKind::Ball;
  Point center{0.0};
  double radius = 1.0;

  double center_coord(std::size_t axis) const { return center.size() == 1 ? center[0] : center[axis]; }
  Point center_point(int n) const;
  bool contains(std::span<const double> x) const;
};

/// Symbolic nonnegative test function (signed only through explicit negative
/// Sum coefficients, which callers must opt into).
class FunctionDescriptor {
 public:
  struct Indicator {
    Shape region;
  };
  struct Power {
    double exponent = 0.0;
    std::optional<Shape> support;
  };
  struct Gaussian {
    Point center{0.0};
    double width = 1.0;
  };
  /// Constant on dyadic sub-cubes of a support cube; values uniform in [0, 1)
  /// drawn from a counter-based generator keyed by (seed, piece index).
  struct StepRandom {
    std::uint64_t seed = 0;
    int pieces = 1;  // per axis, power of two
    Shape support{RegionKind::Cube, {0.0}, 1.0};
  };
  struct Sum {
    std::vector<std::pair<double, FunctionDescriptor>> terms;
  };
  using Node = std::variant<Indicator, Power, Gaussian, StepRandom, Sum>;

  FunctionDescriptor();
  explicit FunctionDescriptor(Node node);

  static FunctionDescriptor indicator(Shape region);
  static FunctionDescriptor power(double exponent, std::optional<Shape> support = std::nullopt);
  static FunctionDescriptor gaussian(Point center, double width);
  static FunctionDescriptor step(std::uint64_t seed, int pieces, Shape support);
  static FunctionDescriptor sum(std::vector<std::pair<double, FunctionDescriptor>> terms);
  static FunctionDescriptor scaled(double c, FunctionDescriptor f);
  static FunctionDescriptor zero();

  const Node& node() const { return *node_; }
  double operator()(std::span<const double> x) const;
  /// False when any Sum coefficient is negative.
  bool nonnegative() const;

 private:
  std::shared_ptr<const Node> node_;
};

struct PowerTerm {
  double coef = 1.0;
  double exponent = 0.0;
};

/// Radial weight v(x) = sum_i c_i |x|^{gamma_i} with c_i > 0, kept in
/// canonical form (sorted by exponent, equal exponents merged). Constants,
/// power weights and their sums and products all reduce to this form.
class WeightDescriptor {
 public:
  WeightDescriptor() : WeightDescriptor(constant(1.0)) {}
  explicit WeightDescriptor(std::vector<PowerTerm> terms);

  static WeightDescriptor constant(double c);
  static WeightDescriptor power(double exponent, double coef = 1.0);
  static WeightDescriptor sum(const WeightDescriptor& a, const WeightDescriptor& b);
  static WeightDescriptor product(const WeightDescriptor& a, const WeightDescriptor& b);
  static WeightDescriptor scaled(double c, const WeightDescriptor& a);

  const std::vector<PowerTerm>& terms() const { return terms_; }
  double radial(double r) const;
  double operator()(std::span<const double> x) const;
  double min_exponent() const { return terms_.front().exponent; }
  double max_exponent() const { return terms_.back().exponent; }
  bool is_constant() const { return terms_.size() == 1 && terms_[0].exponent == 0.0; }
  bool single_term() const { return terms_.size() == 1; }
  /// Locally integrable in R^n iff every exponent exceeds -n.
  bool locally_integrable(int n) const { return min_exponent() > -n; }

  /// Exact integral over a box (closed form in 1D, adaptive otherwise).
  double box_integral(std::span<const double> lo, std::span<const double> hi) const;
  /// Integral of v^q over a box; exact route when v has a single term.
  double pow_box_integral(double q, std::span<const double> lo, std::span<const double> hi) const;
  /// v(B(x, r)) for the continuum ball.
  double ball_measure(const Point& x, double r) const;
  /// v(Q) for the open cube of half-side s about x.
  double cube_measure(const Point& x, double s) const;

 private:
  std::vector<PowerTerm> terms_;
};

/// Function sampled at cell centers of a domain.
struct GridFunction {
  Domain domain;
  std::vector<double> values;
  bool nonnegative = true;

  GridFunction(Domain d, std::vector<double> v, bool nonneg);
  static GridFunction zeros(const Domain& d);

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  GridFunction scaled(double c) const;
};

/// Sample a descriptor at cell centers. Cells whose closed box contains the
/// origin store the exact cell average of any negative power term (or, for
/// non-integrable exponents, the value at distance h/2).
GridFunction sample(const FunctionDescriptor& f, const Domain& domain);
/// Sample a weight at cell centers, applying the same origin-cell rule.
GridFunction sample_weight(const WeightDescriptor& v, const Domain& domain);

/// v(E) for a cell set: sum of sampled weight times cell volume.
double weight_measure(const GridFunction& v_samples, const Region& region);
double weight_measure(const WeightDescriptor& v, const Domain& domain, const Region& region);

}  // namespace fracmorrey

#endif

#ifndef FRACMORREY_NORMS_HPP
#define FRACMORREY_NORMS_HPP

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "fracmorrey/functions.hpp"
#include "fracmorrey/geometry.hpp"

namespace fracmorrey {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// (sum over region of |f|^p v h^n)^{1/p}; p = inf gives max |f| v.
double weighted_lp_norm(const GridFunction& f, double p, const Region& region, const GridFunction& v_samples);
double weighted_lp_norm(const GridFunction& f, double p, const Region& region, const WeightDescriptor& v);
/// Norm over the whole box.
double weighted_lp_norm(const GridFunction& f, double p, const GridFunction& v_samples);

/// Nonincreasing v-rearrangement as a right-continuous step function:
/// values[j] on [ends[j-1], ends[j]), zero from ends.back() on.
struct Rearrangement {
  std::vector<double> values;    // strictly decreasing, positive
  std::vector<double> measures;  // v-measure of each level set
  std::vector<double> ends;      // cumulative measures

  double operator()(double t) const;
  double support() const { return ends.empty() ? 0.0 : ends.back(); }
  /// sum_j values_j^p measures_j, the p-th power of the L_p(v) norm.
  double power_integral(double p) const;
};

Rearrangement rearrangement(const GridFunction& f, const GridFunction& v_samples);
Rearrangement rearrangement(const GridFunction& f, const WeightDescriptor& v);

/// sup_t t^{1/q} f_v^*(t), attained at left limits of the breakpoints.
double weak_lorentz_norm(const Rearrangement& r, double q);
double weak_lorentz_norm(const GridFunction& f, double q, const GridFunction& v_samples);

/// omega(x, r) for the generalized Morrey norms.
class RadialWeight {
 public:
  using Evaluator = std::function<double(std::span<const double>, double)>;

  /// omega(r) = sum c_i r^{e_i}.
  explicit RadialWeight(WeightDescriptor radial);
  /// omega(x, r) = A(r) B(x) with A, B power sums (B in |x|).
  RadialWeight(WeightDescriptor radial, WeightDescriptor spatial);
  /// Arbitrary evaluator; x_dependent says whether x matters.
  RadialWeight(Evaluator eval, bool x_dependent);

  static RadialWeight classical(double p, double lambda) {
    return RadialWeight(WeightDescriptor::power(-lambda / p));
  }

  double operator()(std::span<const double> x, double r) const;
  double operator()(double r) const;
  bool x_dependent() const { return x_dependent_; }

 private:
  Evaluator eval_;
  bool x_dependent_ = false;
};

/// Radius policy for the Morrey sups around one center: every distance to
/// a cell center, the equal-volume radius, a radius past the whole box and
/// any extra radii. All balls are open.
struct MorreyOptions {
  std::optional<RadialGrid> extra_radii;
};

/// Best (x, r) found by a Morrey sup.
struct MorreyResult {
  double value = 0.0;
  Point x;
  double r = 0.0;
};

/// sup over x in cell centers (and the origin), r > 0, of
/// omega(x, r) ||f||_{L_p(B(x, r), v)}.
MorreyResult generalized_weighted_morrey(const GridFunction& f, double p, const RadialWeight& omega,
                                         const GridFunction& v_samples, const MorreyOptions& opts = {});
/// Same with x fixed at the origin.
MorreyResult central_morrey(const GridFunction& f, double p, const RadialWeight& omega, const GridFunction& v_samples,
                            const MorreyOptions& opts = {});

double generalized_weighted_morrey_norm(const GridFunction& f, double p, const RadialWeight& omega,
                                        const WeightDescriptor& v);
double central_morrey_norm(const GridFunction& f, double p, const RadialWeight& omega, const WeightDescriptor& v);
/// Classical Morrey norm sup r^{-lambda/p} ||f||_{L_p(B(x, r))}.
double morrey_norm(const GridFunction& f, double p, double lambda);

}  // namespace fracmorrey

#endif

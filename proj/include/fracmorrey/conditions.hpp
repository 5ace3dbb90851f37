#ifndef FRACMORREY_CONDITIONS_HPP
#define FRACMORREY_CONDITIONS_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracmorrey/functions.hpp"
#include "fracmorrey/geometry.hpp"

namespace fracmorrey {

/// Positive function of r > 0: a product of power sums raised to real
/// powers, (sum c_i r^{e_i})^k, times optional callables with declared
/// power behaviour at 0 and infinity.
class RadialFunction {
 public:
  using Fn = std::function<double(double)>;

  RadialFunction() = default;
  static RadialFunction power(double exponent, double coef = 1.0);
  static RadialFunction constant(double c);
  static RadialFunction power_sum(std::vector<PowerTerm> terms, double k = 1.0);
  static RadialFunction from_weight(const WeightDescriptor& v, double k = 1.0);
  /// v(B(0, r))^k, exact for radial power weights.
  static RadialFunction ball_measure_at_origin(const WeightDescriptor& v, int n, double k = 1.0);
  static RadialFunction callable(Fn f, double lower_exponent, double upper_exponent);

  RadialFunction operator*(const RadialFunction& o) const;
  RadialFunction scaled(double c) const;

  double operator()(double r) const;
  /// f(r) ~ C r^e as r -> 0 and as r -> infinity.
  double lower_exponent() const;
  double upper_exponent() const;
  /// True when the function is a single power c r^a (tails are exact).
  bool exact_tails() const;
  std::optional<PowerTerm> as_power() const;
  bool is_zero() const { return scale_ == 0.0; }

 private:
  struct Factor {
    std::vector<PowerTerm> terms;
    double k = 1.0;
  };
  struct Call {
    Fn f;
    double lower = 0.0;
    double upper = 0.0;
  };
  double scale_ = 1.0;
  std::vector<Factor> factors_;
  std::vector<Call> calls_;
};

/// t -> max_i c_i t^{e_i}.
struct PowerEnvelope {
  std::vector<PowerTerm> terms;

  struct Piece {
    double lo = 0.0;
    double hi = 0.0;
    PowerTerm term;
  };

  double operator()(double t) const;
  /// Split [lo, hi] (hi may be infinite) into pieces with one dominant term.
  std::vector<Piece> pieces(double lo, double hi) const;
  /// Integral of t^q / envelope(t) over [lo, hi].
  double inverse_integral(double q, double lo, double hi) const;
};

enum class Monotonicity { None, Nondecreasing, Nonincreasing };
enum class SupDirection { FromBelow, FromAbove };

/// Values of a radial function on a grid.
struct SampledRadial {
  std::vector<double> r;
  std::vector<double> values;
  Monotonicity tag = Monotonicity::None;
};

SampledRadial sample_radial(const RadialFunction& f, const RadialGrid& grid);

/// Running maxima k -> max_{j <= k} g_j (from below) or max_{j >= k} g_j
/// (from above).
std::vector<double> running_sup(std::span<const double> g, SupDirection dir);
SampledRadial running_sup(const SampledRadial& g, SupDirection dir);

/// U_1(r) = sup_{t > r} u0(t) sup_{s < t} u1(s); closed form when both
/// inputs are single powers.
SampledRadial compute_U1(const RadialFunction& u0, const RadialFunction& u1, const RadialGrid& grid);
/// U_2(r) = sup_{t < r} u2(t).
SampledRadial compute_U2(const RadialFunction& u2, const RadialGrid& grid);

struct ConditionReport {
  std::string condition_id;
  double value = 0.0;
  bool infinite = false;
  bool truncated = false;
  std::optional<Point> argmax_x;
  double argmax_r = 0.0;
  std::vector<std::pair<double, double>> profile;
  std::string note;
  // refinement gate (Thm 5.1 quantity only)
  std::optional<double> refined_value;
  std::optional<bool> stable;
};

/// Default log grid for the radial conditions: 2^-24 .. 2^24, ratio 2^{1/16}.
RadialGrid default_condition_grid();

/// sup_r r^beta psi(r) int_r^inf t^{-beta-1} psi(t)^{-1} dt with
/// psi(r) = sup_{t > r} t^{-beta} sup_{s < t} u(s).
ConditionReport cor52_condition(const RadialFunction& u, double beta, const RadialGrid& grid = default_condition_grid());

/// Condition with u = omega(tau) tau^{n/p} and beta = n - alpha.
ConditionReport gm_condition(const RadialFunction& omega, int n, double p, double alpha,
                             const RadialGrid& grid = default_condition_grid());

/// Condition with u = omega(r) v(B(0, r))^{1/p} and beta = n - alpha.
ConditionReport thm64_condition(const RadialFunction& omega, const WeightDescriptor& v, int n, double p, double alpha,
                                const RadialGrid& grid = default_condition_grid());

/// Per center x, the Cor 5.2 quantity for u_x(tau) = omega(x, tau)
/// v(B(x, tau))^{1/p}, omega(x, tau) = A(tau) B(x); maximum over centers.
ConditionReport thm61_condition(const RadialFunction& omega_r, const WeightDescriptor& omega_x,
                                const WeightDescriptor& v, int n, double p, double alpha,
                                const std::vector<Point>& centers, const RadialGrid& grid);

/// The quantity I of the two-operator inequality, with the esssup of
/// v2/v1 outside B(0, t) taken from the radial profiles. Reports +infinity
/// when U_1 is infinite. The value is recomputed on the grid with half
/// the log step; `stable` says whether the two agree within 5%.
ConditionReport theorem51_I(const RadialFunction& u0, const RadialFunction& u1, const RadialFunction& u2,
                            const RadialFunction& v1, const RadialFunction& v2,
                            const RadialGrid& grid = default_condition_grid());
ConditionReport theorem51_I(const RadialFunction& u0, const RadialFunction& u1, const RadialFunction& u2,
                            const WeightDescriptor& v1, const WeightDescriptor& v2,
                            const RadialGrid& grid = default_condition_grid());

struct OracleOptions {
  int shells = 4;
  int mesh = 32;
  int max_shells = 6;
  double first_shell = 1.0;
  double shell_ratio = 4.0;
};

struct OracleResult {
  double value = 0.0;
  bool infinite = false;
  std::vector<double> masses;   // maximizing shell masses
  std::vector<double> radii;    // shell radii
  std::size_t evaluated = 0;    // number of mass vectors tried
};

/// Brute-force lower estimate of the best constant B: g is a combination of
/// thin shells at radii first_shell * shell_ratio^j, j < shells, with masses
/// on the simplex mesh 1/mesh. Radii candidates do not depend on `shells`,
/// so the result is nondecreasing in `shells`.
OracleResult best_constant_oracle(const RadialFunction& u0, const RadialFunction& u1, const RadialFunction& u2,
                                  const RadialFunction& v1, const RadialFunction& v2, const OracleOptions& opts = {});

/// max(I/B, B/I), the measured equivalence constant.
double equivalence_constant(double i_value, double oracle_value);

}  // namespace fracmorrey

#endif

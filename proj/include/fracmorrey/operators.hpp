#ifndef FRACMORREY_OPERATORS_HPP
#define FRACMORREY_OPERATORS_HPP

#include <optional>
#include <span>
#include <vector>

#include "fracmorrey/functions.hpp"
#include "fracmorrey/geometry.hpp"

namespace fracmorrey {

/// Cubes centered at every cell center with half-sides from a radial grid.
/// Only cubes whose cells all lie inside the box take part: sampled fields
/// such as I_alpha f do not vanish outside the box, so no value is assumed
/// there.
struct CubeFamily {
  std::vector<double> half_sides;
};

/// Half-sides from one cell width up to half the box side.
CubeFamily default_cube_family(const Domain& domain, double ratio = 1.2599210498948732);

struct OperatorParams {
  double alpha = 0.0;
  double lambda = 1.0;
  std::optional<RadialGrid> radii;   // extra radii for M_alpha
  std::optional<CubeFamily> cubes;   // for the sharp operators
};

enum class Operator { FractionalMaximal, RieszPotential, SharpMaximal, LocalSharpMaximal };

/// M_alpha f(x): max over radii r >= equal-volume cell radius of
/// |B(x,r)|^{alpha/n-1} times the mass of f on the open ball. The radius set
/// is every distance from x to a cell center, the equal-volume radius itself
/// and any extra radii passed in. Extra radii just above a lattice distance
/// count a whole shell against a barely larger ball, so they can only raise
/// the value.
double fractional_maximal(const GridFunction& f, double alpha, std::span<const double> x,
                          const std::optional<RadialGrid>& radii = std::nullopt);
GridFunction fractional_maximal_field(const GridFunction& f, double alpha,
                                      const std::optional<RadialGrid>& radii = std::nullopt);

/// I_alpha f(x) by direct summation. The cell containing x contributes
/// f(x) (n omega_n / alpha) rho_h^alpha, the integral of |y|^{alpha-n} over
/// the ball with the volume of one cell.
double riesz_potential(const GridFunction& f, double alpha, std::span<const double> x);
/// Field of I_alpha f at all cell centers by direct summation.
GridFunction riesz_potential_direct(const GridFunction& f, double alpha);
/// Same field through a zero-padded FFT convolution.
GridFunction riesz_potential_fft(const GridFunction& f, double alpha);

/// Sum over cells outside Q of f(y) |y - x0|^{alpha-n} h^n, x0 the center of Q.
double tail_integral(const GridFunction& f, const Region& q, double alpha);

/// f^#(x): max over family cubes containing x of the mean absolute
/// deviation of f about its median on the cube.
double sharp_maximal(const GridFunction& f, std::span<const double> x, const CubeFamily& family);
/// M^#_lambda f(x): max over family cubes containing x of
/// inf_c ((f - c) chi_Q)^*(lambda |Q|).
double local_sharp_maximal(const GridFunction& f, double lambda, std::span<const double> x, const CubeFamily& family);
GridFunction sharp_maximal_field(const GridFunction& f, const CubeFamily& family);
GridFunction local_sharp_maximal_field(const GridFunction& f, double lambda, const CubeFamily& family);

/// Exact infima over c for a single sample (uniform cell weights).
double mean_deviation_from_median(std::vector<double> values);
double local_oscillation(std::vector<double> values, double lambda);

/// Applies a pointwise operator at every cell center. Each entry equals the
/// pointwise operator evaluated at that center.
GridFunction field(Operator op, const GridFunction& f, const OperatorParams& params);

}  // namespace fracmorrey

#endif

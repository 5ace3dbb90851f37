#ifndef FRACMORREY_WEIGHTS_HPP
#define FRACMORREY_WEIGHTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracmorrey/functions.hpp"
#include "fracmorrey/geometry.hpp"

namespace fracmorrey {

/// Family of cubes (or balls) used to estimate class constants: sizes 2^k
/// for k in [k_min - level, k_max], centered at the origin and at dyadic
/// shifts t * size along the first axis and the diagonal. Refinement level
/// l adds the l smaller sizes.
struct WeightFamily {
  int dimension = 1;
  int k_min = -3;
  int k_max = 3;
  std::vector<double> shifts{0.5, 1.0, 2.0, 4.0};

  std::vector<double> sizes(int level) const;
  std::vector<Point> centers(double size) const;
  std::size_t count(int level) const;
};

struct ClassReport {
  std::string class_id;
  double constant = 0.0;
  bool infinite = false;
  Point extremal_center;
  double extremal_size = 0.0;        // half-side or radius
  double extremal_inner_size = 0.0;  // inner ball radius (RD only)
  Point extremal_inner_center;
  std::size_t family_count = 0;
  double size_min = 0.0;
  double size_max = 0.0;
  std::vector<double> trend;  // constants at successive refinements
  // A_infinity only
  std::vector<std::pair<double, double>> sweep;  // (p, constant)
  std::optional<double> witness_p;
  std::optional<double> subset_exponent;
};

/// True when a refinement trend signals divergence: an infinite entry, or
/// growth by a factor >= 2 at every step.
bool diverges(const std::vector<double>& trend);

/// max over cubes of (avg_Q v)(avg_Q v^{1-p'})^{p-1}, exact per-cube integrals.
ClassReport ap_constant(const WeightDescriptor& v, double p, const WeightFamily& family, int levels = 3);
/// max over cells of M v / v on sampled v at N, 2N, 4N cells per axis.
ClassReport a1_check(const WeightDescriptor& v, const Domain& domain, int levels = 3);
/// A_p sweep over p in {2, 4, 8, 16}; member when some p gives a finite
/// constant. Rejects weights that are not locally integrable.
ClassReport ainf_estimate(const WeightDescriptor& v, const WeightFamily& family, std::uint64_t seed = 1);
/// max over cubes of v(2Q)/v(Q).
ClassReport doubling_constant(const WeightDescriptor& v, const WeightFamily& family, int levels = 3);

/// Pair of nested balls B' subset B.
struct BallPair {
  Point outer_center;
  double outer_radius = 0.0;
  Point inner_center;
  double inner_radius = 0.0;
};

/// Nested pairs: outer balls from the family, inner radius R 2^{-j} for
/// j = 1 .. depth + level, inner center concentric or touching the outer
/// boundary on either side of the first axis.
std::vector<BallPair> nested_ball_pairs(const WeightFamily& family, int depth, int level);

/// max over pairs of [v(B')/v(B)] [|B|/|B'|]^beta.
ClassReport rd_constant(const WeightDescriptor& v, double beta, const std::vector<BallPair>& pairs);
ClassReport rd_constant(const WeightDescriptor& v, double beta, const WeightFamily& family, int depth = 4,
                        int levels = 3);

/// Smallest log(v(E)/v(Q)) / log(|E|/|Q|) over random unions E of subcubes
/// of the family cubes (a spot check of the A_infinity subset form).
double ainf_subset_exponent(const WeightDescriptor& v, const WeightFamily& family, std::uint64_t seed, int trials = 64,
                            int subdivisions = 8);

}  // namespace fracmorrey

#endif

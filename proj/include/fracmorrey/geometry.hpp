#ifndef FRACMORREY_GEOMETRY_HPP
#define FRACMORREY_GEOMETRY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace fracmorrey {

using Point = std::vector<double>;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);
/// |B(x, r)| = omega_n r^n.
double ball_volume(int n, double r);

/// Uniform cell-centered grid over a box with cubic cells.
///
/// Cells are stored in C order (last axis fastest). Functions sampled on a
/// domain are taken to vanish outside the box.
class Domain {
 public:
  Domain(std::vector<Interval> box, int cells_per_axis);

  int dimension() const { return static_cast<int>(box_.size()); }
  int cells_per_axis() const { return cells_; }
  std::size_t cell_count() const { return count_; }
  double cell_width() const { return h_; }
  double cell_volume() const { return volume_; }
  const std::vector<Interval>& box() const { return box_; }
  double diameter() const;

  /// Radius of the ball whose volume equals one cell.
  double equal_volume_radius() const;

  Point center(std::size_t idx) const;
  void center(std::size_t idx, std::span<double> out) const;
  std::vector<int> multi_index(std::size_t idx) const;
  std::size_t linear_index(std::span<const int> mi) const;

  /// Cell whose half-open box [a, a+h) contains x; the upper face of the
  /// domain belongs to the last cell.
  std::optional<std::size_t> locate(std::span<const double> x) const;
  /// Cell index whose center coincides with x (to 1e-9 h).
  std::optional<std::size_t> center_index(std::span<const double> x) const;
  /// True when the closed box of the cell contains the point.
  bool cell_contains(std::size_t idx, std::span<const double> x) const;

  /// Lower/upper corners of a cell.
  void cell_bounds(std::size_t idx, std::span<double> lo, std::span<double> hi) const;

  Domain refined(int factor = 2) const;

 private:
  std::vector<Interval> box_;
  int cells_;
  std::size_t count_;
  double h_;
  double volume_;
};

enum class RegionKind { Ball, Cube };

/// Cells of a domain whose centers lie strictly inside a ball or open cube.
struct Region {
  RegionKind kind = RegionKind::Ball;
  Point center;
  double radius = 0.0;  // ball radius or cube half-side
  std::vector<std::size_t> cells;
  double measure = 0.0;

  bool contains_point(std::span<const double> y) const;
  /// Continuum volume of the ball or cube (ignores the grid).
  double nominal_volume() const;
};

Region region_cells(const Domain& domain, RegionKind kind, const Point& center, double radius);

/// Geometric radius sequence r_min * ratio^k covering [r_min, r_max].
class RadialGrid {
 public:
  RadialGrid(double r_min, double r_max, double ratio);

  const std::vector<double>& radii() const { return radii_; }
  std::size_t size() const { return radii_.size(); }
  double operator[](std::size_t k) const { return radii_[k]; }
  double ratio() const { return ratio_; }
  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  double front() const { return radii_.front(); }
  double back() const { return radii_.back(); }

  /// Same range with ratio sqrt(ratio); every old radius is kept.
  RadialGrid refined() const;

 private:
  double r_min_;
  double r_max_;
  double ratio_;
  std::vector<double> radii_;
};

/// Default radius policy on a domain: from the equal-volume radius of one cell
/// up to twice the box diameter.
RadialGrid default_radial_grid(const Domain& domain, double ratio = 1.2599210498948732);

/// Integer offset vectors on a grid, sorted by squared length and grouped into
/// shells of equal length. Used for distance sweeps around cell centers.
class OffsetShells {
 public:
  OffsetShells(int dimension, int max_offset);

  int dimension() const { return dim_; }
  std::size_t size() const { return sq_norm_.size(); }
  std::span<const int> offset(std::size_t k) const {
    return {offsets_.data() + k * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  std::int64_t sq_norm(std::size_t k) const { return sq_norm_[k]; }
  /// Start index of each shell plus a final sentinel equal to size().
  const std::vector<std::size_t>& shell_starts() const { return shell_starts_; }

 private:
  int dim_;
  std::vector<int> offsets_;
  std::vector<std::int64_t> sq_norm_;
  std::vector<std::size_t> shell_starts_;
};

}  // namespace fracmorrey

#endif

#include "fracmorrey/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "fracmorrey/error.hpp"

namespace fracmorrey {

double unit_ball_volume(int n) {
  require(n >= 1, "dimension must be positive");
  const double half = 0.5 * n;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

double ball_volume(int n, double r) {
  if (n == 1) return 2.0 * r;
  return unit_ball_volume(n) * std::pow(r, n);
}

Domain::Domain(std::vector<Interval> box, int cells_per_axis) : box_(std::move(box)), cells_(cells_per_axis) {
  require(!box_.empty(), "domain needs at least one axis");
  require(cells_ >= 2, "cells per axis must be at least 2, got " + std::to_string(cells_));
  for (const auto& iv : box_)
    require(std::isfinite(iv.lo) && std::isfinite(iv.hi) && iv.lo < iv.hi, "degenerate box axis");
  h_ = (box_[0].hi - box_[0].lo) / cells_;
  for (const auto& iv : box_) {
    const double w = (iv.hi - iv.lo) / cells_;
    require(std::abs(w - h_) <= 1e-12 * h_, "all box axes must have equal length (cubic cells)");
  }
  count_ = 1;
  for (std::size_t i = 0; i < box_.size(); ++i) count_ *= static_cast<std::size_t>(cells_);
  volume_ = std::pow(h_, dimension());
}

double Domain::diameter() const {
  double s = 0.0;
  for (const auto& iv : box_) s += (iv.hi - iv.lo) * (iv.hi - iv.lo);
  return std::sqrt(s);
}

double Domain::equal_volume_radius() const {
  const int n = dimension();
  if (n == 1) return 0.5 * h_;
  return std::pow(volume_ / unit_ball_volume(n), 1.0 / n);
}

std::vector<int> Domain::multi_index(std::size_t idx) const {
  std::vector<int> mi(box_.size());
  for (int a = dimension() - 1; a >= 0; --a) {
    mi[a] = static_cast<int>(idx % cells_);
    idx /= cells_;
  }
  return mi;
}

std::size_t Domain::linear_index(std::span<const int> mi) const {
  std::size_t idx = 0;
  for (int v : mi) idx = idx * cells_ + static_cast<std::size_t>(v);
  return idx;
}

void Domain::center(std::size_t idx, std::span<double> out) const {
  for (int a = dimension() - 1; a >= 0; --a) {
    const auto j = static_cast<double>(idx % cells_);
    idx /= cells_;
    out[a] = box_[a].lo + (j + 0.5) * h_;
  }
}

Point Domain::center(std::size_t idx) const {
  Point p(box_.size());
  center(idx, p);
  return p;
}

void Domain::cell_bounds(std::size_t idx, std::span<double> lo, std::span<double> hi) const {
  for (int a = dimension() - 1; a >= 0; --a) {
    const auto j = static_cast<double>(idx % cells_);
    idx /= cells_;
    lo[a] = box_[a].lo + j * h_;
    hi[a] = lo[a] + h_;
  }
}

std::optional<std::size_t> Domain::locate(std::span<const double> x) const {
  require(static_cast<int>(x.size()) == dimension(), "point dimension mismatch");
  std::size_t idx = 0;
  for (int a = 0; a < dimension(); ++a) {
    if (x[a] < box_[a].lo || x[a] > box_[a].hi) return std::nullopt;
    auto j = static_cast<long>(std::floor((x[a] - box_[a].lo) / h_));
    j = std::clamp<long>(j, 0, cells_ - 1);
    idx = idx * cells_ + static_cast<std::size_t>(j);
  }
  return idx;
}

std::optional<std::size_t> Domain::center_index(std::span<const double> x) const {
  std::size_t idx = 0;
  for (int a = 0; a < dimension(); ++a) {
    const double t = (x[a] - box_[a].lo) / h_ - 0.5;
    const double j = std::round(t);
    if (std::abs(t - j) > 1e-9 || j < 0 || j >= cells_) return std::nullopt;
    idx = idx * cells_ + static_cast<std::size_t>(j);
  }
  return idx;
}

bool Domain::cell_contains(std::size_t idx, std::span<const double> x) const {
  for (int a = dimension() - 1; a >= 0; --a) {
    const auto j = static_cast<double>(idx % cells_);
    idx /= cells_;
    const double lo = box_[a].lo + j * h_;
    if (x[a] < lo || x[a] > lo + h_) return false;
  }
  return true;
}

Domain Domain::refined(int factor) const { return Domain(box_, cells_ * factor); }

bool Region::contains_point(std::span<const double> y) const {
  if (kind == RegionKind::Ball) {
    double s = 0.0;
    for (std::size_t a = 0; a < y.size(); ++a) s += (y[a] - center[a]) * (y[a] - center[a]);
    return s < radius * radius;
  }
  for (std::size_t a = 0; a < y.size(); ++a)
    if (!(std::abs(y[a] - center[a]) < radius)) return false;
  return true;
}

double Region::nominal_volume() const {
  const int n = static_cast<int>(center.size());
  return kind == RegionKind::Ball ? ball_volume(n, radius) : std::pow(2.0 * radius, n);
}

Region region_cells(const Domain& domain, RegionKind kind, const Point& center, double radius) {
  require(radius > 0.0 && std::isfinite(radius), "region radius must be positive");
  require(static_cast<int>(center.size()) == domain.dimension(), "region center dimension mismatch");
  Region reg{kind, center, radius, {}, 0.0};
  const int n = domain.dimension();
  const int N = domain.cells_per_axis();
  const double h = domain.cell_width();
  std::vector<int> lo(n), hi(n);
  for (int a = 0; a < n; ++a) {
    const double a0 = domain.box()[a].lo;
    lo[a] = std::max(0, static_cast<int>(std::floor((center[a] - radius - a0) / h - 0.5)));
    hi[a] = std::min(N - 1, static_cast<int>(std::ceil((center[a] + radius - a0) / h - 0.5)));
    if (lo[a] > hi[a]) return reg;
  }
  std::vector<int> mi = lo;
  Point y(n);
  while (true) {
    for (int a = 0; a < n; ++a) y[a] = domain.box()[a].lo + (mi[a] + 0.5) * h;
    if (reg.contains_point(y)) reg.cells.push_back(domain.linear_index(mi));
    int a = n - 1;
    while (a >= 0 && ++mi[a] > hi[a]) {
      mi[a] = lo[a];
      --a;
    }
    if (a < 0) break;
  }
  reg.measure = static_cast<double>(reg.cells.size()) * domain.cell_volume();
  return reg;
}

RadialGrid::RadialGrid(double r_min, double r_max, double ratio) : r_min_(r_min), r_max_(r_max), ratio_(ratio) {
  require(r_min > 0.0 && std::isfinite(r_min), "radial grid needs r_min > 0");
  require(r_max > r_min && std::isfinite(r_max), "radial grid needs r_max > r_min");
  require(ratio > 1.0 && std::isfinite(ratio), "radial grid ratio must exceed 1");
  const double steps = std::log(r_max / r_min) / std::log(ratio);
  const auto K = static_cast<long>(std::ceil(steps - 1e-9));
  radii_.reserve(static_cast<std::size_t>(K) + 1);
  for (long k = 0; k <= K; ++k) radii_.push_back(r_min * std::pow(ratio, static_cast<double>(k)));
  if (radii_.back() < r_max) radii_.push_back(r_min * std::pow(ratio, static_cast<double>(K + 1)));
}

RadialGrid RadialGrid::refined() const {
  RadialGrid g(r_min_, r_max_, std::sqrt(ratio_));
  // Interleave so the coarse radii are reproduced bit for bit.
  std::vector<double> radii;
  radii.reserve(2 * radii_.size());
  for (std::size_t k = 0; k < radii_.size(); ++k) {
    radii.push_back(radii_[k]);
    if (k + 1 < radii_.size()) radii.push_back(radii_[k] * g.ratio_);
  }
  g.radii_ = std::move(radii);
  return g;
}

RadialGrid default_radial_grid(const Domain& domain, double ratio) {
  return RadialGrid(domain.equal_volume_radius(), 2.0 * domain.diameter(), ratio);
}

OffsetShells::OffsetShells(int dimension, int max_offset) : dim_(dimension) {
  require(dimension >= 1 && max_offset >= 0, "invalid offset shell request");
  const int side = 2 * max_offset + 1;
  std::size_t total = 1;
  for (int a = 0; a < dimension; ++a) total *= static_cast<std::size_t>(side);
  std::vector<int> raw(total * dimension);
  std::vector<std::int64_t> sq(total);
  std::vector<int> mi(dimension, -max_offset);
  for (std::size_t k = 0; k < total; ++k) {
    std::int64_t s = 0;
    for (int a = 0; a < dimension; ++a) {
      raw[k * dimension + a] = mi[a];
      s += static_cast<std::int64_t>(mi[a]) * mi[a];
    }
    sq[k] = s;
    for (int a = dimension - 1; a >= 0; --a) {
      if (++mi[a] <= max_offset) break;
      mi[a] = -max_offset;
    }
  }
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sq[a] < sq[b]; });
  offsets_.resize(raw.size());
  sq_norm_.resize(total);
  for (std::size_t k = 0; k < total; ++k) {
    std::copy_n(raw.begin() + static_cast<std::ptrdiff_t>(order[k] * dimension), dimension,
                offsets_.begin() + static_cast<std::ptrdiff_t>(k * dimension));
    sq_norm_[k] = sq[order[k]];
    if (k == 0 || sq_norm_[k] != sq_norm_[k - 1]) shell_starts_.push_back(k);
  }
  shell_starts_.push_back(total);
}

}  // namespace fracmorrey

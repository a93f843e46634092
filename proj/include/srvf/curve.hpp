#pragma once

// Piecewise-linear curves, piecewise-constant square-root velocity functions
// and weakly increasing reparametrisations of [0,1], all stored on explicit
// strictly increasing knot vectors. Uniform grids are the common case but
// composition and remodelling produce refined non-uniform partitions, so the
// knots are always carried.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace srvf {

// Snap tolerance for partition endpoints and for clamping reparametrisation
// values that lose monotonicity to rounding. Larger violations are errors.
inline constexpr double knot_snap_tol = 1e-12;

// Curves must start at the origin; offsets up to this are snapped away.
inline constexpr double anchor_tol = 1e-9;

namespace detail {

inline void check_finite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x))
      throw std::invalid_argument(std::string(what) + ": non-finite value");
  }
}

}  // namespace detail

// Validates t_0 = 0 < t_1 < ... < t_n = 1, snapping the endpoints.
inline void validate_partition(std::vector<double>& knots) {
  if (knots.size() < 2)
    throw std::invalid_argument("partition: need at least two knots");
  detail::check_finite(knots, "partition");
  if (std::abs(knots.front()) > knot_snap_tol)
    throw std::invalid_argument("partition: must start at 0");
  if (std::abs(knots.back() - 1.0) > knot_snap_tol)
    throw std::invalid_argument("partition: must end at 1");
  knots.front() = 0.0;
  knots.back() = 1.0;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i] > knots[i - 1]))
      throw std::invalid_argument("partition: knots must be strictly increasing");
  }
}

inline std::vector<double> uniform_knots(std::size_t cells) {
  if (cells == 0) throw std::invalid_argument("partition: need at least one cell");
  std::vector<double> k(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i)
    k[i] = static_cast<double>(i) / static_cast<double>(cells);
  k.back() = 1.0;
  return k;
}

// Sorted union of two partitions, exact duplicates removed.
inline std::vector<double> merge_knots(const std::vector<double>& a,
                                       const std::vector<double>& b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Index of the cell [t_i, t_{i+1}) containing t; the last cell is closed.
inline std::size_t cell_index(const std::vector<double>& knots, double t) {
  auto it = std::upper_bound(knots.begin(), knots.end(), t);
  if (it == knots.begin()) return 0;
  std::size_t i = static_cast<std::size_t>(it - knots.begin()) - 1;
  return std::min(i, knots.size() - 2);
}

// Absolutely continuous curve c: [0,1] -> R^d, piecewise linear between
// samples, anchored at c(0) = 0.
class Curve {
 public:
  Curve(std::size_t dim, std::vector<double> knots, std::vector<double> samples)
      : dim_(dim), knots_(std::move(knots)), samples_(std::move(samples)) {
    if (dim_ == 0) throw std::invalid_argument("curve: dimension must be positive");
    validate_partition(knots_);
    if (samples_.size() != knots_.size() * dim_)
      throw std::invalid_argument("curve: sample count does not match knots * dim");
    detail::check_finite(samples_, "curve samples");
    for (std::size_t k = 0; k < dim_; ++k) {
      if (std::abs(samples_[k]) > anchor_tol)
        throw std::invalid_argument("curve: must start at the origin");
      samples_[k] = 0.0;
    }
  }

  static Curve uniform(std::size_t dim, std::vector<double> samples) {
    if (dim == 0 || samples.size() % dim != 0 || samples.size() / dim < 2)
      throw std::invalid_argument("curve: need at least two sample points");
    const std::size_t cells = samples.size() / dim - 1;
    return Curve(dim, uniform_knots(cells), std::move(samples));
  }

  std::size_t dim() const { return dim_; }
  std::size_t cells() const { return knots_.size() - 1; }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& samples() const { return samples_; }

  std::span<const double> point(std::size_t i) const {
    return {samples_.data() + i * dim_, dim_};
  }

  // Linear interpolation; exact at knots.
  void eval(double t, std::span<double> out) const {
    const std::size_t i = cell_index(knots_, t);
    const auto a = point(i);
    const auto b = point(i + 1);
    if (t == knots_[i]) {
      std::copy(a.begin(), a.end(), out.begin());
    } else if (t == knots_[i + 1]) {
      std::copy(b.begin(), b.end(), out.begin());
    } else {
      const double s = (t - knots_[i]) / (knots_[i + 1] - knots_[i]);
      for (std::size_t k = 0; k < dim_; ++k) out[k] = a[k] + s * (b[k] - a[k]);
    }
  }

  std::vector<double> at(double t) const {
    std::vector<double> out(dim_);
    eval(t, out);
    return out;
  }

 private:
  std::size_t dim_;
  std::vector<double> knots_;
  std::vector<double> samples_;
};

// Square-root velocity function: one constant value per cell.
class Srvf {
 public:
  Srvf(std::size_t dim, std::vector<double> knots, std::vector<double> cells)
      : dim_(dim), knots_(std::move(knots)), cells_(std::move(cells)) {
    if (dim_ == 0) throw std::invalid_argument("srvf: dimension must be positive");
    validate_partition(knots_);
    if (cells_.size() != (knots_.size() - 1) * dim_)
      throw std::invalid_argument("srvf: cell count does not match knots * dim");
    detail::check_finite(cells_, "srvf cells");
  }

  static Srvf uniform(std::size_t dim, std::vector<double> cells) {
    if (dim == 0 || cells.size() % dim != 0 || cells.size() / dim < 1)
      throw std::invalid_argument("srvf: need at least one cell");
    const std::size_t n = cells.size() / dim;
    return Srvf(dim, uniform_knots(n), std::move(cells));
  }

  std::size_t dim() const { return dim_; }
  std::size_t cells() const { return knots_.size() - 1; }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return cells_; }

  std::span<const double> cell(std::size_t i) const {
    return {cells_.data() + i * dim_, dim_};
  }

  // Right-continuous step lookup.
  std::span<const double> at(double t) const { return cell(cell_index(knots_, t)); }

 private:
  std::size_t dim_;
  std::vector<double> knots_;
  std::vector<double> cells_;
};

// Weakly increasing surjective reparametrisation of [0,1], piecewise linear.
// Strictly increasing ones are invertible; the rest only act from the right.
class Warp {
 public:
  Warp(std::vector<double> knots, std::vector<double> values)
      : knots_(std::move(knots)), values_(std::move(values)) {
    validate_partition(knots_);
    if (values_.size() != knots_.size())
      throw std::invalid_argument("warp: value count does not match knots");
    detail::check_finite(values_, "warp values");
    if (std::abs(values_.front()) > knot_snap_tol)
      throw std::invalid_argument("warp: must map 0 to 0");
    if (std::abs(values_.back() - 1.0) > knot_snap_tol)
      throw std::invalid_argument("warp: must map 1 to 1");
    values_.front() = 0.0;
    values_.back() = 1.0;
    strict_ = true;
    for (std::size_t i = 1; i < values_.size(); ++i) {
      if (values_[i] < values_[i - 1]) {
        if (values_[i - 1] - values_[i] > knot_snap_tol)
          throw std::invalid_argument("warp: values must be non-decreasing");
        values_[i] = values_[i - 1];
      }
      if (values_[i] == values_[i - 1]) strict_ = false;
    }
  }

  static Warp identity(std::size_t cells) {
    auto k = uniform_knots(cells);
    return Warp(k, k);
  }

  std::size_t cells() const { return knots_.size() - 1; }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }
  bool strict() const { return strict_; }

  double at(double t) const {
    const std::size_t i = cell_index(knots_, t);
    if (t == knots_[i]) return values_[i];
    if (t == knots_[i + 1]) return values_[i + 1];
    const double s = (t - knots_[i]) / (knots_[i + 1] - knots_[i]);
    return values_[i] + s * (values_[i + 1] - values_[i]);
  }

  // Inverse of a strictly increasing warp: swap knots and values.
  Warp inverse() const {
    if (!strict_)
      throw std::domain_error("warp: only strictly increasing warps are invertible");
    return Warp(values_, knots_);
  }

 private:
  std::vector<double> knots_;
  std::vector<double> values_;
  bool strict_;
};

// Interpolates a curve onto a superset of its knots; the result is the same
// function on a finer partition.
inline Curve refine(const Curve& c, const std::vector<double>& knots) {
  std::vector<double> k = knots;
  validate_partition(k);
  std::vector<double> samples(k.size() * c.dim());
  for (std::size_t i = 0; i < k.size(); ++i)
    c.eval(k[i], {samples.data() + i * c.dim(), c.dim()});
  return Curve(c.dim(), std::move(k), std::move(samples));
}

}  // namespace srvf

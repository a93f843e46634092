#pragma once

// The square-root velocity transform and the norms around it. For piecewise
// linear curves the transform is a per-cell map of the derivative, so the
// usual identities (norm preservation, invertibility) hold to rounding error
// rather than to discretisation error.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "srvf/curve.hpp"

namespace srvf {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// v |-> v / sqrt(|v|), extended by 0 at the origin. Continuous but only
// 1/2-Hoelder: |V(a) - V(b)| <= sqrt(2 |a - b|).
inline void sqrt_velocity(std::span<const double> v, std::span<double> out) {
  const double n = norm(v);
  if (n == 0.0) {
    for (auto& x : out) x = 0.0;
    return;
  }
  const double f = 1.0 / std::sqrt(n);
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k] * f;
}

inline std::vector<double> sqrt_velocity(std::span<const double> v) {
  std::vector<double> out(v.size());
  sqrt_velocity(v, out);
  return out;
}

// R(c) = c' / sqrt(|c'|), cell by cell.
inline Srvf srvt(const Curve& c) {
  const std::size_t d = c.dim();
  std::vector<double> cells(c.cells() * d);
  std::vector<double> deriv(d);
  for (std::size_t i = 0; i < c.cells(); ++i) {
    const double dt = c.knots()[i + 1] - c.knots()[i];
    const auto a = c.point(i);
    const auto b = c.point(i + 1);
    for (std::size_t k = 0; k < d; ++k) deriv[k] = (b[k] - a[k]) / dt;
    sqrt_velocity(deriv, {cells.data() + i * d, d});
  }
  return Srvf(d, c.knots(), std::move(cells));
}

// R^{-1}(q)(t) = integral of q|q|; inverse of srvt up to rounding.
inline Curve srvt_inverse(const Srvf& q) {
  const std::size_t d = q.dim();
  std::vector<double> samples((q.cells() + 1) * d, 0.0);
  for (std::size_t i = 0; i < q.cells(); ++i) {
    const double dt = q.knots()[i + 1] - q.knots()[i];
    const auto v = q.cell(i);
    const double n = norm(v);
    for (std::size_t k = 0; k < d; ++k)
      samples[(i + 1) * d + k] = samples[i * d + k] + v[k] * n * dt;
  }
  return Curve(d, q.knots(), std::move(samples));
}

// |c(0)| + total variation; equals the squared L2 norm of srvt(c).
inline double ac_norm(const Curve& c) {
  double s = 0.0;
  std::vector<double> diff(c.dim());
  for (std::size_t i = 0; i < c.cells(); ++i) {
    const auto a = c.point(i);
    const auto b = c.point(i + 1);
    for (std::size_t k = 0; k < c.dim(); ++k) diff[k] = b[k] - a[k];
    s += norm(diff);
  }
  return s;
}

inline double l2_norm_sq(const Srvf& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < q.cells(); ++i)
    s += dot(q.cell(i), q.cell(i)) * (q.knots()[i + 1] - q.knots()[i]);
  return s;
}

inline double l2_norm(const Srvf& q) { return std::sqrt(l2_norm_sq(q)); }

namespace detail {

template <class F>
void for_merged_cells(const std::vector<double>& ka, const std::vector<double>& kb,
                      F&& f) {
  const auto merged = merge_knots(ka, kb);
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    const double mid = 0.5 * (merged[i] + merged[i + 1]);
    f(cell_index(ka, mid), cell_index(kb, mid), merged[i + 1] - merged[i]);
  }
}

}  // namespace detail

inline double l2_inner(const Srvf& p, const Srvf& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("l2_inner: dimension mismatch");
  double s = 0.0;
  detail::for_merged_cells(p.knots(), q.knots(),
                           [&](std::size_t i, std::size_t j, double dt) {
                             s += dot(p.cell(i), q.cell(j)) * dt;
                           });
  return s;
}

inline double l2_distance(const Srvf& p, const Srvf& q) {
  if (p.dim() != q.dim())
    throw std::invalid_argument("l2_distance: dimension mismatch");
  double s = 0.0;
  std::vector<double> diff(p.dim());
  detail::for_merged_cells(p.knots(), q.knots(),
                           [&](std::size_t i, std::size_t j, double dt) {
                             const auto a = p.cell(i);
                             const auto b = q.cell(j);
                             for (std::size_t k = 0; k < diff.size(); ++k)
                               diff[k] = a[k] - b[k];
                             s += dot(diff, diff) * dt;
                           });
  return std::sqrt(s);
}

// ||b - c||_AC over the merged partition; both curves are linear on every
// merged cell, so the integral of |b' - c'| is a finite sum.
inline double ac_distance(const Curve& b, const Curve& c) {
  if (b.dim() != c.dim()) throw std::invalid_argument("ac_distance: dimension mismatch");
  const auto merged = merge_knots(b.knots(), c.knots());
  const Curve br = refine(b, merged);
  const Curve cr = refine(c, merged);
  double s = 0.0;
  std::vector<double> diff(b.dim());
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    const auto b0 = br.point(i), b1 = br.point(i + 1);
    const auto c0 = cr.point(i), c1 = cr.point(i + 1);
    for (std::size_t k = 0; k < diff.size(); ++k)
      diff[k] = (b1[k] - b0[k]) - (c1[k] - c0[k]);
    s += norm(diff);
  }
  return s;
}

inline double ac_distance(const Warp& a, const Warp& b) {
  const auto merged = merge_knots(a.knots(), b.knots());
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < merged.size(); ++i)
    s += std::abs((a.at(merged[i + 1]) - a.at(merged[i])) -
                  (b.at(merged[i + 1]) - b.at(merged[i])));
  return s;
}

// Linear resample onto a uniform grid.
inline Curve resample(const Curve& c, std::size_t cells) {
  const auto knots = uniform_knots(cells);
  std::vector<double> samples((cells + 1) * c.dim());
  for (std::size_t i = 0; i <= cells; ++i)
    c.eval(knots[i], {samples.data() + i * c.dim(), c.dim()});
  return Curve(c.dim(), knots, std::move(samples));
}

// Directional difference quotient ||R(c + eps h) - R(c)|| / eps for a
// perturbation h whose derivative lives where c is flat. There the transform
// is not differentiable: the quotient grows like eps^{-1/2}, so halving eps
// twice doubles the value. Computed cell-wise from exact derivative
// differences; forming c + eps h in samples first would drown the small-eps
// values in rounding noise.
inline std::vector<double> probe_nondifferentiability(
    const Curve& c, const Curve& h, std::span<const double> eps_list) {
  if (c.dim() != h.dim())
    throw std::invalid_argument("probe: dimension mismatch");
  const auto merged = merge_knots(c.knots(), h.knots());
  const Curve cr = refine(c, merged);
  const Curve hr = refine(h, merged);
  const std::size_t d = c.dim();
  const std::size_t n = merged.size() - 1;

  std::vector<double> dc(n * d), dh(n * d), dts(n);
  for (std::size_t i = 0; i < n; ++i) {
    dts[i] = merged[i + 1] - merged[i];
    bool h_moves = false;
    for (std::size_t k = 0; k < d; ++k) {
      dc[i * d + k] = cr.point(i + 1)[k] - cr.point(i)[k];
      dh[i * d + k] = hr.point(i + 1)[k] - hr.point(i)[k];
      if (dh[i * d + k] != 0.0) h_moves = true;
    }
    if (h_moves) {
      for (std::size_t k = 0; k < d; ++k) {
        if (dc[i * d + k] != 0.0)
          throw std::domain_error("probe: h' must be supported where c' vanishes");
      }
    }
  }

  std::vector<double> values;
  values.reserve(eps_list.size());
  std::vector<double> v0(d), v1(d), arg(d);
  for (double eps : eps_list) {
    if (!(eps > 0.0)) throw std::invalid_argument("probe: eps must be positive");
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < d; ++k) arg[k] = dc[i * d + k] / dts[i];
      sqrt_velocity(arg, v0);
      for (std::size_t k = 0; k < d; ++k)
        arg[k] = (dc[i * d + k] + eps * dh[i * d + k]) / dts[i];
      sqrt_velocity(arg, v1);
      double cell = 0.0;
      for (std::size_t k = 0; k < d; ++k) cell += (v1[k] - v0[k]) * (v1[k] - v0[k]);
      sum += cell * dts[i];
    }
    values.push_back(std::sqrt(sum) / eps);
  }
  return values;
}

}  // namespace srvf

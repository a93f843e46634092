#pragma once

// Right action of the reparametrisation semigroup on curves and the induced
// linear isometric action on SRVFs. Results live on refined partitions built
// from exact preimages, so composition stays exact for piecewise linear data:
// every preimage node carries the target value it maps to instead of being
// re-interpolated later.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "srvf/curve.hpp"
#include "srvf/transform.hpp"

namespace srvf {
namespace detail {

struct WarpNode {
  double t;  // point in the domain of the warp
  double v;  // exact value the warp takes there
};

// Nodes of g refined so that every interior target knot with a strict
// preimage appears with its exact image value. Target knots hit inside flat
// stretches need no node: the warp never crosses them.
inline std::vector<WarpNode> refine_against(const Warp& g,
                                            const std::vector<double>& target_knots) {
  const auto& kn = g.knots();
  const auto& vals = g.values();
  std::vector<WarpNode> nodes;
  nodes.reserve(kn.size() + target_knots.size());
  for (std::size_t i = 0; i < kn.size(); ++i) nodes.push_back({kn[i], vals[i]});
  for (std::size_t s = 1; s + 1 < target_knots.size(); ++s) {
    const double y = target_knots[s];
    auto it = std::upper_bound(vals.begin(), vals.end(), y);
    if (it == vals.begin() || it == vals.end()) continue;
    const std::size_t j = static_cast<std::size_t>(it - vals.begin());
    const std::size_t i = j - 1;
    if (vals[i] < y) {  // strictly spanned: one exact preimage in cell i
      const double t =
          kn[i] + (y - vals[i]) / (vals[i + 1] - vals[i]) * (kn[i + 1] - kn[i]);
      nodes.push_back({t, y});
    }
  }
  std::stable_sort(nodes.begin(), nodes.end(),
                   [](const WarpNode& a, const WarpNode& b) { return a.t < b.t; });
  // keep the first node at any t; drop nodes rounding onto an earlier one
  std::vector<WarpNode> out;
  out.reserve(nodes.size());
  for (const auto& n : nodes) {
    if (out.empty() || n.t > out.back().t) out.push_back(n);
  }
  return out;
}

}  // namespace detail

// c restricted along gamma: (c o gamma)(t). Exact for piecewise linear c.
inline Curve compose(const Curve& c, const Warp& gamma) {
  const auto nodes = detail::refine_against(gamma, c.knots());
  const std::size_t d = c.dim();
  std::vector<double> knots(nodes.size());
  std::vector<double> samples(nodes.size() * d);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    knots[i] = nodes[i].t;
    c.eval(nodes[i].v, {samples.data() + i * d, d});
  }
  return Curve(d, std::move(knots), std::move(samples));
}

// outer o inner, both warps.
inline Warp compose(const Warp& outer, const Warp& inner) {
  const auto nodes = detail::refine_against(inner, outer.knots());
  std::vector<double> knots(nodes.size());
  std::vector<double> values(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    knots[i] = nodes[i].t;
    values[i] = outer.at(nodes[i].v);
  }
  return Warp(std::move(knots), std::move(values));
}

// (q * gamma)(t) = q(gamma(t)) sqrt(gamma'(t)). Linear in q, isometric for
// strictly increasing gamma, and intertwines srvt with composition:
// srvt(compose(c, gamma)) == srvf_action(srvt(c), gamma).
inline Srvf srvf_action(const Srvf& q, const Warp& gamma) {
  const auto nodes = detail::refine_against(gamma, q.knots());
  const std::size_t d = q.dim();
  std::vector<double> knots(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) knots[i] = nodes[i].t;
  std::vector<double> cells((nodes.size() - 1) * d, 0.0);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double dv = nodes[i + 1].v - nodes[i].v;
    if (dv <= 0.0) continue;  // flat stretch: q * gamma vanishes
    const double m = dv / (nodes[i + 1].t - nodes[i].t);
    const double root = std::sqrt(m);
    const auto src = q.at(0.5 * (nodes[i].v + nodes[i + 1].v));
    for (std::size_t k = 0; k < d; ++k) cells[i * d + k] = src[k] * root;
  }
  return Srvf(d, std::move(knots), std::move(cells));
}

// Constant-speed representative and the warp recovering the original:
// compose(canonical, warp) == c exactly. Cells of zero length collapse, so
// the canonical curve of a curve with flat stretches has fewer knots.
inline std::pair<Curve, Warp> constant_speed(const Curve& c) {
  const std::size_t d = c.dim();
  const std::size_t n = c.cells();
  std::vector<double> cum(n + 1, 0.0);
  std::vector<double> diff(d);
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = c.point(i);
    const auto b = c.point(i + 1);
    for (std::size_t k = 0; k < d; ++k) diff[k] = b[k] - a[k];
    cum[i + 1] = cum[i] + norm(diff);
  }
  const double total = cum[n];
  if (total == 0.0) {
    // the zero curve is its own representative
    return {c, Warp(c.knots(), c.knots())};
  }
  std::vector<double> u(n + 1);
  for (std::size_t i = 0; i <= n; ++i) u[i] = cum[i] / total;
  u[n] = 1.0;

  std::vector<double> knots;
  std::vector<double> samples;
  knots.reserve(n + 1);
  samples.reserve((n + 1) * d);
  for (std::size_t i = 0; i <= n; ++i) {
    if (i > 0 && u[i] == knots.back()) continue;  // zero-length cell: same point
    knots.push_back(u[i]);
    const auto pt = c.point(i);
    samples.insert(samples.end(), pt.begin(), pt.end());
  }
  Curve canonical(d, std::move(knots), std::move(samples));
  Warp gamma(c.knots(), std::move(u));
  return {std::move(canonical), std::move(gamma)};
}

}  // namespace srvf

#pragma once

// The matching functional behind the quotient distance, and the remodelling
// step that strips negative contributions from a pair of reparametrisations.
// Everything here reduces to finite sums: the integrand is constant on every
// piece of a common refinement, so the splitter below is the one place that
// has to be careful.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "srvf/action.hpp"
#include "srvf/curve.hpp"
#include "srvf/transform.hpp"

namespace srvf {

// Parametrised elastic distance: plain L2 between the transforms.
inline double dist_param(const Curve& b, const Curve& c) {
  return l2_distance(srvt(b), srvt(c));
}

namespace detail {

// One interval on which beta and gamma are linear and their images stay
// inside single cells of p and q respectively.
struct MatchPiece {
  double t0, t1;
  double b0, b1;  // beta values at the ends
  double g0, g1;  // gamma values at the ends
  std::size_t pi, qi;
  double dot;  // <p_pi, q_qi>
};

inline std::vector<MatchPiece> match_pieces(const Srvf& p, const Srvf& q,
                                            const Warp& beta, const Warp& gamma) {
  if (p.dim() != q.dim())
    throw std::invalid_argument("matching: dimension mismatch");
  const auto nb = refine_against(beta, p.knots());
  const auto ng = refine_against(gamma, q.knots());

  // combined node list over the union of both t-grids, with the other warp
  // interpolated wherever it has no node of its own
  std::vector<double> ts;
  ts.reserve(nb.size() + ng.size());
  {
    std::size_t i = 0, j = 0;
    while (i < nb.size() || j < ng.size()) {
      double t;
      if (j == ng.size() || (i < nb.size() && nb[i].t <= ng[j].t))
        t = nb[i].t;
      else
        t = ng[j].t;
      while (i < nb.size() && nb[i].t <= t) ++i;
      while (j < ng.size() && ng[j].t <= t) ++j;
      ts.push_back(t);
    }
  }

  auto value_at = [](const std::vector<WarpNode>& nodes, std::size_t& cursor,
                     double t) {
    while (cursor + 1 < nodes.size() && nodes[cursor + 1].t <= t) ++cursor;
    if (nodes[cursor].t == t) return nodes[cursor].v;
    const auto& a = nodes[cursor];
    const auto& b = nodes[cursor + 1];
    return a.v + (t - a.t) / (b.t - a.t) * (b.v - a.v);
  };

  std::vector<MatchPiece> pieces;
  pieces.reserve(ts.size());
  std::size_t cb = 0, cg = 0;
  double bprev = 0.0, gprev = 0.0;
  for (std::size_t i = 1; i < ts.size(); ++i) {
    MatchPiece pc;
    pc.t0 = ts[i - 1];
    pc.t1 = ts[i];
    pc.b0 = bprev;
    pc.b1 = value_at(nb, cb, ts[i]);
    pc.g0 = gprev;
    pc.g1 = value_at(ng, cg, ts[i]);
    pc.pi = cell_index(p.knots(), 0.5 * (pc.b0 + pc.b1));
    pc.qi = cell_index(q.knots(), 0.5 * (pc.g0 + pc.g1));
    pc.dot = dot(p.cell(pc.pi), q.cell(pc.qi));
    bprev = pc.b1;
    gprev = pc.g1;
    pieces.push_back(pc);
  }
  return pieces;
}

inline double piece_weight(const MatchPiece& pc) {
  const double db = pc.b1 - pc.b0;
  const double dg = pc.g1 - pc.g0;
  if (db <= 0.0 || dg <= 0.0) return 0.0;
  const double dt = pc.t1 - pc.t0;
  return std::sqrt((db / dt) * (dg / dt)) * dt;
}

}  // namespace detail

// integral of <p(beta), q(gamma)> sqrt(beta') sqrt(gamma') dt. The supremum
// of this over pairs of warps is what the quotient distance subtracts.
inline double matching_functional(const Srvf& p, const Srvf& q, const Warp& beta,
                                  const Warp& gamma) {
  double s = 0.0;
  for (const auto& pc : detail::match_pieces(p, q, beta, gamma))
    s += pc.dot * detail::piece_weight(pc);
  return s;
}

// Same integral restricted to the set where the integrand's inner product is
// non-negative; remodelled pairs attain exactly this.
inline double matching_functional_nonneg(const Srvf& p, const Srvf& q,
                                         const Warp& beta, const Warp& gamma) {
  double s = 0.0;
  for (const auto& pc : detail::match_pieces(p, q, beta, gamma))
    if (pc.dot >= 0.0) s += pc.dot * detail::piece_weight(pc);
  return s;
}

// Rebuilds (beta, gamma) so the matching integrand never goes negative: on
// every maximal interval where <p(beta), q(gamma)> < 0, beta runs through its
// whole stretch in the first half at double speed and then waits, gamma waits
// and then catches up in the second half. At any time one of the two rates
// vanishes, so the interval contributes exactly zero, and outside these
// intervals nothing changes.
inline std::pair<Warp, Warp> remodel_pair(const Srvf& p, const Srvf& q,
                                          const Warp& beta, const Warp& gamma) {
  const auto pieces = detail::match_pieces(p, q, beta, gamma);

  // maximal runs of negative pieces
  std::vector<std::pair<double, double>> comps;
  for (std::size_t i = 0; i < pieces.size();) {
    if (pieces[i].dot < 0.0) {
      double lo = pieces[i].t0;
      double hi = pieces[i].t1;
      std::size_t j = i + 1;
      while (j < pieces.size() && pieces[j].dot < 0.0 && pieces[j].t0 == hi) {
        hi = pieces[j].t1;
        ++j;
      }
      comps.emplace_back(lo, hi);
      i = j;
    } else {
      ++i;
    }
  }
  if (comps.empty()) return {beta, gamma};

  // node lists (t, value) for the piece grid
  std::vector<detail::WarpNode> bn, gn;
  bn.push_back({pieces.front().t0, pieces.front().b0});
  gn.push_back({pieces.front().t0, pieces.front().g0});
  for (const auto& pc : pieces) {
    bn.push_back({pc.t1, pc.b1});
    gn.push_back({pc.t1, pc.g1});
  }

  auto rebuild = [&comps](const std::vector<detail::WarpNode>& nodes, bool lead) {
    std::vector<double> knots, values;
    knots.reserve(nodes.size() + 2 * comps.size());
    values.reserve(nodes.size() + 2 * comps.size());
    std::size_t ci = 0;
    auto push = [&](double t, double v) {
      if (!knots.empty() && t <= knots.back()) return;
      knots.push_back(t);
      values.push_back(v);
    };
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double t = nodes[i].t;
      while (ci < comps.size() && t > comps[ci].second) ++ci;
      if (ci == comps.size() || t < comps[ci].first) {
        push(t, nodes[i].v);
        continue;
      }
      // inside component [lo, hi]
      const double lo = comps[ci].first;
      const double hi = comps[ci].second;
      if (lead) {
        // compressed copy on [lo, mid], constant afterwards
        push(0.5 * (t + lo), nodes[i].v);
        if (t == hi) push(hi, nodes[i].v);
      } else {
        // constant on [lo, mid], compressed copy on [mid, hi]
        if (t == lo) push(lo, nodes[i].v);
        push(0.5 * (t + hi), nodes[i].v);
      }
    }
    return Warp(std::move(knots), std::move(values));
  };

  return {rebuild(bn, true), rebuild(gn, false)};
}

// Straight-line geodesic between the transforms, mapped back to curves; the
// parametrised metric is flat, so this is the geodesic for dist_param and an
// upper-bound path for the quotient. Endpoints reproduce b and c exactly.
inline Curve geodesic(const Curve& b, const Curve& c, double s) {
  if (b.dim() != c.dim()) throw std::invalid_argument("geodesic: dimension mismatch");
  if (!(s >= 0.0 && s <= 1.0))
    throw std::invalid_argument("geodesic: parameter must lie in [0,1]");
  const auto merged = merge_knots(b.knots(), c.knots());
  const Srvf p = srvt(refine(b, merged));
  const Srvf q = srvt(refine(c, merged));
  std::vector<double> cells(p.values().size());
  for (std::size_t i = 0; i < cells.size(); ++i)
    cells[i] = (1.0 - s) * p.values()[i] + s * q.values()[i];
  return srvt_inverse(Srvf(p.dim(), merged, std::move(cells)));
}

}  // namespace srvf

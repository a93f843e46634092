#pragma once

// Dynamic program over monotone lattice paths approximating the supremum of
// the matching functional. Moves are coprime steps (a,b) with a,b <= radius,
// plus the axis moves (1,0) and (0,1) which realise the semigroup boundary:
// they let one side stand still, at zero score. Edge scores are exact
// integrals of the piecewise-constant integrand along the segment, so the DP
// value is the true functional of the reconstructed pair of warps.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "srvf/curve.hpp"
#include "srvf/matching.hpp"
#include "srvf/transform.hpp"

namespace srvf {

struct DpOptions {
  int radius = 4;          // largest step component
  bool axis_moves = true;  // include (1,0) and (0,1)
  std::size_t lattice_n = 0;  // grid size; 0 = take it from uniform inputs
};

struct Alignment {
  Warp beta;
  Warp gamma;
  double matching_value = 0.0;
  double quotient_distance = 0.0;
  std::size_t grid_n = 0;
  std::vector<std::pair<int, int>> move_set;
  std::size_t dp_cells_evaluated = 0;
};

inline std::vector<std::pair<int, int>> dp_moves(const DpOptions& opts) {
  if (opts.radius < 1) throw std::invalid_argument("dp: radius must be >= 1");
  std::vector<std::pair<int, int>> moves;
  if (opts.axis_moves) {
    moves.emplace_back(1, 0);
    moves.emplace_back(0, 1);
  }
  for (int a = 1; a <= opts.radius; ++a)
    for (int b = 1; b <= opts.radius; ++b)
      if (std::gcd(a, b) == 1) moves.emplace_back(a, b);
  return moves;
}

namespace detail {

// integral of <p, q> sqrt(slope) along the segment (x0,y0)-(x1,y1), split at
// every cell boundary of p crossed in x and of q crossed in y.
inline double edge_score(const Srvf& p, const Srvf& q, double x0, double y0,
                         double x1, double y1) {
  if (!(x1 > x0) || !(y1 > y0)) return 0.0;
  const double m = (y1 - y0) / (x1 - x0);
  const double root = std::sqrt(m);
  const auto& pk = p.knots();
  const auto& qk = q.knots();
  std::size_t ip = cell_index(pk, x0);
  std::size_t iq = cell_index(qk, y0);
  double s = 0.0;
  double x = x0;
  while (x < x1) {
    const double xp = pk[ip + 1];
    const double xq = x0 + (qk[iq + 1] - y0) / m;
    double xn = std::min(x1, std::min(xp, xq));
    if (xn > x) s += dot(p.cell(ip), q.cell(iq)) * root * (xn - x);
    if (xn >= x1) break;
    // every pass must advance an index or x, else a boundary that rounds onto
    // x with its index already at the last cell would spin forever
    bool advanced = false;
    if (xp <= xn && ip + 2 < pk.size()) ++ip, advanced = true;
    if (xq <= xn && iq + 2 < qk.size()) ++iq, advanced = true;
    if (!advanced && xn <= x) break;
    x = std::max(x, xn);  // never rewind: a boundary may round below x
  }
  return s;
}

}  // namespace detail

// Best monotone lattice path from (0,0) to (N,N) under the move set, scored
// by the matching functional of the induced piecewise linear warp pair.
inline Alignment dp_align(const Srvf& p, const Srvf& q, const DpOptions& opts = {}) {
  if (p.dim() != q.dim()) throw std::invalid_argument("dp: dimension mismatch");
  std::size_t n = opts.lattice_n;
  if (n == 0) {
    if (p.cells() == q.cells() && p.knots() == uniform_knots(p.cells()) &&
        q.knots() == uniform_knots(q.cells())) {
      n = p.cells();
    } else {
      throw std::invalid_argument(
          "dp: lattice_n required unless both inputs share a uniform grid");
    }
  }
  const auto moves = dp_moves(opts);
  if (moves.size() > 255) throw std::invalid_argument("dp: move set too large");

  const std::size_t side = n + 1;
  const double lo = -std::numeric_limits<double>::infinity();
  std::vector<double> score(side * side, lo);
  std::vector<std::uint8_t> from(side * side, 255);
  score[0] = 0.0;
  std::size_t evaluated = 0;

  std::vector<double> grid(side);
  for (std::size_t i = 0; i < side; ++i)
    grid[i] = static_cast<double>(i) / static_cast<double>(n);
  grid[n] = 1.0;

  for (std::size_t i = 0; i < side; ++i) {
    for (std::size_t j = 0; j < side; ++j) {
      if (i == 0 && j == 0) continue;
      double best = lo;
      int best_move = -1;
      int best_skew = 0, best_a = 0;
      for (std::size_t mi = 0; mi < moves.size(); ++mi) {
        const auto [a, b] = moves[mi];
        if (static_cast<std::size_t>(a) > i || static_cast<std::size_t>(b) > j)
          continue;
        const double prev = score[(i - a) * side + (j - b)];
        if (prev == lo) continue;
        ++evaluated;
        const double cand =
            prev + detail::edge_score(p, q, grid[i - a], grid[j - b], grid[i], grid[j]);
        const int skew = a > b ? a - b : b - a;
        if (cand > best || (cand == best && (skew < best_skew ||
                                             (skew == best_skew && a < best_a)))) {
          best = cand;
          best_move = static_cast<int>(mi);
          best_skew = skew;
          best_a = a;
        }
      }
      score[i * side + j] = best;
      if (best_move >= 0) from[i * side + j] = static_cast<std::uint8_t>(best_move);
    }
  }

  const double value = score[n * side + n];
  if (!(value > lo))
    throw std::domain_error("dp: end node unreachable with this move set");

  // walk the path back; node (i,j) sits at time (i+j)/(2n)
  std::vector<std::pair<std::size_t, std::size_t>> path;
  for (std::size_t i = n, j = n;;) {
    path.emplace_back(i, j);
    if (i == 0 && j == 0) break;
    const auto [a, b] = moves[from[i * side + j]];
    i -= static_cast<std::size_t>(a);
    j -= static_cast<std::size_t>(b);
  }
  std::reverse(path.begin(), path.end());

  std::vector<double> ts(path.size()), bs(path.size()), gs(path.size());
  for (std::size_t k = 0; k < path.size(); ++k) {
    ts[k] = static_cast<double>(path[k].first + path[k].second) /
            static_cast<double>(2 * n);
    bs[k] = grid[path[k].first];
    gs[k] = grid[path[k].second];
  }
  ts.back() = 1.0;

  Alignment out{Warp(ts, bs), Warp(ts, gs), value, 0.0, n, moves, evaluated};
  const double d2 = l2_norm_sq(p) + l2_norm_sq(q) - 2.0 * value;
  out.quotient_distance = std::sqrt(std::max(0.0, d2));
  return out;
}

// Quotient distance between curves. The inputs are never resampled: the DP
// integrates exactly against whatever partitions the transforms live on, and
// the lattice size only controls the search grid for the warps.
inline Alignment quotient_distance(const Curve& b, const Curve& c,
                                   const DpOptions& opts = {}) {
  if (b.dim() != c.dim())
    throw std::invalid_argument("quotient_distance: dimension mismatch");
  DpOptions o = opts;
  if (o.lattice_n == 0) o.lattice_n = std::max(b.cells(), c.cells());
  return dp_align(srvt(b), srvt(c), o);
}

}  // namespace srvf

#pragma once

// Shared deterministic generators and small independent oracles for the test
// suites. Every generator takes an explicit engine so each test pins its own
// seed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "srvf/srvf.hpp"

namespace testutil {

using Engine = std::mt19937_64;

// Random piecewise linear curve anchored at the origin. flat_prob inserts
// cells with exactly zero increment.
inline srvf::Curve random_curve(Engine& g, std::size_t dim, std::size_t cells,
                                double scale = 1.0, double flat_prob = 0.0) {
  std::normal_distribution<double> step(0.0, scale / std::sqrt(double(cells)));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> samples((cells + 1) * dim, 0.0);
  for (std::size_t i = 1; i <= cells; ++i) {
    const bool flat = u(g) < flat_prob;
    for (std::size_t k = 0; k < dim; ++k) {
      const double d = flat ? 0.0 : step(g);
      samples[i * dim + k] = samples[(i - 1) * dim + k] + d;
    }
  }
  return srvf::Curve::uniform(dim, std::move(samples));
}

// Strictly increasing warp from normalised positive increments.
inline srvf::Warp random_strict_warp(Engine& g, std::size_t cells) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> inc(cells);
  double total = 0.0;
  for (auto& x : inc) {
    x = u(g);
    total += x;
  }
  std::vector<double> values(cells + 1, 0.0);
  double run = 0.0;
  for (std::size_t i = 0; i < cells; ++i) {
    run += inc[i];
    values[i + 1] = run / total;
  }
  return srvf::Warp(srvf::uniform_knots(cells), std::move(values));
}

// Weakly increasing warp: some increments are exactly zero.
inline srvf::Warp random_semigroup_warp(Engine& g, std::size_t cells,
                                        double flat_prob = 0.3) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> inc(cells, 0.0);
  double total = 0.0;
  for (auto& x : inc) {
    if (u(g) >= flat_prob) x = 0.05 + u(g);
    total += x;
  }
  if (total == 0.0) {
    inc.back() = 1.0;
    total = 1.0;
  }
  // Divide partial sums rather than accumulating divided increments: a zero
  // increment then yields bitwise-equal neighbours and the last value is
  // total/total, exactly one.  Anything else turns a trailing flat run into a
  // spurious near-zero cell once the endpoint is pinned.
  std::vector<double> values(cells + 1, 0.0);
  double run = 0.0;
  for (std::size_t i = 0; i < cells; ++i) {
    run += inc[i];
    values[i + 1] = run / total;
  }
  return srvf::Warp(srvf::uniform_knots(cells), std::move(values));
}

inline srvf::Srvf random_srvf(Engine& g, std::size_t dim, std::size_t cells,
                              double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> vals(cells * dim);
  for (auto& x : vals) x = u(g);
  return srvf::Srvf::uniform(dim, std::move(vals));
}

// Strictly increasing warp whose graph is a lattice path on the n x n grid
// built from the moves (1,1), (1,2) and (2,1); such warps stay exactly
// representable on a 2n lattice after composition tricks.
inline srvf::Warp random_lattice_warp(Engine& g, std::size_t n) {
  const std::size_t m = n / 4;
  const std::size_t r = n - 3 * m;
  std::vector<std::pair<int, int>> moves;
  moves.reserve(2 * m + r);
  for (std::size_t i = 0; i < m; ++i) {
    moves.emplace_back(1, 2);
    moves.emplace_back(2, 1);
  }
  for (std::size_t i = 0; i < r; ++i) moves.emplace_back(1, 1);
  std::shuffle(moves.begin(), moves.end(), g);

  std::vector<double> ts, vs;
  ts.reserve(moves.size() + 1);
  vs.reserve(moves.size() + 1);
  std::size_t i = 0, j = 0;
  ts.push_back(0.0);
  vs.push_back(0.0);
  for (const auto& [a, b] : moves) {
    i += a;
    j += b;
    ts.push_back(double(i + j) / double(2 * n));
    vs.push_back(double(i) / double(n));
  }
  ts.back() = 1.0;
  vs.back() = 1.0;
  return srvf::Warp(std::move(ts), std::move(vs));
}

// Exhaustive enumeration of every monotone lattice path, scored with the same
// edge integral the DP uses. Forward accumulation keeps the float association
// identical to the DP recurrence, so agreement must be bitwise.
struct BruteForce {
  const srvf::Srvf& p;
  const srvf::Srvf& q;
  std::vector<std::pair<int, int>> moves;
  std::size_t n;
  std::vector<double> grid;
  std::vector<double> cache;
  double best = -std::numeric_limits<double>::infinity();

  BruteForce(const srvf::Srvf& p_, const srvf::Srvf& q_,
             const srvf::DpOptions& opts, std::size_t n_)
      : p(p_), q(q_), moves(srvf::dp_moves(opts)), n(n_) {
    grid.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
      grid[i] = static_cast<double>(i) / static_cast<double>(n);
    grid[n] = 1.0;
    cache.assign((n + 1) * (n + 1) * moves.size(),
                 std::numeric_limits<double>::quiet_NaN());
  }

  double edge(std::size_t i, std::size_t j, std::size_t mi) {
    double& slot = cache[(i * (n + 1) + j) * moves.size() + mi];
    if (std::isnan(slot)) {
      const auto [a, b] = moves[mi];
      slot = srvf::detail::edge_score(p, q, grid[i], grid[j], grid[i + a],
                                      grid[j + b]);
    }
    return slot;
  }

  void dfs(std::size_t i, std::size_t j, double acc) {
    if (i == n && j == n) {
      if (acc > best) best = acc;
      return;
    }
    for (std::size_t mi = 0; mi < moves.size(); ++mi) {
      const auto [a, b] = moves[mi];
      if (i + a > n || j + b > n) continue;
      dfs(i + a, j + b, acc + edge(i, j, mi));
    }
  }

  double run() {
    dfs(0, 0, 0.0);
    return best;
  }
};

// Composite Simpson quadrature, independent of the library's exact sums.
template <class F>
double integrate(F f, double a, double b, std::size_t n = 4096) {
  if (n % 2) ++n;
  const double h = (b - a) / double(n);
  double s = f(a) + f(b);
  for (std::size_t i = 1; i < n; ++i) s += f(a + h * double(i)) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Pointwise sup distance between two curves over their merged knots.
inline double sup_distance(const srvf::Curve& a, const srvf::Curve& b) {
  const auto merged = srvf::merge_knots(a.knots(), b.knots());
  double worst = 0.0;
  std::vector<double> x(a.dim()), y(b.dim());
  for (const double t : merged) {
    a.eval(t, x);
    b.eval(t, y);
    for (std::size_t k = 0; k < x.size(); ++k)
      worst = std::max(worst, std::abs(x[k] - y[k]));
  }
  return worst;
}

}  // namespace testutil

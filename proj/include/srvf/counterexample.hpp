#pragma once

// Reproduction of the non-existence example: two unit-speed SRVFs that agree
// on the complement of a fat Cantor set and point into fixed directions with
// negative mutual inner product on the set itself. The supremum of the
// matching functional over reparametrisation pairs tends to 1/2 as the
// construction is refined but no pair attains it in the limit; here the set
// is truncated at a finite level, which keeps every quantity an exact
// rational while the DP and the explicit warp sequence bracket the same gap.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "srvf/curve.hpp"
#include "srvf/dp.hpp"
#include "srvf/interval_set.hpp"
#include "srvf/matching.hpp"
#include "srvf/rational.hpp"
#include "srvf/transform.hpp"

namespace srvf {

// Level-k fat (Smith-Volterra) Cantor set: step j removes the open middle
// 4^-j from each interval. All 2^k level-k intervals share the same length
// (2^k + 1) / (2 * 4^k), and the measure is (1 + 2^-k) / 2.
inline IntervalSet fat_cantor(int level, int cap = 24) {
  if (level < 1) throw std::invalid_argument("fat_cantor: level must be >= 1");
  if (level > cap)
    throw std::invalid_argument("fat_cantor: level exceeds the exact-arithmetic cap");
  std::vector<IntervalSet::Interval> cur{{Rational(0), Rational(1)}};
  for (int j = 1; j <= level; ++j) {
    const Rational r = pow4_inv(static_cast<unsigned>(j));
    std::vector<IntervalSet::Interval> next;
    next.reserve(cur.size() * 2);
    for (const auto& iv : cur) {
      const Rational lo = (iv.first + iv.second - r) / 2;
      const Rational hi = (iv.first + iv.second + r) / 2;
      next.emplace_back(iv.first, lo);
      next.emplace_back(hi, iv.second);
    }
    cur = std::move(next);
  }
  return IntervalSet(std::move(cur));
}

struct CounterexampleConfig {
  int cantor_level = 10;
  Rational epsilon = Rational(1, 10);  // turning rate of the moving direction
  std::size_t grid_n = 1024;
  Rational fatten_delta = 0;  // 0: per-level default 4^-(kprime+2)
  int level_cap = 24;

  void validate() const {
    if (cantor_level < 1)
      throw std::invalid_argument("counterexample: cantor_level must be >= 1");
    if (!(epsilon > 0) || !(epsilon < Rational(1, 6)))
      throw std::invalid_argument(
          "counterexample: epsilon must satisfy 0 < epsilon < 1/6");
    if (grid_n < 2) throw std::invalid_argument("counterexample: grid_n must be >= 2");
    if (fatten_delta < 0)
      throw std::invalid_argument("counterexample: fatten_delta must be >= 0");
  }
};

struct CounterexamplePair {
  Srvf p;
  Srvf q;
  IntervalSet A;  // complement of the Cantor set
  IntervalSet B;  // the Cantor set itself
};

// p = v1 on A, v2 on B; q = v1 on A, v3 on B, where v1(t) rotates slowly and
// v2, v3 are the two fixed unit vectors at +-120 degrees: <v2,v3> = -1/2 and
// |v2 - v3|^2 = 3. Knots are the uniform grid joined with the exact Cantor
// endpoints, so p - q is supported exactly on B.
inline CounterexamplePair build_pq(const CounterexampleConfig& cfg) {
  cfg.validate();
  IntervalSet B = fat_cantor(cfg.cantor_level, cfg.level_cap);
  IntervalSet A = B.complement();

  std::vector<Rational> knots_r;
  knots_r.reserve(cfg.grid_n + 1 + 2 * B.size());
  for (std::size_t i = 0; i <= cfg.grid_n; ++i)
    knots_r.emplace_back(Rational(i, cfg.grid_n));
  for (const auto& iv : B.intervals()) {
    knots_r.push_back(iv.first);
    knots_r.push_back(iv.second);
  }
  std::sort(knots_r.begin(), knots_r.end());
  knots_r.erase(std::unique(knots_r.begin(), knots_r.end()), knots_r.end());

  std::vector<double> knots;
  knots.reserve(knots_r.size());
  for (const auto& r : knots_r) {
    const double x = to_double(r);
    if (knots.empty() || x > knots.back()) knots.push_back(x);
  }

  const double eps = to_double(cfg.epsilon);
  const double v2x = -0.5, v2y = std::sqrt(3.0) / 2.0;
  const double v3x = -0.5, v3y = -std::sqrt(3.0) / 2.0;

  const std::size_t n = knots.size() - 1;
  std::vector<double> pc(2 * n), qc(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational mid = (rational_from_double(knots[i]) +
                          rational_from_double(knots[i + 1])) / 2;
    if (B.contains(mid)) {
      pc[2 * i] = v2x;
      pc[2 * i + 1] = v2y;
      qc[2 * i] = v3x;
      qc[2 * i + 1] = v3y;
    } else {
      const double t = to_double(mid);
      const double c = std::cos(eps * t), s = std::sin(eps * t);
      pc[2 * i] = c;
      pc[2 * i + 1] = s;
      qc[2 * i] = c;
      qc[2 * i + 1] = s;
    }
  }
  return {Srvf(2, knots, std::move(pc)), Srvf(2, knots, std::move(qc)),
          std::move(A), std::move(B)};
}

struct ExplicitPair {
  Warp beta;
  Warp gamma;
  Rational value;  // exact value of the matching functional for this pair
  Rational delta;  // fattening actually used
};

// The explicit near-optimal sequence: fatten the level-kprime set by delta,
// then on each fattened component let beta sweep it at speed 2 in the first
// half and rest, while gamma rests first and sweeps in the second half. The
// product beta' gamma' vanishes there, so the pair scores exactly the measure
// of the complement: 1/2 - 2^-(kprime+1) - (2^(kprime+1) - 2) delta.
inline ExplicitPair approx_reparams(const CounterexampleConfig& cfg, int kprime) {
  cfg.validate();
  if (kprime < 1 || kprime > cfg.cantor_level)
    throw std::invalid_argument(
        "counterexample: kprime must lie in [1, cantor_level]");
  const Rational delta =
      cfg.fatten_delta != 0 ? cfg.fatten_delta
                            : pow4_inv(static_cast<unsigned>(kprime) + 2);
  const IntervalSet O = fat_cantor(kprime, cfg.level_cap).fattened(delta);

  std::vector<double> bk, bv, gk, gv;
  auto push = [](std::vector<double>& ks, std::vector<double>& vs, double t,
                 double v) {
    if (!ks.empty() && t <= ks.back()) return;
    ks.push_back(t);
    vs.push_back(v);
  };
  push(bk, bv, 0.0, 0.0);
  push(gk, gv, 0.0, 0.0);
  for (const auto& iv : O.intervals()) {
    const double u = to_double(iv.first);
    const double w = to_double(iv.second);
    const double m = to_double((iv.first + iv.second) / 2);
    push(bk, bv, u, u);
    push(bk, bv, m, w);  // beta sweeps [u,w] at speed 2, then waits
    push(bk, bv, w, w);
    push(gk, gv, u, u);
    push(gk, gv, m, u);  // gamma waits, then sweeps at speed 2
    push(gk, gv, w, w);
  }
  push(bk, bv, 1.0, 1.0);
  push(gk, gv, 1.0, 1.0);

  return {Warp(std::move(bk), std::move(bv)), Warp(std::move(gk), std::move(gv)),
          Rational(1) - O.measure(), delta};
}

struct UpperBoundCheck {
  std::vector<double> values;
  double max_value = 0.0;
  double gap_to_half = 0.5;
  bool all_below_half = true;
};

inline UpperBoundCheck verify_upper_bound(const Srvf& p, const Srvf& q,
                                          const std::vector<ExplicitPair>& pairs) {
  UpperBoundCheck out;
  for (const auto& pr : pairs) {
    const double v = matching_functional(p, q, pr.beta, pr.gamma);
    out.values.push_back(v);
    if (v >= out.max_value) out.max_value = v;
    if (v >= 0.5) out.all_below_half = false;
  }
  out.gap_to_half = 0.5 - out.max_value;
  return out;
}

// Largest kprime whose fattened components and the gaps between them all span
// at least four lattice cells at this grid size; finer levels exist in the
// data but the DP path cannot resolve them.
inline int resolvable_level(const CounterexampleConfig& cfg, std::size_t grid_n) {
  const Rational min_span = Rational(4, grid_n);
  int best = 0;
  for (int kp = 1; kp <= cfg.cantor_level; ++kp) {
    const Rational delta =
        cfg.fatten_delta != 0 ? cfg.fatten_delta
                              : pow4_inv(static_cast<unsigned>(kp) + 2);
    IntervalSet O;
    try {
      O = fat_cantor(kp, cfg.level_cap).fattened(delta);
    } catch (const std::invalid_argument&) {
      break;
    }
    bool ok = true;
    const auto& ivs = O.intervals();
    for (std::size_t i = 0; i < ivs.size() && ok; ++i) {
      if (ivs[i].second - ivs[i].first < min_span) ok = false;
      if (i + 1 < ivs.size() && ivs[i + 1].first - ivs[i].second < min_span)
        ok = false;
    }
    if (ok) best = kp;
  }
  return best;
}

struct ReportRow {
  std::size_t grid_n = 0;
  int kprime = 0;
  double dp_value = 0.0;
  double explicit_value = 0.0;
  double gap_to_half = 0.0;  // 1/2 - dp_value
  double qdist_sq = 0.0;
};

struct CounterexampleReport {
  CounterexampleConfig config;
  Rational dist_sq_exact;  // 3 * measure(B): squared parametrised distance
  double dist_sq = 0.0;    // the same, recomputed numerically at the finest grid
  std::vector<std::size_t> grid_sizes;
  std::vector<double> dp_values;  // per grid size
  std::vector<double> qdist_sq;   // per grid size
  std::vector<int> kprimes;
  std::vector<Rational> explicit_exact;   // per kprime
  std::vector<double> explicit_checked;   // functional evaluated at finest grid
  std::vector<int> resolvable;            // per grid size
  std::vector<ReportRow> rows;            // cross product, CSV order
};

inline CounterexampleReport counterexample_report(const CounterexampleConfig& cfg,
                                                  std::vector<std::size_t> grid_sizes,
                                                  std::vector<int> kprimes,
                                                  const DpOptions& dp = {}) {
  cfg.validate();
  if (grid_sizes.empty() || kprimes.empty())
    throw std::invalid_argument("counterexample: need at least one grid size and kprime");
  CounterexampleReport rep;
  rep.config = cfg;
  rep.grid_sizes = grid_sizes;
  rep.kprimes = kprimes;
  rep.dist_sq_exact = 3 * fat_cantor(cfg.cantor_level, cfg.level_cap).measure();

  std::vector<ExplicitPair> pairs;
  for (int kp : kprimes) {
    pairs.push_back(approx_reparams(cfg, kp));
    rep.explicit_exact.push_back(pairs.back().value);
  }

  for (std::size_t gi = 0; gi < grid_sizes.size(); ++gi) {
    CounterexampleConfig local = cfg;
    local.grid_n = grid_sizes[gi];
    const auto pq = build_pq(local);
    DpOptions o = dp;
    o.lattice_n = grid_sizes[gi];
    const auto al = dp_align(pq.p, pq.q, o);
    rep.dp_values.push_back(al.matching_value);
    rep.qdist_sq.push_back(al.quotient_distance * al.quotient_distance);
    rep.resolvable.push_back(resolvable_level(local, grid_sizes[gi]));
    if (gi + 1 == grid_sizes.size()) {
      const double d = l2_distance(pq.p, pq.q);
      rep.dist_sq = d * d;
      for (const auto& pr : pairs)
        rep.explicit_checked.push_back(
            matching_functional(pq.p, pq.q, pr.beta, pr.gamma));
    }
    for (std::size_t ki = 0; ki < kprimes.size(); ++ki) {
      ReportRow row;
      row.grid_n = grid_sizes[gi];
      row.kprime = kprimes[ki];
      row.dp_value = al.matching_value;
      row.explicit_value = to_double(rep.explicit_exact[ki]);
      row.gap_to_half = 0.5 - al.matching_value;
      row.qdist_sq = rep.qdist_sq.back();
      rep.rows.push_back(row);
    }
  }
  return rep;
}

}  // namespace srvf

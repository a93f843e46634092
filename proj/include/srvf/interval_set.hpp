#pragma once

// Finite unions of closed intervals in [0,1] with exact rational endpoints.
// Kept sorted and disjoint (touching intervals are merged), so measure,
// complement and membership are straightforward exact operations.

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "srvf/rational.hpp"

namespace srvf {

class IntervalSet {
 public:
  using Interval = std::pair<Rational, Rational>;

  IntervalSet() = default;

  explicit IntervalSet(std::vector<Interval> intervals) {
    std::sort(intervals.begin(), intervals.end());
    for (auto& iv : intervals) {
      if (iv.first < 0 || iv.second > 1 || iv.first > iv.second)
        throw std::invalid_argument("interval set: intervals must satisfy 0 <= a <= b <= 1");
      if (iv.first == iv.second) continue;  // degenerate: measure zero, drop
      if (!intervals_.empty() && iv.first <= intervals_.back().second) {
        if (iv.second > intervals_.back().second)
          intervals_.back().second = iv.second;
      } else {
        intervals_.push_back(iv);
      }
    }
  }

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  std::size_t size() const { return intervals_.size(); }

  Rational measure() const {
    Rational m = 0;
    for (const auto& iv : intervals_) m += iv.second - iv.first;
    return m;
  }

  bool contains(const Rational& t) const {
    auto it = std::upper_bound(
        intervals_.begin(), intervals_.end(), t,
        [](const Rational& v, const Interval& iv) { return v < iv.first; });
    if (it == intervals_.begin()) return false;
    --it;
    return t >= it->first && t <= it->second;
  }

  // Complement within [0,1] (closure of it: shared endpoints belong to both).
  IntervalSet complement() const {
    std::vector<Interval> out;
    Rational cursor = 0;
    for (const auto& iv : intervals_) {
      if (iv.first > cursor) out.emplace_back(cursor, iv.first);
      cursor = iv.second;
    }
    if (cursor < 1) out.emplace_back(cursor, Rational(1));
    return IntervalSet(std::move(out));
  }

  IntervalSet intersect(const IntervalSet& other) const {
    std::vector<Interval> out;
    std::size_t i = 0, j = 0;
    while (i < intervals_.size() && j < other.intervals_.size()) {
      const auto& a = intervals_[i];
      const auto& b = other.intervals_[j];
      const Rational lo = std::max(a.first, b.first);
      const Rational hi = std::min(a.second, b.second);
      if (lo < hi) out.emplace_back(lo, hi);
      if (a.second < b.second)
        ++i;
      else
        ++j;
    }
    return IntervalSet(std::move(out));
  }

  // Expands every interval by delta on each side, clipped to [0,1]. The
  // expanded intervals must stay pairwise disjoint.
  IntervalSet fattened(const Rational& delta) const {
    if (delta < 0) throw std::invalid_argument("interval set: negative fattening");
    std::vector<Interval> out;
    out.reserve(intervals_.size());
    for (const auto& iv : intervals_) {
      Rational lo = iv.first - delta;
      Rational hi = iv.second + delta;
      if (lo < 0) lo = 0;
      if (hi > 1) hi = 1;
      if (!out.empty() && lo <= out.back().second)
        throw std::invalid_argument("interval set: fattening delta too large, components merge");
      out.emplace_back(std::move(lo), std::move(hi));
    }
    return IntervalSet(std::move(out));
  }

 private:
  std::vector<Interval> intervals_;
};

}  // namespace srvf

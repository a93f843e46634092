#pragma once

// Shapes are orbit closures of curves under reparametrisation. Every class
// contains exactly one constant-speed curve, so canonicalisation answers the
// equivalence question without any optimisation, and pairwise quotient
// distances between canonical representatives give the distance matrix.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "srvf/action.hpp"
#include "srvf/curve.hpp"
#include "srvf/dp.hpp"
#include "srvf/transform.hpp"

namespace srvf {

struct ShapeRecord {
  std::string id;
  Curve curve;         // constant-speed representative
  double ac_length;    // ac_norm of the original curve (invariant of the class)
};

inline ShapeRecord canonical(const Curve& c, std::string id = {}) {
  auto [rep, warp] = constant_speed(c);
  (void)warp;
  return {std::move(id), std::move(rep), ac_norm(c)};
}

// Same shape iff the canonical representatives coincide as functions. The
// comparison is a sup-norm over the merged knots plus a length check, scaled
// by the curve size.
inline bool is_equivalent(const Curve& b, const Curve& c, double tol = 1e-6) {
  if (b.dim() != c.dim()) return false;
  const Curve rb = constant_speed(b).first;
  const Curve rc = constant_speed(c).first;
  const double scale = 1.0 + std::max(ac_norm(rb), ac_norm(rc));
  if (std::abs(ac_norm(rb) - ac_norm(rc)) > tol * scale) return false;
  const auto merged = merge_knots(rb.knots(), rc.knots());
  std::vector<double> x(b.dim()), y(b.dim());
  for (const double t : merged) {
    rb.eval(t, x);
    rc.eval(t, y);
    for (std::size_t k = 0; k < x.size(); ++k)
      if (std::abs(x[k] - y[k]) > tol * scale) return false;
  }
  return true;
}

struct MatrixResult {
  std::vector<std::string> ids;
  std::vector<double> values;  // row-major, symmetric, zero diagonal
  std::vector<std::string> zero_length_ids;

  double at(std::size_t i, std::size_t j) const { return values[i * ids.size() + j]; }
};

// Pairwise quotient distances between canonical representatives. Each pair is
// computed once and mirrored, so the matrix is symmetric by construction.
// Zero-length curves are legitimate inputs (their transform is zero); they
// are listed so callers can flag them.
inline MatrixResult distance_matrix(const std::vector<ShapeRecord>& records,
                                    const DpOptions& opts = {}) {
  const std::size_t n = records.size();
  MatrixResult out;
  out.ids.reserve(n);
  for (const auto& r : records) {
    out.ids.push_back(r.id);
    if (r.ac_length == 0.0) out.zero_length_ids.push_back(r.id);
  }
  out.values.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto al = quotient_distance(records[i].curve, records[j].curve, opts);
      out.values[i * n + j] = al.quotient_distance;
      out.values[j * n + i] = al.quotient_distance;
    }
  }
  return out;
}

}  // namespace srvf

#pragma once

// Tolerant comparisons of segment directions, shared by path merging and reduction.

#include <algorithm>
#include <cmath>
#include <vector>

#include "sigpath/signature.hpp"

namespace sigpath::detail {

inline double coordinate_scale(const PiecewiseLinearPath& p) {
  double s = 0.0;
  for (const auto& pt : p.points()) {
    for (double x : pt) s = std::max(s, std::abs(x));
  }
  return s;
}

inline bool is_zero_vector(const std::vector<double>& v, double scale, double rel_tol) {
  return euclidean_norm(v) <= rel_tol * scale;
}

// sign = +1: same direction, sign = -1: opposite. Both vectors must be nonzero.
inline bool directions_match(const std::vector<double>& u, const std::vector<double>& v, int sign,
                             double rel_tol) {
  const double nu = euclidean_norm(u);
  const double nv = euclidean_norm(v);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (std::abs(u[i] / nu - sign * v[i] / nv) > rel_tol) return false;
  }
  return true;
}

}  // namespace sigpath::detail

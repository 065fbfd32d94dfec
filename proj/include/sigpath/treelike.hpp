#pragma once

#include <optional>
#include <vector>

#include "sigpath/signature.hpp"

namespace sigpath {

// Piecewise linear h on [0, T] through (times[i], values[i]); h(0) = h(T) = 0, h >= 0.
class HeightFunction {
 public:
  // Throws DomainError unless times start at 0 and strictly increase, values are nonnegative and
  // vanish at both ends.
  HeightFunction(std::vector<double> times, std::vector<double> values);

  // h = 0 on [0, T].
  static HeightFunction zero(double T);

  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& values() const { return values_; }
  double T() const { return times_.back(); }
  double operator()(double t) const;
  double total_variation() const;

 private:
  std::vector<double> times_;
  std::vector<double> values_;
};

// Checks |X_t - X_s| <= h(s) + h(t) - 2 min_[s,t] h + tol at every pair drawn from the path
// breakpoints, the breakpoints of h and a uniform grid of the given spacing. X is parameterized
// by arc length. This samples the condition; it is not a proof.
bool verify_height(const PiecewiseLinearPath& p, const HeightFunction& h, double spacing, double tol = 1e-9);

// The reduced path: repeatedly combines adjacent collinear segments (either direction) into their
// net displacement and drops zero segments. No two adjacent segments of the result are collinear.
PiecewiseLinearPath reduce_path(const PiecewiseLinearPath& p, double rel_tol = 1e-12);

// A height function for p on its arc-length parameterization, built by cancelling adjacent
// opposite segments and inserting a tent for every cancellation, or nullopt if p is not tree-like.
// Its total variation equals the length of p.
std::optional<HeightFunction> build_height(const PiecewiseLinearPath& p, double rel_tol = 1e-12);

PiecewiseLinearPath concat_reduce(const PiecewiseLinearPath& p, const PiecewiseLinearPath& q);

// reduce_path(p) is a single point. Cross-checked against levels 1..depth of the signature, where
// level k may deviate from zero by tol * max(1, length^k / k!). Throws ConsistencyError if the two
// criteria disagree.
bool is_tree_like(const PiecewiseLinearPath& p, int depth = 6, double tol = 1e-9);

}  // namespace sigpath

#pragma once

#include <span>
#include <vector>

#include "sigpath/tensor.hpp"

namespace sigpath {

// A path in R^d, linear between consecutive breakpoints.
class PiecewiseLinearPath {
 public:
  using Point = std::vector<double>;

  // Throws DomainError if points is empty or the dimensions disagree.
  PiecewiseLinearPath(int dim, std::vector<Point> points);
  // Dimension taken from the first point.
  explicit PiecewiseLinearPath(std::vector<Point> points);

  // The constant path at p.
  static PiecewiseLinearPath point(Point p);

  int dim() const { return dim_; }
  const std::vector<Point>& points() const { return points_; }
  std::size_t num_points() const { return points_.size(); }
  std::size_t num_segments() const { return points_.size() - 1; }
  const Point& start() const { return points_.front(); }
  const Point& end() const { return points_.back(); }

  Point increment(std::size_t segment) const;
  double segment_length(std::size_t segment) const;
  double length() const;

  // Cumulative arc length at each breakpoint; first entry 0.
  std::vector<double> arc_length_times() const;

  // Position at arc-length parameter s (clamped to [0, length]).
  Point at_arc_length(double s) const;

  friend bool operator==(const PiecewiseLinearPath&, const PiecewiseLinearPath&) = default;

 private:
  int dim_;
  std::vector<Point> points_;
};

double euclidean_norm(std::span<const double> v);

enum class ProductOrder { sequential, balanced };

// S(p) truncated at depth: the product of exp(increment) over segments.
// balanced multiplies pairwise up a binary tree; the association is fixed, so the result does
// not depend on the thread count.
TruncatedTensor path_signature(const PiecewiseLinearPath& p, int depth,
                               ProductOrder order = ProductOrder::sequential);

// q translated to start at p's end, appended to p.
PiecewiseLinearPath concat(const PiecewiseLinearPath& p, const PiecewiseLinearPath& q);
PiecewiseLinearPath reverse(const PiecewiseLinearPath& p);

// int dX^e dX^f = <(e shuffle f') f_last, S(p)> where f' is f without its last letter.
double iterated_of_iterated(const DualWord& e, const DualWord& f, const PiecewiseLinearPath& p, int depth);

// Drops zero segments and merges consecutive segments pointing the same way.
// The signature is unchanged.
PiecewiseLinearPath merge_collinear(const PiecewiseLinearPath& p, double rel_tol = 1e-12);

enum class NormMethod { automatic, dense, kernel };

struct LevelNormOptions {
  NormMethod method = NormMethod::automatic;
  // Dense evaluation is used by `automatic` while the tensor has at most this many coefficients.
  std::size_t dense_budget = std::size_t{1} << 22;
  // Kernel grid refinement: each segment is split into this many equal steps.
  int substeps = 1;
  // Combine runs at substeps and 2 * substeps by Richardson extrapolation.
  bool extrapolate = true;
};

// b_k = k! * level_norm(S(p), k) for k = 0..max_level.
//
// The kernel method never forms the tensor. It integrates the graded signature kernel
// K_k(s, t) = <S^k_{0,s}, S^k_{0,t}> on the breakpoint grid with a second order scheme, so it
// reaches levels far beyond dense storage; its error shrinks with substeps.
std::vector<double> signature_level_norms(const PiecewiseLinearPath& p, int max_level,
                                          const LevelNormOptions& options = {});

}  // namespace sigpath

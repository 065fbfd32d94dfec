#include "sigpath/signature.hpp"

#include <cmath>
#include <string>

#include "direction.hpp"
#include "sigpath/error.hpp"
#include "sigpath/parallel.hpp"

namespace sigpath {

double euclidean_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

PiecewiseLinearPath::PiecewiseLinearPath(int dim, std::vector<Point> points)
    : dim_(dim), points_(std::move(points)) {
  if (dim_ < 1) throw DomainError("path dimension must be positive");
  if (points_.empty()) throw DomainError("a path needs at least one point");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (static_cast<int>(points_[i].size()) != dim_) {
      throw DomainError("point " + std::to_string(i) + " has dimension " + std::to_string(points_[i].size()) +
                        ", expected " + std::to_string(dim_));
    }
    for (double x : points_[i]) {
      if (!std::isfinite(x)) throw DomainError("point " + std::to_string(i) + " has a non-finite coordinate");
    }
  }
}

namespace {
int leading_dim(const std::vector<PiecewiseLinearPath::Point>& points) {
  return points.empty() ? 1 : static_cast<int>(points.front().size());
}
}  // namespace

PiecewiseLinearPath::PiecewiseLinearPath(std::vector<Point> points) : dim_(leading_dim(points)), points_(std::move(points)) {
  *this = PiecewiseLinearPath(dim_, std::move(points_));
}

PiecewiseLinearPath PiecewiseLinearPath::point(Point p) { return PiecewiseLinearPath(std::vector<Point>{std::move(p)}); }

PiecewiseLinearPath::Point PiecewiseLinearPath::increment(std::size_t segment) const {
  const Point& a = points_.at(segment);
  const Point& b = points_.at(segment + 1);
  Point v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v[i] = b[i] - a[i];
  return v;
}

double PiecewiseLinearPath::segment_length(std::size_t segment) const { return euclidean_norm(increment(segment)); }

double PiecewiseLinearPath::length() const {
  double l = 0.0;
  for (std::size_t i = 0; i < num_segments(); ++i) l += segment_length(i);
  return l;
}

std::vector<double> PiecewiseLinearPath::arc_length_times() const {
  std::vector<double> t(points_.size(), 0.0);
  for (std::size_t i = 0; i < num_segments(); ++i) t[i + 1] = t[i] + segment_length(i);
  return t;
}

PiecewiseLinearPath::Point PiecewiseLinearPath::at_arc_length(double s) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < num_segments(); ++i) {
    const double len = segment_length(i);
    if (s <= acc + len && len > 0.0) {
      const double w = std::clamp((s - acc) / len, 0.0, 1.0);
      Point out(points_[i]);
      for (std::size_t c = 0; c < out.size(); ++c) out[c] += w * (points_[i + 1][c] - points_[i][c]);
      return out;
    }
    acc += len;
  }
  return points_.back();
}

namespace {

TruncatedTensor balanced_product(const PiecewiseLinearPath& p, int depth) {
  const std::size_t n = p.num_segments();
  std::vector<TruncatedTensor> layer;
  layer.reserve(n);
  for (std::size_t i = 0; i < n; ++i) layer.push_back(TruncatedTensor::unit(p.dim(), depth));
  parallel_for(n, [&](std::size_t i) { layer[i] = tensor_exp(p.increment(i), depth); });
  while (layer.size() > 1) {
    const std::size_t pairs = layer.size() / 2;
    std::vector<TruncatedTensor> next(layer.size() - pairs, TruncatedTensor::unit(p.dim(), depth));
    parallel_for(pairs, [&](std::size_t i) { next[i] = tensor_mul(layer[2 * i], layer[2 * i + 1]); });
    if (layer.size() % 2 == 1) next.back() = std::move(layer.back());
    layer = std::move(next);
  }
  return std::move(layer.front());
}

}  // namespace

TruncatedTensor path_signature(const PiecewiseLinearPath& p, int depth, ProductOrder order) {
  if (depth < 0) throw DomainError("signature depth must be nonnegative");
  if (p.num_segments() == 0) return TruncatedTensor::unit(p.dim(), depth);
  if (order == ProductOrder::balanced) return balanced_product(p, depth);
  TruncatedTensor s = TruncatedTensor::unit(p.dim(), depth);
  for (std::size_t i = 0; i < p.num_segments(); ++i) s.multiply_by_exponential(p.increment(i));
  return s;
}

PiecewiseLinearPath concat(const PiecewiseLinearPath& p, const PiecewiseLinearPath& q) {
  if (p.dim() != q.dim()) {
    throw DomainError("concat: dimension mismatch " + std::to_string(p.dim()) + " vs " + std::to_string(q.dim()));
  }
  std::vector<PiecewiseLinearPath::Point> pts = p.points();
  pts.reserve(p.num_points() + q.num_segments());
  const auto& shift_to = p.end();
  const auto& shift_from = q.start();
  for (std::size_t i = 1; i < q.num_points(); ++i) {
    PiecewiseLinearPath::Point x = q.points()[i];
    for (std::size_t c = 0; c < x.size(); ++c) x[c] += shift_to[c] - shift_from[c];
    pts.push_back(std::move(x));
  }
  return PiecewiseLinearPath(p.dim(), std::move(pts));
}

PiecewiseLinearPath reverse(const PiecewiseLinearPath& p) {
  std::vector<PiecewiseLinearPath::Point> pts(p.points().rbegin(), p.points().rend());
  return PiecewiseLinearPath(p.dim(), std::move(pts));
}

double iterated_of_iterated(const DualWord& e, const DualWord& f, const PiecewiseLinearPath& p, int depth) {
  if (f.empty()) throw DomainError("iterated_of_iterated: f must be non-empty");
  if (e.size() + f.size() > static_cast<std::size_t>(depth)) {
    throw DomainError("iterated_of_iterated: |e| + |f| exceeds depth");
  }
  const DualWord f_head(f.begin(), f.end() - 1);
  const DualTensor integrand = shuffle(e, f_head, p.dim()).concat_letter(f.back());
  return pair(integrand, path_signature(p, depth));
}

PiecewiseLinearPath merge_collinear(const PiecewiseLinearPath& p, double rel_tol) {
  const double scale = detail::coordinate_scale(p);
  std::vector<PiecewiseLinearPath::Point> pts{p.start()};
  PiecewiseLinearPath::Point last_dir;
  for (std::size_t i = 0; i < p.num_segments(); ++i) {
    const auto v = p.increment(i);
    if (detail::is_zero_vector(v, scale, rel_tol)) continue;
    if (pts.size() >= 2 && detail::directions_match(last_dir, v, +1, rel_tol)) {
      pts.back() = p.points()[i + 1];
    } else {
      pts.push_back(p.points()[i + 1]);
    }
    last_dir = v;
  }
  // Dropped zero segments can leave the endpoint slightly off; keep the true end.
  pts.back() = p.end();
  return PiecewiseLinearPath(p.dim(), std::move(pts));
}

}  // namespace sigpath

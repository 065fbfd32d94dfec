#include "sigpath/treelike.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "direction.hpp"
#include "sigpath/error.hpp"

namespace sigpath {

HeightFunction::HeightFunction(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.empty() || times_.size() != values_.size()) {
    throw DomainError("height function needs matching, non-empty times and values");
  }
  if (times_.front() != 0.0) throw DomainError("height function must start at time 0");
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i]) || !std::isfinite(values_[i])) throw DomainError("height function has non-finite data");
    if (i > 0 && !(times_[i] > times_[i - 1])) throw DomainError("height function times must strictly increase");
    if (values_[i] < 0.0) throw DomainError("height function must be nonnegative");
  }
  if (values_.front() != 0.0 || values_.back() != 0.0) throw DomainError("height function must vanish at both ends");
}

HeightFunction HeightFunction::zero(double T) {
  if (!(T >= 0.0)) throw DomainError("height function domain must be nonnegative");
  if (T == 0.0) return HeightFunction({0.0}, {0.0});
  return HeightFunction({0.0, T}, {0.0, 0.0});
}

double HeightFunction::operator()(double t) const {
  if (t < 0.0 || t > T()) throw DomainError("time " + std::to_string(t) + " outside height function domain");
  auto hi = std::upper_bound(times_.begin(), times_.end(), t);
  if (hi == times_.end()) return values_.back();
  const std::size_t j = static_cast<std::size_t>(hi - times_.begin());
  const double w = (t - times_[j - 1]) / (times_[j] - times_[j - 1]);
  return values_[j - 1] + w * (values_[j] - values_[j - 1]);
}

double HeightFunction::total_variation() const {
  double v = 0.0;
  for (std::size_t i = 1; i < values_.size(); ++i) v += std::abs(values_[i] - values_[i - 1]);
  return v;
}

bool verify_height(const PiecewiseLinearPath& p, const HeightFunction& h, double spacing, double tol) {
  const double T = p.length();
  if (std::abs(h.T() - T) > 1e-9 * std::max(1.0, T)) {
    throw DomainError("height function domain [0, " + std::to_string(h.T()) + "] does not match path length " +
                      std::to_string(T));
  }
  if (!(spacing > 0.0)) throw DomainError("verify_height: grid spacing must be positive");
  std::vector<double> samples = p.arc_length_times();
  samples.insert(samples.end(), h.times().begin(), h.times().end());
  const auto steps = static_cast<std::size_t>(std::ceil(T / spacing));
  for (std::size_t i = 0; i <= steps; ++i) samples.push_back(std::min(T, static_cast<double>(i) * spacing));
  for (double& s : samples) s = std::clamp(s, 0.0, h.T());
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

  std::vector<PiecewiseLinearPath::Point> x;
  std::vector<double> hv;
  x.reserve(samples.size());
  hv.reserve(samples.size());
  for (double s : samples) {
    x.push_back(p.at_arc_length(std::min(s, T)));
    hv.push_back(h(s));
  }
  // With every breakpoint of h among the samples, the running minimum over samples is the exact
  // infimum of h on [s, t].
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double running_min = hv[i];
    for (std::size_t j = i; j < samples.size(); ++j) {
      running_min = std::min(running_min, hv[j]);
      double dist2 = 0.0;
      for (std::size_t c = 0; c < x[i].size(); ++c) dist2 += (x[j][c] - x[i][c]) * (x[j][c] - x[i][c]);
      if (std::sqrt(dist2) > hv[i] + hv[j] - 2.0 * running_min + tol) return false;
    }
  }
  return true;
}

namespace {

PiecewiseLinearPath from_increments(const PiecewiseLinearPath::Point& start,
                                    const std::vector<PiecewiseLinearPath::Point>& steps) {
  std::vector<PiecewiseLinearPath::Point> pts{start};
  for (const auto& v : steps) {
    auto next = pts.back();
    for (std::size_t c = 0; c < next.size(); ++c) next[c] += v[c];
    pts.push_back(std::move(next));
  }
  return PiecewiseLinearPath(static_cast<int>(start.size()), std::move(pts));
}

}  // namespace

PiecewiseLinearPath reduce_path(const PiecewiseLinearPath& p, double rel_tol) {
  const double scale = detail::coordinate_scale(p);
  std::vector<PiecewiseLinearPath::Point> stack;
  for (std::size_t i = 0; i < p.num_segments(); ++i) {
    auto v = p.increment(i);
    if (detail::is_zero_vector(v, scale, rel_tol)) continue;
    bool keep = true;
    while (!stack.empty() && (detail::directions_match(stack.back(), v, +1, rel_tol) ||
                              detail::directions_match(stack.back(), v, -1, rel_tol))) {
      for (std::size_t c = 0; c < v.size(); ++c) v[c] += stack.back()[c];
      stack.pop_back();
      if (detail::is_zero_vector(v, scale, rel_tol)) {
        keep = false;
        break;
      }
    }
    if (keep) stack.push_back(std::move(v));
  }
  return from_increments(p.start(), stack);
}

std::optional<HeightFunction> build_height(const PiecewiseLinearPath& p, double rel_tol) {
  const double scale = detail::coordinate_scale(p);
  struct Segment {
    PiecewiseLinearPath::Point v;
    double length;
  };
  std::vector<Segment> segs;
  for (std::size_t i = 0; i < p.num_segments(); ++i) {
    auto v = p.increment(i);
    const double len = euclidean_norm(v);
    if (len > 0.0) segs.push_back({std::move(v), len});
  }
  struct Excision {
    double tau;  // time of the cut in the path after excision
    double s;    // half-width
  };
  std::vector<Excision> excisions;
  auto is_zero = [&](const Segment& g) { return g.length <= rel_tol * scale; };
  while (!segs.empty()) {
    // Merge same-direction neighbours and drop negligible leftovers.
    std::vector<Segment> merged;
    for (auto& g : segs) {
      if (is_zero(g)) continue;
      if (!merged.empty() && detail::directions_match(merged.back().v, g.v, +1, rel_tol)) {
        for (std::size_t c = 0; c < g.v.size(); ++c) merged.back().v[c] += g.v[c];
        merged.back().length += g.length;
      } else {
        merged.push_back(std::move(g));
      }
    }
    segs = std::move(merged);
    if (segs.empty()) break;
    double t = 0.0;
    bool cut = false;
    for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
      t += segs[i].length;
      if (!detail::directions_match(segs[i].v, segs[i + 1].v, -1, rel_tol)) continue;
      const double s = std::min(segs[i].length, segs[i + 1].length);
      excisions.push_back({t - s, s});
      for (Segment* g : {&segs[i], &segs[i + 1]}) {
        const double keep = g->length - s;
        for (double& c : g->v) c *= keep / g->length;
        g->length = keep;
      }
      cut = true;
      break;
    }
    if (!cut) return std::nullopt;
  }

  // Undo the excisions in reverse order. Inserting at tau a tent of half-width s on top of the
  // current h gives h(tau) + s - |tau + s - u| on [tau, tau + 2s] and shifts the rest by 2s.
  const double eps = 1e-12 * std::max(1.0, p.length());
  // Rounding can leave breakpoints a few ulps apart. h is 1-Lipschitz, so folding a node into its
  // predecessor moves values by at most eps; the final node keeps its zero.
  auto fold = [&](std::vector<double>& ts, std::vector<double>& vs) {
    std::vector<double> ft{ts.front()}, fv{vs.front()};
    for (std::size_t i = 1; i < ts.size(); ++i) {
      if (ts[i] - ft.back() > eps) {
        ft.push_back(ts[i]);
        fv.push_back(vs[i]);
      } else if (i + 1 == ts.size() && ft.size() > 1) {
        ft.back() = ts[i];
        fv.back() = vs[i];
      }
    }
    ts = std::move(ft);
    vs = std::move(fv);
  };
  std::vector<double> times{0.0}, values{0.0};
  for (auto it = excisions.rbegin(); it != excisions.rend(); ++it) {
    const double tau = std::min(it->tau, times.back());
    const double s = it->s;
    const HeightFunction current(times, values);
    const double base = current(tau);
    std::vector<double> nt, nv;
    for (std::size_t i = 0; i < times.size() && times[i] < tau; ++i) {
      nt.push_back(times[i]);
      nv.push_back(values[i]);
    }
    nt.insert(nt.end(), {tau, tau + s, tau + 2 * s});
    nv.insert(nv.end(), {base, base + s, base});
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (times[i] > tau) {
        nt.push_back(times[i] + 2 * s);
        nv.push_back(values[i]);
      }
    }
    fold(nt, nv);
    times = std::move(nt);
    values = std::move(nv);
  }
  if (p.length() > 0.0) {
    times.push_back(p.length());
    values.push_back(0.0);
    fold(times, values);
    times.back() = p.length();
  }
  return HeightFunction(std::move(times), std::move(values));
}

PiecewiseLinearPath concat_reduce(const PiecewiseLinearPath& p, const PiecewiseLinearPath& q) {
  return reduce_path(concat(p, q));
}

bool is_tree_like(const PiecewiseLinearPath& p, int depth, double tol) {
  if (depth < 1) throw DomainError("is_tree_like: depth must be at least 1");
  const bool reduced_to_point = reduce_path(p).num_segments() == 0;
  const TruncatedTensor s = path_signature(p, depth);
  const double l = p.length();
  bool signature_trivial = true;
  double scale = 1.0;
  for (int k = 1; k <= depth && signature_trivial; ++k) {
    scale *= l / k;
    const double allowed = tol * std::max(1.0, scale);
    for (double c : s.level(k)) {
      if (std::abs(c) > allowed) {
        signature_trivial = false;
        break;
      }
    }
  }
  if (reduced_to_point && !signature_trivial) {
    throw ConsistencyError("path reduces to a point but its signature does not vanish");
  }
  if (!reduced_to_point && signature_trivial) {
    throw ConsistencyError("path does not reduce to a point but its signature vanishes through depth " +
                           std::to_string(depth) + "; raise the depth");
  }
  return reduced_to_point;
}

}  // namespace sigpath

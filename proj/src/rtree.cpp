#include "sigpath/rtree.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <bit>
#include <cmath>
#include <string>

#include "sigpath/error.hpp"

namespace sigpath {

TreePseudometric::TreePseudometric(const HeightFunction& h) : h_(h) {
  const std::size_t n = h_.values().size();
  sparse_.push_back(h_.values());
  for (std::size_t width = 2; width <= n; width *= 2) {
    const auto& prev = sparse_.back();
    std::vector<double> level(n - width + 1);
    for (std::size_t i = 0; i < level.size(); ++i) level[i] = std::min(prev[i], prev[i + width / 2]);
    sparse_.push_back(std::move(level));
  }
}

double TreePseudometric::range_min(std::size_t lo, std::size_t hi) const {
  const std::size_t len = hi - lo + 1;
  const std::size_t j = static_cast<std::size_t>(std::bit_width(len)) - 1;
  return std::min(sparse_[j][lo], sparse_[j][hi + 1 - (std::size_t{1} << j)]);
}

double TreePseudometric::min_between(double s, double t) const {
  if (s > t) std::swap(s, t);
  double m = std::min(h_(s), h_(t));
  const auto& times = h_.times();
  const auto lo = static_cast<std::size_t>(std::upper_bound(times.begin(), times.end(), s) - times.begin());
  const auto hi_end = static_cast<std::size_t>(std::lower_bound(times.begin(), times.end(), t) - times.begin());
  if (lo < hi_end) m = std::min(m, range_min(lo, hi_end - 1));
  return m;
}

double TreePseudometric::operator()(double s, double t) const {
  if (s < 0.0 || t < 0.0 || s > h_.T() || t > h_.T()) {
    throw DomainError("tree_pseudometric: time outside [0, " + std::to_string(h_.T()) + "]");
  }
  return std::max(0.0, h_(s) + h_(t) - 2.0 * min_between(s, t));
}

double tree_pseudometric(const HeightFunction& h, double s, double t) { return TreePseudometric(h)(s, t); }

double QuotientTree::distance(std::size_t a, std::size_t b) const {
  const double ha = vertices.at(a).height, hb = vertices.at(b).height;
  while (a != b) {
    if (vertices[a].height >= vertices[b].height && parent[a] != a) {
      a = parent[a];
    } else {
      b = parent[b];
    }
  }
  return ha + hb - 2.0 * vertices[a].height;
}

QuotientTree build_quotient_tree(const HeightFunction& h, const std::vector<double>& sample_times) {
  if (sample_times.empty()) throw DomainError("build_quotient_tree: no samples");
  if (!std::is_sorted(sample_times.begin(), sample_times.end())) {
    throw DomainError("build_quotient_tree: sample times must be sorted");
  }
  if (sample_times.front() < 0.0 || sample_times.back() > h.T()) {
    throw DomainError("build_quotient_tree: sample time outside the domain");
  }
  for (double t : h.times()) {
    if (!std::binary_search(sample_times.begin(), sample_times.end(), t)) {
      throw DomainError("build_quotient_tree: samples must include every breakpoint of h");
    }
  }
  QuotientTree tree;
  std::vector<std::size_t> stack;  // open classes with strictly increasing heights
  for (double t : sample_times) {
    const double v = h(t);
    std::size_t popped = SIZE_MAX;
    while (!stack.empty() && tree.vertices[stack.back()].height > v) {
      popped = stack.back();
      stack.pop_back();
    }
    std::size_t cls;
    if (!stack.empty() && tree.vertices[stack.back()].height == v) {
      cls = stack.back();
    } else {
      cls = tree.vertices.size();
      tree.vertices.push_back({t, v});
      tree.parent.push_back(stack.empty() ? cls : stack.back());
      stack.push_back(cls);
    }
    if (popped != SIZE_MAX) tree.parent[popped] = cls;
    tree.sample_class.push_back(cls);
  }
  for (std::size_t c = 0; c < tree.vertices.size(); ++c) {
    if (tree.parent[c] != c) {
      tree.edges.push_back({tree.parent[c], c, tree.vertices[c].height - tree.vertices[tree.parent[c]].height});
    }
  }
  return tree;
}

bool four_point_check(const std::vector<std::vector<double>>& dist, double tol) {
  const std::size_t n = dist.size();
  for (const auto& row : dist) {
    if (row.size() != n) throw DomainError("four_point_check: distance matrix must be square");
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      for (std::size_t z = y + 1; z < n; ++z) {
        for (std::size_t w = z + 1; w < n; ++w) {
          std::array<double, 3> s{dist[x][y] + dist[z][w], dist[x][z] + dist[y][w], dist[x][w] + dist[y][z]};
          std::sort(s.begin(), s.end());
          if (s[2] - s[1] > tol) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace sigpath

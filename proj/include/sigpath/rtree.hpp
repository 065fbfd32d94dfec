#pragma once

// The R-tree coded by a height function on an interval.

#include <vector>

#include "sigpath/treelike.hpp"

namespace sigpath {

// d(s, t) = h(s) + h(t) - 2 min_[s,t] h, answered by range-minimum queries over the breakpoints.
class TreePseudometric {
 public:
  explicit TreePseudometric(const HeightFunction& h);
  double operator()(double s, double t) const;
  // Exact minimum of h on [s, t].
  double min_between(double s, double t) const;

 private:
  double range_min(std::size_t lo, std::size_t hi) const;  // over breakpoints lo..hi inclusive

  HeightFunction h_;
  std::vector<std::vector<double>> sparse_;  // sparse_[j][i] = min of values[i .. i + 2^j - 1]
};

double tree_pseudometric(const HeightFunction& h, double s, double t);

struct QuotientTree {
  struct Vertex {
    double time;    // representative (first) sample time of the class
    double height;
  };
  struct Edge {
    std::size_t parent;
    std::size_t child;
    double length;
  };
  std::vector<Vertex> vertices;  // vertex 0 is the root
  std::vector<Edge> edges;
  std::vector<std::size_t> parent;        // parent vertex; the root is its own parent
  std::vector<std::size_t> sample_class;  // vertex index of every sample

  // Length of the tree path between two vertices.
  double distance(std::size_t a, std::size_t b) const;
};

// Quotient of the sample set by d = 0. sample_times must be sorted, inside [0, T] and include
// every breakpoint of h.
QuotientTree build_quotient_tree(const HeightFunction& h, const std::vector<double>& sample_times);

// For every quadruple, the two largest of d(x,y)+d(z,w), d(x,z)+d(y,w), d(x,w)+d(y,z) agree to tol.
bool four_point_check(const std::vector<std::vector<double>>& dist, double tol = 1e-9);

}  // namespace sigpath

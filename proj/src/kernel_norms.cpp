#include <algorithm>
#include <cmath>
#include <vector>

#include "sigpath/error.hpp"
#include "sigpath/signature.hpp"

namespace sigpath {

namespace {

std::vector<double> dense_level_norms(const PiecewiseLinearPath& p, int max_level) {
  const TruncatedTensor s = path_signature(p, max_level);
  std::vector<double> b(static_cast<std::size_t>(max_level) + 1);
  double factorial = 1.0;
  for (int k = 0; k <= max_level; ++k) {
    if (k > 0) factorial *= k;
    b[static_cast<std::size_t>(k)] = factorial * level_norm(s, k);
  }
  return b;
}

std::size_t dense_size(int dim, int depth) {
  std::size_t total = 0, level = 1;
  for (int k = 0; k <= depth; ++k) {
    total += level;
    if (level > (std::size_t{1} << 40) / static_cast<std::size_t>(dim)) return std::size_t(-1);
    level *= static_cast<std::size_t>(dim);
  }
  return total;
}

// Works with J_k = K_k (k!)^2 / l^(2k), which stays in [0, 1] where K_k is the graded kernel.
// Cell update for the Goursat problem d2K_k/dsdt = <dx_s, dx_t> K_(k-1), K_k = [k == 0] on the
// axes:
//   K_k(1,1) = K_k(1,0) + K_k(0,1) - K_k(0,0) + c/2 (K_(k-1)(1,0) + K_(k-1)(0,1))
//              + c^2/12 (K_(k-2)(1,0) + K_(k-2)(0,1) + K_(k-2)(0,0)).
std::vector<double> kernel_corner(const PiecewiseLinearPath& p, int max_level, int substeps) {
  const double l = p.length();
  const std::size_t levels = static_cast<std::size_t>(max_level) + 1;
  std::vector<PiecewiseLinearPath::Point> steps;
  for (std::size_t i = 0; i < p.num_segments(); ++i) {
    auto v = p.increment(i);
    for (double& x : v) x /= (l * substeps);
    for (int r = 0; r < substeps; ++r) steps.push_back(v);
  }
  const std::size_t n = steps.size();
  std::vector<double> k1(levels), k2(levels);
  for (std::size_t k = 1; k < levels; ++k) {
    const double kk = static_cast<double>(k);
    k1[k] = kk * kk / 2.0;
    k2[k] = k >= 2 ? (kk * (kk - 1.0)) * (kk * (kk - 1.0)) / 12.0 : 0.0;
  }
  // prev holds row i, cur row i + 1; entry [j * levels + k].
  std::vector<double> prev(levels * (n + 1), 0.0), cur(levels * (n + 1), 0.0);
  for (std::size_t j = 0; j <= n; ++j) prev[j * levels] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(cur.begin(), cur.end(), 0.0);
    cur[0] = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      double c = 0.0;
      for (std::size_t a = 0; a < steps[i].size(); ++a) c += steps[i][a] * steps[j][a];
      const double c2 = c * c;
      const double* ll = &prev[j * levels];        // (i, j)
      const double* lr = &prev[(j + 1) * levels];  // (i, j+1)
      const double* ul = &cur[j * levels];         // (i+1, j)
      double* ur = &cur[(j + 1) * levels];         // (i+1, j+1)
      ur[0] = 1.0;
      for (std::size_t k = 1; k < levels; ++k) {
        double v = ul[k] + lr[k] - ll[k] + c * k1[k] * (ul[k - 1] + lr[k - 1]);
        if (k >= 2) v += c2 * k2[k] * (ul[k - 2] + lr[k - 2] + ll[k - 2]);
        ur[k] = v;
      }
    }
    prev.swap(cur);
  }
  return {prev.begin() + static_cast<std::ptrdiff_t>(n * levels), prev.end()};
}

std::vector<double> kernel_level_norms(const PiecewiseLinearPath& p, int max_level, int substeps, bool extrapolate) {
  std::vector<double> j = kernel_corner(p, max_level, substeps);
  if (extrapolate) {
    // The scheme is second order in the step, so one Richardson step removes the leading error.
    const std::vector<double> fine = kernel_corner(p, max_level, 2 * substeps);
    for (std::size_t k = 0; k < j.size(); ++k) j[k] = (4.0 * fine[k] - j[k]) / 3.0;
  }
  const double l = p.length();
  std::vector<double> b(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    b[k] = std::pow(l, static_cast<double>(k)) * std::sqrt(std::max(j[k], 0.0));
  }
  return b;
}

}  // namespace

std::vector<double> signature_level_norms(const PiecewiseLinearPath& p, int max_level, const LevelNormOptions& options) {
  if (max_level < 0) throw DomainError("max_level must be nonnegative");
  if (options.substeps < 1) throw DomainError("substeps must be positive");
  const PiecewiseLinearPath q = merge_collinear(p);
  std::vector<double> b(static_cast<std::size_t>(max_level) + 1, 0.0);
  b[0] = 1.0;
  if (q.num_segments() == 0) return b;
  if (q.num_segments() == 1) {
    // exp(v) has level k equal to v^(⊗k)/k!, whose norm is |v|^k/k!.
    const double l = q.length();
    for (int k = 1; k <= max_level; ++k) b[static_cast<std::size_t>(k)] = std::pow(l, k);
    return b;
  }
  NormMethod method = options.method;
  if (method == NormMethod::automatic) {
    method = dense_size(q.dim(), max_level) <= options.dense_budget ? NormMethod::dense : NormMethod::kernel;
  }
  if (method == NormMethod::dense) return dense_level_norms(q, max_level);
  return kernel_level_norms(q, max_level, options.substeps, options.extrapolate);
}

}  // namespace sigpath

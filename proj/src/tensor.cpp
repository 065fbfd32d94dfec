#include "sigpath/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "sigpath/error.hpp"

namespace sigpath {

namespace {

void check_shape(int dim, int depth) {
  if (dim < 1) throw DomainError("tensor dimension must be positive, got " + std::to_string(dim));
  if (depth < 0) throw DomainError("tensor depth must be nonnegative, got " + std::to_string(depth));
}

// out[x * |b| + y] += a[x] * b[y]
void accumulate_outer(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  const std::size_t nb = b.size();
  for (std::size_t x = 0; x < a.size(); ++x) {
    const double ax = a[x];
    if (ax == 0.0) continue;
    double* row = out.data() + x * nb;
    for (std::size_t y = 0; y < nb; ++y) row[y] += ax * b[y];
  }
}

}  // namespace

TruncatedTensor::TruncatedTensor(int dim, int depth) : dim_(dim), depth_(depth) {
  check_shape(dim, depth);
  offsets_.resize(static_cast<std::size_t>(depth) + 2);
  std::size_t size = 1;
  offsets_[0] = 0;
  for (int k = 0; k <= depth; ++k) {
    offsets_[static_cast<std::size_t>(k) + 1] = offsets_[static_cast<std::size_t>(k)] + size;
    size *= static_cast<std::size_t>(dim);
  }
  data_.assign(offsets_.back(), 0.0);
}

TruncatedTensor TruncatedTensor::unit(int dim, int depth) {
  TruncatedTensor t(dim, depth);
  t.data_[0] = 1.0;
  return t;
}

std::span<const double> TruncatedTensor::level(int k) const {
  if (k < 0 || k > depth_) throw DomainError("level " + std::to_string(k) + " out of range");
  return {data_.data() + offset(k), offset(k + 1) - offset(k)};
}

std::span<double> TruncatedTensor::level(int k) {
  if (k < 0 || k > depth_) throw DomainError("level " + std::to_string(k) + " out of range");
  return {data_.data() + offset(k), offset(k + 1) - offset(k)};
}

std::size_t TruncatedTensor::flat_index(std::span<const int> word) const {
  if (static_cast<int>(word.size()) > depth_) {
    throw DomainError("word of length " + std::to_string(word.size()) + " exceeds depth " +
                      std::to_string(depth_));
  }
  std::size_t idx = 0;
  for (int letter : word) {
    if (letter < 1 || letter > dim_) {
      throw DomainError("letter " + std::to_string(letter) + " outside 1.." + std::to_string(dim_));
    }
    idx = idx * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(letter - 1);
  }
  return offset(static_cast<int>(word.size())) + idx;
}

double TruncatedTensor::coefficient(std::span<const int> word) const { return data_[flat_index(word)]; }

double& TruncatedTensor::coefficient(std::span<const int> word) { return data_[flat_index(word)]; }

void TruncatedTensor::multiply_by_exponential(std::span<const double> v) {
  if (static_cast<int>(v.size()) != dim_) throw DomainError("exponent dimension mismatch");
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) return;
  const std::size_t d = static_cast<std::size_t>(dim_);
  std::vector<double> acc, next;
  // Level k of X exp(v) is sum_j X_j v^(k-j)/(k-j)!, evaluated by Horner's rule from the top level
  // down so every level read is still the original one.
  for (int k = depth_; k >= 1; --k) {
    acc.assign(level(0).begin(), level(0).end());
    for (int m = 0; m < k; ++m) {
      if (m > 0) {
        auto xm = level(m);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += xm[i];
      }
      const double scale = 1.0 / static_cast<double>(k - m);
      next.assign(acc.size() * d, 0.0);
      for (std::size_t x = 0; x < acc.size(); ++x) {
        const double ax = acc[x] * scale;
        double* row = next.data() + x * d;
        for (std::size_t y = 0; y < d; ++y) row[y] = ax * v[y];
      }
      acc.swap(next);
    }
    auto xk = level(k);
    for (std::size_t i = 0; i < acc.size(); ++i) xk[i] += acc[i];
  }
}

TruncatedTensor TruncatedTensor::truncated(int depth) const {
  if (depth < 0 || depth > depth_) throw DomainError("cannot truncate to depth " + std::to_string(depth));
  TruncatedTensor out(dim_, depth);
  std::copy_n(data_.begin(), out.data_.size(), out.data_.begin());
  return out;
}

TruncatedTensor tensor_mul(const TruncatedTensor& a, const TruncatedTensor& b) {
  if (a.dim() != b.dim()) {
    throw DomainError("tensor_mul: dimension mismatch " + std::to_string(a.dim()) + " vs " +
                      std::to_string(b.dim()));
  }
  const int depth = std::min(a.depth(), b.depth());
  TruncatedTensor out(a.dim(), depth);
  for (int k = 0; k <= depth; ++k) {
    auto dst = out.level(k);
    for (int i = 0; i <= k; ++i) accumulate_outer(a.level(i), b.level(k - i), dst);
  }
  return out;
}

TruncatedTensor tensor_exp(std::span<const double> v, int depth) {
  if (v.empty()) throw DomainError("tensor_exp: empty vector");
  for (double x : v) {
    if (!std::isfinite(x)) throw DomainError("tensor_exp: non-finite entry");
  }
  TruncatedTensor out = TruncatedTensor::unit(static_cast<int>(v.size()), depth);
  for (int k = 1; k <= depth; ++k) {
    auto prev = out.level(k - 1);
    auto cur = out.level(k);
    const std::size_t d = v.size();
    const double inv_k = 1.0 / static_cast<double>(k);
    for (std::size_t x = 0; x < prev.size(); ++x) {
      for (std::size_t y = 0; y < d; ++y) cur[x * d + y] = prev[x] * v[y] * inv_k;
    }
  }
  return out;
}

TruncatedTensor tensor_inverse(const TruncatedTensor& a) {
  if (std::abs(a.level(0)[0] - 1.0) > 1e-12) {
    throw DomainError("tensor_inverse: level 0 must be 1 (got " + std::to_string(a.level(0)[0]) + ")");
  }
  // a = 1 + x with x nilpotent in the truncation; a^-1 = sum_m (-x)^m, via r <- 1 - x r.
  TruncatedTensor neg_x = a;
  neg_x.level(0)[0] = 0.0;
  for (int k = 1; k <= a.depth(); ++k) {
    for (double& c : neg_x.level(k)) c = -c;
  }
  TruncatedTensor r = TruncatedTensor::unit(a.dim(), a.depth());
  for (int m = 0; m < a.depth(); ++m) {
    TruncatedTensor next = tensor_mul(neg_x, r);
    next.level(0)[0] += 1.0;
    r = std::move(next);
  }
  return r;
}

double level_norm(const TruncatedTensor& a, int k) {
  if (k < 0 || k > a.depth()) throw DomainError("level_norm: level " + std::to_string(k) + " out of range");
  double s = 0.0;
  for (double c : a.level(k)) s += c * c;
  return std::sqrt(s);
}

double max_abs_difference(const TruncatedTensor& a, const TruncatedTensor& b) {
  if (a.dim() != b.dim()) throw DomainError("max_abs_difference: dimension mismatch");
  double m = 0.0;
  for (int k = 0; k <= std::min(a.depth(), b.depth()); ++k) m = std::max(m, level_max_abs_difference(a, b, k));
  return m;
}

double level_max_abs_difference(const TruncatedTensor& a, const TruncatedTensor& b, int k) {
  auto x = a.level(k);
  auto y = b.level(k);
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

// ---------------------------------------------------------------------------------------------
// Dual side

DualTensor::DualTensor(int dim, const DualWord& word, double coefficient) : dim_(dim) {
  add(word, coefficient);
}

void DualTensor::check_word(const DualWord& word) const {
  for (int letter : word) {
    if (letter < 1 || letter > dim_) {
      throw DomainError("dual word letter " + std::to_string(letter) + " outside 1.." + std::to_string(dim_));
    }
  }
}

void DualTensor::add(const DualWord& word, double coefficient) {
  check_word(word);
  auto [it, inserted] = terms_.try_emplace(word, coefficient);
  if (!inserted) it->second += coefficient;
  if (it->second == 0.0) terms_.erase(it);
}

double DualTensor::coefficient(const DualWord& word) const {
  auto it = terms_.find(word);
  return it == terms_.end() ? 0.0 : it->second;
}

DualTensor DualTensor::concat_letter(int letter) const {
  DualTensor out(dim_);
  for (const auto& [word, c] : terms_) {
    DualWord w = word;
    w.push_back(letter);
    out.add(w, c);
  }
  return out;
}

DualTensor shuffle(const DualWord& e, const DualWord& f, int dim) {
  DualTensor out(dim);
  DualWord current;
  current.reserve(e.size() + f.size());
  // Enumerates every interleaving; equal words from different interleavings add up.
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t j) {
    if (i == e.size() && j == f.size()) {
      out.add(current, 1.0);
      return;
    }
    if (i < e.size()) {
      current.push_back(e[i]);
      rec(i + 1, j);
      current.pop_back();
    }
    if (j < f.size()) {
      current.push_back(f[j]);
      rec(i, j + 1);
      current.pop_back();
    }
  };
  rec(0, 0);
  return out;
}

DualTensor shuffle(const DualTensor& e, const DualTensor& f) {
  if (e.dim() != f.dim()) throw DomainError("shuffle: dimension mismatch");
  DualTensor out(e.dim());
  for (const auto& [we, ce] : e.terms()) {
    for (const auto& [wf, cf] : f.terms()) {
      for (const auto& [w, c] : shuffle(we, wf, e.dim()).terms()) out.add(w, ce * cf * c);
    }
  }
  return out;
}

double pair(const DualTensor& e, const TruncatedTensor& a) {
  if (e.dim() != a.dim()) throw DomainError("pair: dimension mismatch");
  double s = 0.0;
  for (const auto& [word, c] : e.terms()) s += c * a.coefficient(word);
  return s;
}

double pair(const DualWord& e, const TruncatedTensor& a) { return a.coefficient(e); }

}  // namespace sigpath

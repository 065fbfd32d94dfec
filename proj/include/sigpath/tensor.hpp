#pragma once

// Truncated free tensor algebra T^(n)(R^d) and its dual.
//
// Level k of a TruncatedTensor holds d^k coefficients in lexicographic
// multi-index order: the word (i1, ..., ik) lives at offset
// sum_j (i_j - 1) * d^(k - j). Words use 1-based letters throughout.

#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace sigpath {

using DualWord = std::vector<int>;

class TruncatedTensor {
 public:
  // The zero tensor (level 0 included) of the given shape.
  TruncatedTensor(int dim, int depth);

  // (1, 0, ..., 0)
  static TruncatedTensor unit(int dim, int depth);

  int dim() const { return dim_; }
  int depth() const { return depth_; }

  std::span<const double> level(int k) const;
  std::span<double> level(int k);

  // Coefficient of a word; its length selects the level.
  double coefficient(std::span<const int> word) const;
  double& coefficient(std::span<const int> word);
  double coefficient(std::initializer_list<int> word) const {
    return coefficient(std::span<const int>(word.begin(), word.size()));
  }

  std::span<const double> data() const { return data_; }

  // Right-multiplies in place by exp(v). Same result as tensor_mul(*this, tensor_exp(v, depth()))
  // without materialising the exponential.
  void multiply_by_exponential(std::span<const double> v);

  // The same tensor cut down to a smaller depth.
  TruncatedTensor truncated(int depth) const;

 private:
  std::size_t offset(int k) const { return offsets_[static_cast<std::size_t>(k)]; }
  std::size_t flat_index(std::span<const int> word) const;

  int dim_;
  int depth_;
  std::vector<std::size_t> offsets_;
  std::vector<double> data_;
};

TruncatedTensor tensor_mul(const TruncatedTensor& a, const TruncatedTensor& b);
TruncatedTensor tensor_exp(std::span<const double> v, int depth);
TruncatedTensor tensor_inverse(const TruncatedTensor& a);

// Euclidean norm of the level-k coefficient array.
double level_norm(const TruncatedTensor& a, int k);

// Largest absolute coefficient difference over levels 0..min depth.
double max_abs_difference(const TruncatedTensor& a, const TruncatedTensor& b);

// Largest absolute coefficient difference on level k only.
double level_max_abs_difference(const TruncatedTensor& a, const TruncatedTensor& b, int k);

// A finite linear combination of dual words: an element of T(R^d*).
class DualTensor {
 public:
  explicit DualTensor(int dim) : dim_(dim) {}
  DualTensor(int dim, const DualWord& word, double coefficient = 1.0);

  int dim() const { return dim_; }
  const std::map<DualWord, double>& terms() const { return terms_; }

  void add(const DualWord& word, double coefficient);
  double coefficient(const DualWord& word) const;

  // Appends one letter to every word.
  DualTensor concat_letter(int letter) const;

  friend bool operator==(const DualTensor&, const DualTensor&) = default;

 private:
  void check_word(const DualWord& word) const;

  int dim_;
  std::map<DualWord, double> terms_;
};

// Sum over all interleavings of e and f; repeated letters accumulate multiplicity.
DualTensor shuffle(const DualWord& e, const DualWord& f, int dim);
DualTensor shuffle(const DualTensor& e, const DualTensor& f);

// <e, a> = sum_w coeff(w) * a_w.
double pair(const DualTensor& e, const TruncatedTensor& a);
double pair(const DualWord& e, const TruncatedTensor& a);

}  // namespace sigpath

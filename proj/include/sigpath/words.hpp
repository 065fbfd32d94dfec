#pragma once

// Words in a free group on d generators, their lattice paths, and the GL(2,C) development
// certificate for triviality.

#include <array>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "sigpath/signature.hpp"

namespace sigpath {

struct Letter {
  int index;  // 1..d
  int sign;   // +1 or -1
  Letter inverse() const { return {index, -sign}; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

class Word {
 public:
  explicit Word(int alphabet_size, std::vector<Letter> letters = {});

  int alphabet_size() const { return alphabet_size_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const;
  friend Word operator*(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;

 private:
  int alphabet_size_;
  std::vector<Letter> letters_;
};

// 'a'..'z' are generators 1..26, 'A'..'Z' their inverses; whitespace is ignored.
// alphabet_size 0 means max(2, largest index used).
Word parse_word(std::string_view text, int alphabet_size = 0);
std::string to_string(const Word& w);

Word free_reduce(const Word& w);

// Unit steps +-e_index from the origin.
PiecewiseLinearPath word_to_lattice_path(const Word& w);

// floor(e log(1 + sqrt 2) L). Throws NumericalError if the product is within 1e-9 of an integer.
long N_of_L(long L);

using Mat2 = std::array<std::complex<double>, 4>;  // row-major [[m0, m1], [m2, m3]]

Mat2 mat2_identity();
Mat2 mat2_mul(const Mat2& a, const Mat2& b);
// a -> [[0, 1], [1, 0]], b -> [[0, i], [-i, 0]], negated for inverse letters.
Mat2 letter_matrix(const Letter& letter);
// exp(theta A) = cosh(theta) I + sinh(theta) A, since A^2 = I.
Mat2 letter_exponential(const Letter& letter, double theta);
// Product of letter exponentials in word order, each at scale theta.
Mat2 word_matrix(const Word& w, double theta);

// Degree components 0..N of the product of exp(theta A_letter) over the word.
using GradedMatrixSeries = std::vector<Mat2>;

// Entries are computed exactly (k! times degree k is a Gaussian-integer matrix at theta = 1) and
// rounded once at the end.
GradedMatrixSeries gl2_develop(const Word& w, int depth, double theta = 1.0);

// Degree-wise product truncated at the shorter depth.
GradedMatrixSeries graded_product(const GradedMatrixSeries& a, const GradedMatrixSeries& b);

struct Certificate {
  bool trivial;   // every degree 1..depth vanishes
  long depth;     // depth examined
  int first_nonzero_degree;  // 0 when trivial
};

// Exact vanishing test of degrees 1..depth of gl2_develop(w, depth).
Certificate certificate_at_depth(const Word& w, long depth);
// certificate_at_depth(w, N_of_L(|w|)); the empty word is trivial at depth 0.
Certificate triviality_certificate(const Word& w);

// Tr(M conj(M)^T) < 6.
bool disc_trace_test(const Mat2& m);

// d words over {a, b} whose substitution embeds the free group on d generators.
std::vector<Word> embed_free_group(int d);

// Substitutes each generator by its embedding word without reducing.
Word embed_word(const Word& w);
// Same, with the images supplied (gens[i] replaces generator i + 1).
Word embed_word(const Word& w, const std::vector<Word>& gens);

// Depth floor((2 ceil(log3(d/2)) + 3) e log(1 + sqrt 2) |w|).
long certify_d_dim_depth(int d, std::size_t length);

// Certificate for a word over d >= 2 letters via the embedding into the 2-letter free group.
Certificate certify_d_dim(const Word& w);

}  // namespace sigpath

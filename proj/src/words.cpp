#include "sigpath/words.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <cmath>
#include <numbers>

#include "sigpath/error.hpp"

namespace sigpath {

Word::Word(int alphabet_size, std::vector<Letter> letters) : alphabet_size_(alphabet_size), letters_(std::move(letters)) {
  if (alphabet_size_ < 1) throw DomainError("alphabet size must be positive");
  for (const Letter& x : letters_) {
    if (x.index < 1 || x.index > alphabet_size_) {
      throw DomainError("letter index " + std::to_string(x.index) + " outside 1.." + std::to_string(alphabet_size_));
    }
    if (x.sign != 1 && x.sign != -1) throw DomainError("letter sign must be +1 or -1");
  }
}

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->inverse());
  return Word(alphabet_size_, std::move(out));
}

Word operator*(const Word& a, const Word& b) {
  std::vector<Letter> out = a.letters_;
  out.insert(out.end(), b.letters_.begin(), b.letters_.end());
  return Word(std::max(a.alphabet_size_, b.alphabet_size_), std::move(out));
}

Word parse_word(std::string_view text, int alphabet_size) {
  std::vector<Letter> letters;
  int largest = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const unsigned char ch = static_cast<unsigned char>(text[i]);
    if (std::isspace(ch)) continue;
    if (ch >= 'a' && ch <= 'z') {
      letters.push_back({ch - 'a' + 1, 1});
    } else if (ch >= 'A' && ch <= 'Z') {
      letters.push_back({ch - 'A' + 1, -1});
    } else {
      throw ParseError("unexpected character '" + std::string(1, text[i]) + "' at position " + std::to_string(i) +
                       " in word");
    }
    largest = std::max(largest, letters.back().index);
  }
  if (alphabet_size == 0) alphabet_size = std::max(2, largest);
  if (largest > alphabet_size) {
    throw DomainError("word uses letter " + std::to_string(largest) + " beyond alphabet size " +
                      std::to_string(alphabet_size));
  }
  return Word(alphabet_size, std::move(letters));
}

std::string to_string(const Word& w) {
  if (w.alphabet_size() > 26) throw DomainError("words over more than 26 letters have no text form");
  std::string s;
  for (const Letter& x : w.letters()) s.push_back(static_cast<char>((x.sign > 0 ? 'a' : 'A') + x.index - 1));
  return s;
}

Word free_reduce(const Word& w) {
  std::vector<Letter> stack;
  for (const Letter& x : w.letters()) {
    if (!stack.empty() && stack.back() == x.inverse()) {
      stack.pop_back();
    } else {
      stack.push_back(x);
    }
  }
  return Word(w.alphabet_size(), std::move(stack));
}

PiecewiseLinearPath word_to_lattice_path(const Word& w) {
  std::vector<PiecewiseLinearPath::Point> pts;
  pts.reserve(w.size() + 1);
  PiecewiseLinearPath::Point x(static_cast<std::size_t>(w.alphabet_size()), 0.0);
  pts.push_back(x);
  for (const Letter& l : w.letters()) {
    x[static_cast<std::size_t>(l.index - 1)] += l.sign;
    pts.push_back(x);
  }
  return PiecewiseLinearPath(w.alphabet_size(), std::move(pts));
}

namespace {

long guarded_floor(double value) {
  const double nearest = std::round(value);
  if (std::abs(value - nearest) < 1e-9) {
    throw NumericalError("floor of " + std::to_string(value) + " is ambiguous at double precision");
  }
  return static_cast<long>(std::floor(value));
}

const double kLatticeRate = std::numbers::e * std::log(1.0 + std::numbers::sqrt2);

}  // namespace

long N_of_L(long L) {
  if (L < 1) throw DomainError("N_of_L: word length must be at least 1");
  return guarded_floor(kLatticeRate * static_cast<double>(L));
}

Mat2 mat2_identity() { return {1.0, 0.0, 0.0, 1.0}; }

Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

namespace {

void check_two_letters(const Word& w) {
  if (w.alphabet_size() != 2) {
    throw DomainError("GL(2,C) development needs a 2-letter alphabet, got " + std::to_string(w.alphabet_size()));
  }
}

}  // namespace

Mat2 letter_matrix(const Letter& letter) {
  using namespace std::complex_literals;
  const double s = letter.sign;
  if (letter.index == 1) return {0.0, s, s, 0.0};
  if (letter.index == 2) return {0.0, s * 1i, -s * 1i, 0.0};
  throw DomainError("letter_matrix: only letters 1 and 2 have GL(2,C) images");
}

Mat2 letter_exponential(const Letter& letter, double theta) {
  const Mat2 a = letter_matrix(letter);
  const double ch = std::cosh(theta), sh = std::sinh(theta);
  return {ch + sh * a[0], sh * a[1], sh * a[2], ch + sh * a[3]};
}

Mat2 word_matrix(const Word& w, double theta) {
  check_two_letters(w);
  Mat2 m = mat2_identity();
  for (const Letter& x : w.letters()) m = mat2_mul(m, letter_exponential(x, theta));
  return m;
}

namespace {

// Gaussian integer 2x2 matrices over an integer type.
template <class Int>
struct GaussMat {
  std::array<Int, 4> re{}, im{};

  bool is_zero() const {
    for (int i = 0; i < 4; ++i) {
      if (re[static_cast<std::size_t>(i)] != 0 || im[static_cast<std::size_t>(i)] != 0) return false;
    }
    return true;
  }
};

// s_k = k! times degree k of the product of letter exponentials. Right-multiplying by exp(A),
// with A^2 = I, gives s'_k = E_k + O_k A where E_k (O_k) sums binom(k, j) s_(k-j) over even
// (odd) j.
template <class Int>
std::vector<GaussMat<Int>> exact_series(const Word& w, int depth) {
  const std::size_t n = static_cast<std::size_t>(depth) + 1;
  std::vector<std::vector<Int>> binom(n);
  for (std::size_t k = 0; k < n; ++k) {
    binom[k].assign(k + 1, Int(1));
    for (std::size_t j = 1; j < k; ++j) binom[k][j] = binom[k - 1][j - 1] + binom[k - 1][j];
  }
  std::vector<GaussMat<Int>> s(n), next(n);
  s[0].re = {Int(1), Int(0), Int(0), Int(1)};
  for (const Letter& x : w.letters()) {
    for (std::size_t k = 0; k < n; ++k) {
      GaussMat<Int> even, odd;
      for (std::size_t j = 0; j <= k; ++j) {
        const GaussMat<Int>& src = s[k - j];
        GaussMat<Int>& dst = (j % 2 == 0) ? even : odd;
        for (std::size_t e = 0; e < 4; ++e) {
          dst.re[e] += binom[k][j] * src.re[e];
          dst.im[e] += binom[k][j] * src.im[e];
        }
      }
      GaussMat<Int> out = even;
      // odd * A with A = sign [[0,1],[1,0]] swaps columns; A = sign [[0,i],[-i,0]] maps
      // [[p,q],[r,t]] to [[-i q, i p], [-i t, i r]].
      const Int sg(x.sign);
      for (std::size_t row = 0; row < 2; ++row) {
        const std::size_t c0 = 2 * row, c1 = 2 * row + 1;
        if (x.index == 1) {
          out.re[c0] += sg * odd.re[c1];
          out.im[c0] += sg * odd.im[c1];
          out.re[c1] += sg * odd.re[c0];
          out.im[c1] += sg * odd.im[c0];
        } else {
          // -i (a + bi) = b - ai ; i (a + bi) = -b + ai
          out.re[c0] += sg * odd.im[c1];
          out.im[c0] -= sg * odd.re[c1];
          out.re[c1] -= sg * odd.im[c0];
          out.im[c1] += sg * odd.re[c0];
        }
      }
      next[k] = std::move(out);
    }
    s.swap(next);
  }
  return s;
}

using BigInt = boost::multiprecision::cpp_int;

// Entries of s_k are bounded by max(L, 2)^k, so 128-bit arithmetic suffices below 2^120.
bool fits_int128(std::size_t length, long depth) {
  return static_cast<double>(depth) * std::log2(std::max<double>(2.0, static_cast<double>(length))) < 120.0;
}

long double to_long_double(const __int128& x) { return static_cast<long double>(x); }
long double to_long_double(const BigInt& x) { return x.convert_to<long double>(); }

template <class Int>
GradedMatrixSeries to_complex(const std::vector<GaussMat<Int>>& s, double theta) {
  GradedMatrixSeries out(s.size());
  long double factorial = 1.0L, power = 1.0L;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k > 0) {
      factorial *= static_cast<long double>(k);
      power *= theta;
    }
    for (std::size_t e = 0; e < 4; ++e) {
      out[k][e] = {static_cast<double>(to_long_double(s[k].re[e]) / factorial * power),
                   static_cast<double>(to_long_double(s[k].im[e]) / factorial * power)};
    }
  }
  return out;
}

template <class Int>
int first_nonzero(const std::vector<GaussMat<Int>>& s) {
  for (std::size_t k = 1; k < s.size(); ++k) {
    if (!s[k].is_zero()) return static_cast<int>(k);
  }
  return 0;
}

}  // namespace

GradedMatrixSeries gl2_develop(const Word& w, int depth, double theta) {
  check_two_letters(w);
  if (depth < 0) throw DomainError("gl2_develop: depth must be nonnegative");
  if (fits_int128(w.size(), depth)) return to_complex(exact_series<__int128>(w, depth), theta);
  return to_complex(exact_series<BigInt>(w, depth), theta);
}

GradedMatrixSeries graded_product(const GradedMatrixSeries& a, const GradedMatrixSeries& b) {
  const std::size_t n = std::min(a.size(), b.size());
  GradedMatrixSeries out(n, Mat2{});
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i <= k; ++i) {
      const Mat2 p = mat2_mul(a[i], b[k - i]);
      for (std::size_t e = 0; e < 4; ++e) out[k][e] += p[e];
    }
  }
  return out;
}

Certificate certificate_at_depth(const Word& w, long depth) {
  check_two_letters(w);
  if (depth < 0) throw DomainError("certificate depth must be nonnegative");
  const int d = static_cast<int>(depth);
  const int nz = fits_int128(w.size(), depth) ? first_nonzero(exact_series<__int128>(w, d))
                                              : first_nonzero(exact_series<BigInt>(w, d));
  return {nz == 0, depth, nz};
}

Certificate triviality_certificate(const Word& w) {
  check_two_letters(w);
  if (w.empty()) return {true, 0, 0};
  return certificate_at_depth(w, N_of_L(static_cast<long>(w.size())));
}

bool disc_trace_test(const Mat2& m) {
  double t = 0.0;
  for (const auto& z : m) t += std::norm(z);
  return t < 6.0;
}

namespace {

// Lexicographic rank with a < A < b < B.
int letter_rank(const Letter& x) { return (x.index - 1) * 2 + (x.sign < 0 ? 1 : 0); }

void reduced_words(std::size_t length, std::vector<Letter>& prefix, std::vector<std::vector<Letter>>& out) {
  if (prefix.size() == length) {
    out.push_back(prefix);
    return;
  }
  for (int rank = 0; rank < 4; ++rank) {
    const Letter x{rank / 2 + 1, rank % 2 == 0 ? 1 : -1};
    if (!prefix.empty() && prefix.back() == x.inverse()) continue;
    prefix.push_back(x);
    reduced_words(length, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Word> embed_free_group(int d) {
  if (d < 1) throw DomainError("embed_free_group: need at least one generator");
  std::size_t l = 1;
  for (long capacity = 2; capacity < d; capacity *= 3) ++l;
  std::vector<std::vector<Letter>> all;
  std::vector<Letter> prefix;
  reduced_words(l, prefix, all);
  std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                        [](const Letter& p, const Letter& q) { return letter_rank(p) < letter_rank(q); });
  });
  std::vector<Word> out;
  for (int cls = 1; cls <= 2 && static_cast<int>(out.size()) < d; ++cls) {
    std::vector<std::vector<Letter>> members;
    for (const auto& w : all) {
      if (w.front().index == cls) members.push_back(w);
    }
    const int other = 3 - cls;
    const std::array<Letter, 4> preference{Letter{other, 1}, Letter{other, -1}, Letter{cls, 1}, Letter{cls, -1}};
    for (std::size_t i = 0; i + 1 < members.size() && static_cast<int>(out.size()) < d; i += 2) {
      const Word u(2, members[i]);
      const Word v(2, members[i + 1]);
      const Letter last_u = u.letters().back();
      const Letter last_v = v.letters().back();
      const Letter* c = nullptr;
      for (const Letter& cand : preference) {
        if (!(cand == last_u.inverse()) && !(cand == last_v)) {
          c = &cand;
          break;
        }
      }
      out.push_back(u * Word(2, {*c}) * v.inverse());
    }
  }
  return out;
}

Word embed_word(const Word& w) { return embed_word(w, embed_free_group(w.alphabet_size())); }

Word embed_word(const Word& w, const std::vector<Word>& gens) {
  if (gens.size() < static_cast<std::size_t>(w.alphabet_size())) {
    throw DomainError("embed_word: fewer images than generators");
  }
  std::vector<Letter> out;
  for (const Letter& x : w.letters()) {
    const Word& g = gens[static_cast<std::size_t>(x.index - 1)];
    const Word piece = x.sign > 0 ? g : g.inverse();
    out.insert(out.end(), piece.letters().begin(), piece.letters().end());
  }
  return Word(2, std::move(out));
}

long certify_d_dim_depth(int d, std::size_t length) {
  if (d < 2) throw DomainError("certify_d_dim: need at least two generators");
  long k = 0;
  for (long capacity = 2; capacity < d; capacity *= 3) ++k;
  if (length == 0) return 0;
  return guarded_floor(static_cast<double>(2 * k + 3) * kLatticeRate * static_cast<double>(length));
}

Certificate certify_d_dim(const Word& w) {
  const long depth = certify_d_dim_depth(w.alphabet_size(), w.size());
  if (w.empty()) return {true, 0, 0};
  return certificate_at_depth(embed_word(w), depth);
}

}  // namespace sigpath

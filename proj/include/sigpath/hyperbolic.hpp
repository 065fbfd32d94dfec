#pragma once

// Hyperboloid model H = {x : I_d(x, x) = -1, x_(d+1) > 0} with I_d = diag(1, ..., 1, -1), the
// development of paths into SO(I_d), and the chord-length and length-recovery estimates built
// on it.

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sigpath/signature.hpp"

namespace sigpath {

// Dense square matrix, row-major. Used for elements of SO(I_d), which are (d+1) x (d+1).
class LorentzMatrix {
 public:
  explicit LorentzMatrix(int dim);  // identity on R^(dim+1)
  static LorentzMatrix identity(int dim) { return LorentzMatrix(dim); }

  int dim() const { return dim_; }
  int size() const { return dim_ + 1; }
  double operator()(int r, int c) const { return a_[static_cast<std::size_t>(r * size() + c)]; }
  double& operator()(int r, int c) { return a_[static_cast<std::size_t>(r * size() + c)]; }
  std::span<const double> data() const { return a_; }

  std::vector<double> apply(std::span<const double> x) const;
  LorentzMatrix transpose() const;
  friend LorentzMatrix operator*(const LorentzMatrix& a, const LorentzMatrix& b);

 private:
  int dim_;
  std::vector<double> a_;
};

using HyperbolicPoint = std::vector<double>;

// o = (0, ..., 0, 1)
HyperbolicPoint hyperbolic_origin(int dim);

double lorentz_form(std::span<const double> x, std::span<const double> y);

// acosh(-I_d(x, y)). Values of -I_d in [1 - 1e-9, 1) count as 1; anything smaller throws.
double hyp_distance(std::span<const double> x, std::span<const double> y);

// Largest entry of |M^T J M - J|.
double lorentz_defect(const LorentzMatrix& m);

// The matrix F(v): v in the last column and the last row, zero elsewhere.
LorentzMatrix lie_matrix(std::span<const double> v);

// exp(F(v)) = I + sinh(r) F(u) + (cosh(r) - 1) F(u)^2, r = |v|, u = v / r.
LorentzMatrix segment_exp(std::span<const double> v);

// Solution of dG = F(d gamma) G, G_0 = I, along alpha * p: the product
// segment_exp(alpha v_n) ... segment_exp(alpha v_1).
LorentzMatrix develop(const PiecewiseLinearPath& p, double alpha);

// Vertices of the piecewise geodesic (E_1 ... E_i) o, E_i = segment_exp(alpha v_i); i = 0..n.
// Segment i has length alpha |v_i| and consecutive segments meet at the Euclidean turning angle.
std::vector<HyperbolicPoint> rolling_vertices(const PiecewiseLinearPath& p, double alpha);

// d(o, develop(p, alpha) o), computed with a running logarithmic scale so that alpha * length in
// the thousands does not overflow.
double chord_distance(const PiecewiseLinearPath& p, double alpha);

// Side a opposite angle A: cosh a = cosh b cosh c - sinh b sinh c cos A.
double cosine_rule_side(double b, double c, double angle_a);
// Angle opposite side a in a triangle with sides a, b, c.
double cosine_rule_angle(double a, double b, double c);

// K(theta) = log(2 / (1 - cos theta)), theta in (0, pi].
double K_theta(double theta);

// Modulus of continuity of the unit tangent, delta(h), capped at 2.
class SmoothnessProfile {
 public:
  static SmoothnessProfile lipschitz(double kappa);
  // (h, delta) samples, h strictly increasing starting at 0, delta nondecreasing. Linear between
  // samples, constant after the last one.
  static SmoothnessProfile tabulated(std::vector<std::pair<double, double>> samples);

  double operator()(double h) const;

 private:
  SmoothnessProfile() = default;
  bool lipschitz_ = true;
  double kappa_ = 0.0;
  std::vector<std::pair<double, double>> samples_;
};

struct EstimateConstants {
  double C = 0.8875;
  int M = 1;

  static double R0();  // log(1 + sqrt 2)
  double D1() const;   // (4^D2 / (2C) + 16 log 2 / pi^2) / R0
  double D2() const;   // (M + 1) R0 / M
  // delta(D2 / alpha) must stay below this for the chord estimate to apply.
  double admissibility_threshold() const;  // sqrt(2 (sqrt 2 - sqrt(1 + C^2)) 4^-D2)
  void validate() const;
};

// D1 delta(D2/alpha)^2 alpha l, a bound on |d(o, Gamma_alpha o) - alpha l|, or nullopt when
// alpha l < M R0 or the admissibility condition fails.
std::optional<double> chord_defect_bound(double l, double alpha, const SmoothnessProfile& delta,
                                         const EstimateConstants& k);

// Largest singular value by power iteration on M^T M.
double matrix_op_norm(const LorentzMatrix& m);

// e^(1/2) / (sqrt(2 pi) (e - 1))
double stirling_constant();
// Bound on sum_(r >= m) x^r / r! for m >= e x.
double stirling_tail(double x, long m);

struct LengthEstimate {
  double log_c;     // log C_alpha
  double c;         // C_alpha = e^-alpha sum_k alpha^k b_k / k!  (may overflow to inf)
  double estimate;  // 1 + log(C_alpha) / alpha
};

// Poisson average of b_k = k! |S^k|. Stops once a term drops below 1e-16 of the running sum
// after the terms have started decreasing.
LengthEstimate length_recovery(std::span<const double> b, double alpha);

// length_recovery for a path of length l given the norms b_unit of the same path scaled to unit
// length (b_k = l^k b_unit_k). Avoids overflowing b_k when l^k is huge.
LengthEstimate length_recovery_rescaled(std::span<const double> b_unit, double l, double alpha);

// l^-k b_k
double strong_recovery_ratio(std::span<const double> b, double l, int k);

struct NonzeroLevel {
  long N;        // ceil(e alpha l)
  double alpha;  // the alpha that produced it
};

// Smallest level bound N(l, delta) such that a path of length l with tangent modulus delta cannot
// have signature levels 1..N all zero.
NonzeroLevel min_nonzero_level(double l, const SmoothnessProfile& delta, const EstimateConstants& k,
                               double alpha_cap = 1e6);

}  // namespace sigpath

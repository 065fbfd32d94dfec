#include "sigpath/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sigpath/error.hpp"

namespace sigpath {

LorentzMatrix::LorentzMatrix(int dim) : dim_(dim) {
  if (dim < 1) throw DomainError("hyperbolic dimension must be positive");
  a_.assign(static_cast<std::size_t>(size() * size()), 0.0);
  for (int i = 0; i < size(); ++i) (*this)(i, i) = 1.0;
}

std::vector<double> LorentzMatrix::apply(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != size()) throw DomainError("LorentzMatrix::apply: size mismatch");
  std::vector<double> y(x.size(), 0.0);
  for (int r = 0; r < size(); ++r) {
    double s = 0.0;
    for (int c = 0; c < size(); ++c) s += (*this)(r, c) * x[static_cast<std::size_t>(c)];
    y[static_cast<std::size_t>(r)] = s;
  }
  return y;
}

LorentzMatrix LorentzMatrix::transpose() const {
  LorentzMatrix t(dim_);
  for (int r = 0; r < size(); ++r) {
    for (int c = 0; c < size(); ++c) t(r, c) = (*this)(c, r);
  }
  return t;
}

LorentzMatrix operator*(const LorentzMatrix& a, const LorentzMatrix& b) {
  if (a.dim() != b.dim()) throw DomainError("LorentzMatrix product: dimension mismatch");
  LorentzMatrix out(a.dim());
  const int n = a.size();
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += a(r, k) * b(k, c);
      out(r, c) = s;
    }
  }
  return out;
}

HyperbolicPoint hyperbolic_origin(int dim) {
  if (dim < 1) throw DomainError("hyperbolic dimension must be positive");
  HyperbolicPoint o(static_cast<std::size_t>(dim) + 1, 0.0);
  o.back() = 1.0;
  return o;
}

double lorentz_form(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) throw DomainError("lorentz_form: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) s += x[i] * y[i];
  return s - x.back() * y.back();
}

double hyp_distance(std::span<const double> x, std::span<const double> y) {
  const double ch = -lorentz_form(x, y);
  if (ch >= 1.0) return std::acosh(ch);
  if (ch >= 1.0 - 1e-9) return 0.0;
  throw DomainError("hyp_distance: -I(x,y) = " + std::to_string(ch) + " < 1; points are not on the hyperboloid");
}

double lorentz_defect(const LorentzMatrix& m) {
  const int n = m.size();
  double worst = 0.0;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += m(k, r) * m(k, c) * (k == n - 1 ? -1.0 : 1.0);
      const double j = r == c ? (r == n - 1 ? -1.0 : 1.0) : 0.0;
      worst = std::max(worst, std::abs(s - j));
    }
  }
  return worst;
}

LorentzMatrix lie_matrix(std::span<const double> v) {
  LorentzMatrix f(static_cast<int>(v.size()));
  const int d = f.dim();
  for (int i = 0; i <= d; ++i) f(i, i) = 0.0;
  for (int i = 0; i < d; ++i) {
    f(i, d) = v[static_cast<std::size_t>(i)];
    f(d, i) = v[static_cast<std::size_t>(i)];
  }
  return f;
}

LorentzMatrix segment_exp(std::span<const double> v) {
  LorentzMatrix e(static_cast<int>(v.size()));
  const double r = euclidean_norm(v);
  if (r == 0.0) return e;
  const int d = e.dim();
  const double sh = std::sinh(r);
  const double ch1 = std::cosh(r) - 1.0;
  // F(u)^2 is u u^T in the top-left block and 1 in the corner.
  for (int i = 0; i < d; ++i) {
    const double ui = v[static_cast<std::size_t>(i)] / r;
    for (int j = 0; j < d; ++j) e(i, j) += ch1 * ui * v[static_cast<std::size_t>(j)] / r;
    e(i, d) = sh * ui;
    e(d, i) = sh * ui;
  }
  e(d, d) = 1.0 + ch1;
  return e;
}

namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be a finite nonnegative number");
}

std::vector<double> scaled(std::vector<double> v, double alpha) {
  for (double& x : v) x *= alpha;
  return v;
}

}  // namespace

LorentzMatrix develop(const PiecewiseLinearPath& p, double alpha) {
  check_alpha(alpha);
  LorentzMatrix g(p.dim());
  for (std::size_t i = 0; i < p.num_segments(); ++i) g = segment_exp(scaled(p.increment(i), alpha)) * g;
  return g;
}

std::vector<HyperbolicPoint> rolling_vertices(const PiecewiseLinearPath& p, double alpha) {
  check_alpha(alpha);
  const HyperbolicPoint o = hyperbolic_origin(p.dim());
  std::vector<HyperbolicPoint> out{o};
  LorentzMatrix g(p.dim());
  for (std::size_t i = 0; i < p.num_segments(); ++i) {
    g = g * segment_exp(scaled(p.increment(i), alpha));
    out.push_back(g.apply(o));
  }
  return out;
}

double chord_distance(const PiecewiseLinearPath& p, double alpha) {
  check_alpha(alpha);
  // x = e^scale * v with max |v_i| = 1 after each step; d = acosh(x_last).
  std::vector<double> v = hyperbolic_origin(p.dim());
  double scale = 0.0;
  for (std::size_t i = 0; i < p.num_segments(); ++i) {
    // Pieces of hyperbolic length <= 256 keep cosh finite.
    const double r = alpha * p.segment_length(i);
    const int pieces = std::max(1, static_cast<int>(std::ceil(r / 256.0)));
    const LorentzMatrix e = segment_exp(scaled(p.increment(i), alpha / pieces));
    for (int j = 0; j < pieces; ++j) {
      v = e.apply(v);
      double m = 0.0;
      for (double x : v) m = std::max(m, std::abs(x));
      for (double& x : v) x /= m;
      scale += std::log(m);
    }
  }
  const double last = v.back();
  const double floor_term = std::exp(-2.0 * scale);
  const double disc = last * last - floor_term;
  if (disc <= 0.0) return 0.0;
  return std::max(0.0, scale + std::log(last + std::sqrt(disc)));
}

double cosine_rule_side(double b, double c, double angle_a) {
  if (b < 0.0 || c < 0.0) throw DomainError("cosine_rule_side: side lengths must be nonnegative");
  if (angle_a < 0.0 || angle_a > std::numbers::pi) throw DomainError("cosine_rule_side: angle outside [0, pi]");
  if (angle_a == std::numbers::pi) return b + c;
  const double ch = std::cosh(b) * std::cosh(c) - std::sinh(b) * std::sinh(c) * std::cos(angle_a);
  return std::acosh(std::max(1.0, ch));
}

double cosine_rule_angle(double a, double b, double c) {
  if (a < 0.0 || b <= 0.0 || c <= 0.0) throw DomainError("cosine_rule_angle: degenerate triangle");
  const double cos_a = (std::cosh(b) * std::cosh(c) - std::cosh(a)) / (std::sinh(b) * std::sinh(c));
  return std::acos(std::clamp(cos_a, -1.0, 1.0));
}

double K_theta(double theta) {
  if (!(theta > 0.0) || theta > std::numbers::pi) throw DomainError("K_theta: angle must lie in (0, pi]");
  return std::log(2.0 / (1.0 - std::cos(theta)));
}

SmoothnessProfile SmoothnessProfile::lipschitz(double kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw DomainError("Lipschitz constant must be finite and >= 0");
  SmoothnessProfile p;
  p.kappa_ = kappa;
  return p;
}

SmoothnessProfile SmoothnessProfile::tabulated(std::vector<std::pair<double, double>> samples) {
  if (samples.empty()) throw DomainError("tabulated profile needs at least one sample");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto [h, d] = samples[i];
    if (!(h >= 0.0) || !(d >= 0.0) || !std::isfinite(h) || !std::isfinite(d)) {
      throw DomainError("tabulated profile samples must be finite and nonnegative");
    }
    if (i > 0 && (h <= samples[i - 1].first || d < samples[i - 1].second)) {
      throw DomainError("tabulated profile must have increasing h and nondecreasing delta");
    }
  }
  SmoothnessProfile p;
  p.lipschitz_ = false;
  p.samples_ = std::move(samples);
  return p;
}

double SmoothnessProfile::operator()(double h) const {
  if (lipschitz_) return std::min(kappa_ * h, 2.0);
  if (h <= samples_.front().first) return std::min(samples_.front().second, 2.0);
  if (h >= samples_.back().first) return std::min(samples_.back().second, 2.0);
  auto hi = std::upper_bound(samples_.begin(), samples_.end(), h,
                             [](double x, const std::pair<double, double>& s) { return x < s.first; });
  auto lo = hi - 1;
  const double w = (h - lo->first) / (hi->first - lo->first);
  return std::min(lo->second + w * (hi->second - lo->second), 2.0);
}

double EstimateConstants::R0() { return std::log(1.0 + std::numbers::sqrt2); }

double EstimateConstants::D2() const { return (M + 1) * R0() / M; }

double EstimateConstants::D1() const {
  const double pi = std::numbers::pi;
  return (std::pow(4.0, D2()) / (2.0 * C) + 16.0 * std::numbers::ln2 / (pi * pi)) / R0();
}

double EstimateConstants::admissibility_threshold() const {
  return std::sqrt(2.0 * (std::numbers::sqrt2 - std::sqrt(1.0 + C * C)) * std::pow(4.0, -D2()));
}

void EstimateConstants::validate() const {
  if (!(C > 0.0 && C < 1.0)) throw DomainError("estimate constant C must lie in (0, 1)");
  if (M < 1) throw DomainError("estimate constant M must be at least 1");
}

std::optional<double> chord_defect_bound(double l, double alpha, const SmoothnessProfile& delta,
                                         const EstimateConstants& k) {
  k.validate();
  if (!(l >= 0.0) || !(alpha > 0.0)) throw DomainError("chord_defect_bound: need l >= 0 and alpha > 0");
  if (alpha * l < k.M * EstimateConstants::R0()) return std::nullopt;
  const double dv = delta(k.D2() / alpha);
  if (!(dv < k.admissibility_threshold())) return std::nullopt;
  return k.D1() * dv * dv * alpha * l;
}

double matrix_op_norm(const LorentzMatrix& m) {
  const int n = m.size();
  double s = 0.0;
  for (double x : m.data()) s = std::max(s, std::abs(x));
  if (s == 0.0) return 0.0;
  if (!std::isfinite(s)) throw NumericalError("matrix_op_norm: non-finite entry");
  // B = (M/s)^T (M/s); repeated squaring of B drives every column toward the top eigenvector.
  std::vector<double> b(static_cast<std::size_t>(n * n), 0.0);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += (m(k, r) / s) * (m(k, c) / s);
      b[static_cast<std::size_t>(r * n + c)] = acc;
    }
  }
  auto rayleigh = [&](const std::vector<double>& p) {
    int best = 0;
    double best_norm = -1.0;
    for (int c = 0; c < n; ++c) {
      double nn = 0.0;
      for (int r = 0; r < n; ++r) nn += p[static_cast<std::size_t>(r * n + c)] * p[static_cast<std::size_t>(r * n + c)];
      if (nn > best_norm) best_norm = nn, best = c;
    }
    double num = 0.0;
    for (int r = 0; r < n; ++r) {
      double bx = 0.0;
      for (int k = 0; k < n; ++k) bx += b[static_cast<std::size_t>(r * n + k)] * p[static_cast<std::size_t>(k * n + best)];
      num += p[static_cast<std::size_t>(r * n + best)] * bx;
    }
    return num / best_norm;
  };
  std::vector<double> p = b, q(b.size());
  int stable = 0;
  for (int iter = 0; iter < 200; ++iter) {
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k) acc += p[static_cast<std::size_t>(r * n + k)] * p[static_cast<std::size_t>(k * n + c)];
        q[static_cast<std::size_t>(r * n + c)] = acc;
      }
    }
    double mx = 0.0;
    for (double x : q) mx = std::max(mx, std::abs(x));
    double change = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      q[i] /= mx;
      change = std::max(change, std::abs(q[i] - p[i]));
    }
    p.swap(q);
    if (change <= 1e-15) {
      if (++stable >= 3) return s * std::sqrt(rayleigh(p));
    } else {
      stable = 0;
    }
  }
  throw NumericalError("matrix_op_norm: power iteration did not converge");
}

double stirling_constant() {
  return std::exp(0.5) / (std::sqrt(2.0 * std::numbers::pi) * (std::numbers::e - 1.0));
}

double stirling_tail(double x, long m) {
  if (!(x >= 1.0 / std::numbers::e)) throw DomainError("stirling_tail: x must be at least 1/e");
  const double k = static_cast<double>(m) - std::numbers::e * x;
  if (k < 0.0) throw DomainError("stirling_tail: m must be at least e x");
  return stirling_constant() * std::exp(-k) / std::sqrt(x);
}

LengthEstimate length_recovery(std::span<const double> b, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("length_recovery: alpha must be positive");
  // log-sum-exp of k log(alpha) + log(b_k) - log(k!)
  double top = -INFINITY, sum = 0.0, last_term = -INFINITY;
  const double log_alpha = std::log(alpha);
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (!(b[k] >= 0.0) || std::isnan(b[k])) throw DomainError("length_recovery: b_k must be nonnegative");
    if (b[k] == 0.0) continue;
    const double t = static_cast<double>(k) * log_alpha + std::log(b[k]) - std::lgamma(static_cast<double>(k) + 1.0);
    if (top > -INFINITY && t < top + std::log(sum) - 36.9 && t < last_term) break;
    if (t > top) {
      sum = sum * std::exp(top - t) + 1.0;
      top = t;
    } else {
      sum += std::exp(t - top);
    }
    last_term = t;
  }
  if (top == -INFINITY) throw NumericalError("length_recovery: C_alpha underflows to 0 (all b_k are zero)");
  const double log_c = top + std::log(sum) - alpha;
  return {log_c, std::exp(log_c), 1.0 + log_c / alpha};
}

LengthEstimate length_recovery_rescaled(std::span<const double> b_unit, double l, double alpha) {
  if (!(l >= 0.0) || !std::isfinite(l)) throw DomainError("length_recovery_rescaled: length must be finite and >= 0");
  if (l == 0.0) return length_recovery(b_unit.first(std::min<std::size_t>(1, b_unit.size())), alpha);
  // sum_k alpha^k b_k / k! = sum_k (alpha l)^k b_unit_k / k!
  const LengthEstimate unit = length_recovery(b_unit, alpha * l);
  const double log_c = unit.log_c + alpha * l - alpha;
  return {log_c, std::exp(log_c), 1.0 + log_c / alpha};
}

double strong_recovery_ratio(std::span<const double> b, double l, int k) {
  if (!(l > 0.0)) throw DomainError("strong_recovery_ratio: length must be positive");
  if (k < 0 || static_cast<std::size_t>(k) >= b.size()) throw DomainError("strong_recovery_ratio: level out of range");
  return std::exp(std::log(b[static_cast<std::size_t>(k)]) - k * std::log(l));
}

NonzeroLevel min_nonzero_level(double l, const SmoothnessProfile& delta, const EstimateConstants& k, double alpha_cap) {
  k.validate();
  if (!(l > 0.0) || !std::isfinite(l)) throw DomainError("min_nonzero_level: length must be positive");
  const double d1 = k.D1();
  if (!(delta(0.0) < 1.0 / std::sqrt(d1))) {
    throw DomainError("min_nonzero_level: delta(0) must be below 1/sqrt(D1) = " + std::to_string(1.0 / std::sqrt(d1)));
  }
  const double c1 = stirling_constant();
  const double threshold = k.admissibility_threshold();
  auto feasible = [&](double alpha) {
    const double dv = delta(k.D2() / alpha);
    return dv < threshold && std::pow(alpha, 1.5) * (1.0 - d1 * dv * dv) > c1 * std::pow(l, -1.5);
  };
  const double alpha0 = k.M * EstimateConstants::R0() / l;
  double alpha = alpha0;
  double below = 0.0;
  while (!feasible(alpha)) {
    below = alpha;
    alpha *= 1.01;
    if (alpha > alpha_cap) throw DomainError("min_nonzero_level: no admissible alpha below the cap");
  }
  if (below > 0.0) {
    // Both conditions are monotone in alpha, so bisect the last grid cell.
    for (int i = 0; i < 100 && alpha - below > 1e-14 * alpha; ++i) {
      const double mid = 0.5 * (alpha + below);
      (feasible(mid) ? alpha : below) = mid;
    }
  }
  return {static_cast<long>(std::ceil(std::numbers::e * alpha * l)), alpha};
}

}  // namespace sigpath

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sigpath/error.hpp"
#include "sigpath/hyperbolic.hpp"
#include "test_util.hpp"

using namespace sigpath;
using std::numbers::pi;

namespace {

const double kR0 = std::log(1.0 + std::sqrt(2.0));

// Classical RK4 for dG/dt = F(v) G on [0, 1].
LorentzMatrix rk4_segment(const std::vector<double>& v, const LorentzMatrix& start, double h) {
  const LorentzMatrix f = lie_matrix(v);
  LorentzMatrix g = start;
  const int steps = static_cast<int>(std::lround(1.0 / h));
  auto axpy = [](const LorentzMatrix& a, double s, const LorentzMatrix& b) {
    LorentzMatrix out = a;
    for (int r = 0; r < a.size(); ++r) {
      for (int c = 0; c < a.size(); ++c) out(r, c) += s * b(r, c);
    }
    return out;
  };
  for (int i = 0; i < steps; ++i) {
    const LorentzMatrix k1 = f * g;
    const LorentzMatrix k2 = f * axpy(g, h / 2, k1);
    const LorentzMatrix k3 = f * axpy(g, h / 2, k2);
    const LorentzMatrix k4 = f * axpy(g, h, k3);
    for (int r = 0; r < g.size(); ++r) {
      for (int c = 0; c < g.size(); ++c) g(r, c) += h / 6 * (k1(r, c) + 2 * k2(r, c) + 2 * k3(r, c) + k4(r, c));
    }
  }
  return g;
}

double max_entry_gap(const LorentzMatrix& a, const LorentzMatrix& b) {
  double m = 0.0;
  for (int r = 0; r < a.size(); ++r) {
    for (int c = 0; c < a.size(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
  }
  return m;
}

// Largest eigenvalue of a symmetric matrix by cyclic Jacobi rotations.
double jacobi_top_eigenvalue(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    }
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  double top = a[0][0];
  for (std::size_t i = 1; i < n; ++i) top = std::max(top, a[i][i]);
  return top;
}

PiecewiseLinearPath arc(double kappa, double length, double ds) {
  const int n = static_cast<int>(std::ceil(length / ds));
  std::vector<PiecewiseLinearPath::Point> pts;
  const double r = 1.0 / kappa;
  for (int i = 0; i <= n; ++i) {
    const double th = kappa * length * i / n;
    pts.push_back({r * std::sin(th), r - r * std::cos(th)});
  }
  return PiecewiseLinearPath(2, pts);
}

}  // namespace

TEST_CASE("lorentz_form") {
  const auto o = hyperbolic_origin(3);
  CHECK(lorentz_form(o, o) == -1.0);
  const std::vector<double> x{1.0, 0.0};
  CHECK(lorentz_form(x, x) == 1.0);
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  for (int i = 0; i < 10; ++i) {
    std::vector<double> a(4), b(4);
    for (auto& t : a) t = g(rng);
    for (auto& t : b) t = g(rng);
    CHECK(lorentz_form(a, b) == lorentz_form(b, a));
  }
  CHECK_THROWS_AS(lorentz_form(x, o), DomainError);
}

TEST_CASE("hyp_distance") {
  const auto o = hyperbolic_origin(2);
  CHECK(hyp_distance(o, o) == 0.0);
  const std::vector<double> boosted{std::sinh(1.7), 0.0, std::cosh(1.7)};
  CHECK(hyp_distance(o, boosted) == doctest::Approx(1.7));
  // Nearly identical points within the clamp window.
  const std::vector<double> near{0.0, 0.0, 1.0 - 5e-10};
  CHECK(hyp_distance(o, near) == 0.0);
  const std::vector<double> off{0.0, 0.0, 0.9};
  CHECK_THROWS_AS(hyp_distance(o, off), DomainError);
}

TEST_CASE("hyperbolic Pythagoras from two perpendicular unit geodesics") {
  const PiecewiseLinearPath p({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}});
  const auto v = rolling_vertices(p, 1.0);
  const double expected = std::acosh(std::cosh(1.0) * std::cosh(1.0));
  CHECK(expected == doctest::Approx(1.5134).epsilon(1e-4));
  CHECK(hyp_distance(v.front(), v.back()) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(hyp_distance(hyperbolic_origin(2), develop(p, 1.0).apply(hyperbolic_origin(2))) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("segment_exp closed form") {
  const std::vector<double> zero{0.0, 0.0, 0.0};
  CHECK(max_entry_gap(segment_exp(zero), LorentzMatrix::identity(3)) == 0.0);

  const std::vector<double> t{0.8};
  const auto e = segment_exp(t);
  CHECK(e(0, 0) == doctest::Approx(std::cosh(0.8)));
  CHECK(e(0, 1) == doctest::Approx(std::sinh(0.8)));
  CHECK(e(1, 0) == doctest::Approx(std::sinh(0.8)));
  CHECK(e(1, 1) == doctest::Approx(std::cosh(0.8)));

  std::mt19937_64 rng(32);
  std::normal_distribution<double> g;
  for (int dim = 1; dim <= 4; ++dim) {
    std::vector<double> v(static_cast<std::size_t>(dim));
    for (auto& x : v) x = g(rng);
    const auto closed = segment_exp(v);
    CHECK(max_entry_gap(closed, rk4_segment(v, LorentzMatrix::identity(dim), 1e-3)) <= 1e-8);
    CHECK(lorentz_defect(closed) < 1e-12);
  }
}

TEST_CASE("develop solves the development equation along the whole path") {
  std::mt19937_64 rng(33);
  const auto p = sigpath::testing::random_path(rng, 2, 4, 0.6);
  LorentzMatrix ode = LorentzMatrix::identity(2);
  for (std::size_t i = 0; i < p.num_segments(); ++i) ode = rk4_segment(p.increment(i), ode, 1e-3);
  CHECK(max_entry_gap(develop(p, 1.0), ode) <= 1e-8);
}

TEST_CASE("develop basics") {
  const PiecewiseLinearPath line({{0.0, 0.0}, {0.6, 0.8}});
  for (double alpha : {0.5, 1.0, 3.0}) {
    CHECK(hyp_distance(hyperbolic_origin(2), develop(line, alpha).apply(hyperbolic_origin(2))) ==
          doctest::Approx(alpha).epsilon(1e-9));
  }
  CHECK(max_entry_gap(develop(PiecewiseLinearPath::point({1.0, 1.0}), 2.0), LorentzMatrix::identity(2)) == 0.0);
  CHECK(max_entry_gap(develop(line, 0.0), LorentzMatrix::identity(2)) == 0.0);
  CHECK_THROWS_AS(develop(line, -1.0), DomainError);

  std::mt19937_64 rng(34);
  for (int i = 0; i < 20; ++i) {
    const auto p = sigpath::testing::random_path(rng, 1 + i % 4, 8);
    const auto g = develop(p, 1.5);
    const double top = matrix_op_norm(g);
    CHECK(lorentz_defect(g) < 1e-13 * top * top);
  }
}

TEST_CASE("chord_distance matches the matrix route and survives large scales") {
  std::mt19937_64 rng(35);
  for (int i = 0; i < 20; ++i) {
    const auto p = sigpath::testing::random_path(rng, 3, 6);
    const double direct = hyp_distance(hyperbolic_origin(3), develop(p, 2.0).apply(hyperbolic_origin(3)));
    CHECK(chord_distance(p, 2.0) == doctest::Approx(direct).epsilon(1e-10));
  }
  const PiecewiseLinearPath line({{0.0, 0.0}, {3.0, 4.0}, {6.0, 8.0}});
  CHECK(chord_distance(line, 400.0) == doctest::Approx(4000.0).epsilon(1e-12));
  CHECK(chord_distance(line, 0.0) == 0.0);
}

TEST_CASE("rolling vertices keep lengths and turning angles") {
  std::mt19937_64 rng(36);
  const auto p = sigpath::testing::random_path(rng, 3, 5);
  const double alpha = 0.8;
  const auto x = rolling_vertices(p, alpha);
  REQUIRE(x.size() == p.num_points());
  for (std::size_t i = 0; i < p.num_segments(); ++i) {
    CHECK(hyp_distance(x[i], x[i + 1]) == doctest::Approx(alpha * p.segment_length(i)).epsilon(1e-10));
  }
  for (std::size_t i = 1; i + 1 < p.num_points(); ++i) {
    const auto u = p.increment(i - 1), w = p.increment(i);
    double dot = 0.0;
    for (std::size_t c = 0; c < u.size(); ++c) dot += u[c] * w[c];
    const double turn = std::acos(std::clamp(dot / (euclidean_norm(u) * euclidean_norm(w)), -1.0, 1.0));
    const double expected = cosine_rule_side(alpha * p.segment_length(i - 1), alpha * p.segment_length(i), pi - turn);
    CHECK(hyp_distance(x[i - 1], x[i + 1]) == doctest::Approx(expected).epsilon(1e-9));
  }
  CHECK(hyp_distance(x.front(), x.back()) == doctest::Approx(chord_distance(p, alpha)).epsilon(1e-10));
}

TEST_CASE("geodesic defect is never negative") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 100; ++i) {
    const auto p = sigpath::testing::random_path(rng, 1 + i % 4, 1 + i % 10);
    const double alpha = 0.1 + 0.05 * i;
    CHECK(alpha * p.length() - chord_distance(p, alpha) >= -1e-9);
  }
}

TEST_CASE("cosine rules") {
  CHECK(cosine_rule_side(1.2, 0.7, pi / 2) == doctest::Approx(std::acosh(std::cosh(1.2) * std::cosh(0.7))));
  CHECK(cosine_rule_side(1.2, 0.7, pi) == doctest::Approx(1.9));
  const double s = std::sinh(1.0), c = std::cosh(1.0);
  CHECK(cosine_rule_side(1.0, 1.0, pi / 3) == doctest::Approx(std::acosh(c * c - s * s * 0.5)));
  CHECK(cosine_rule_side(2.0, 0.0, 1.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(cosine_rule_side(-1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(cosine_rule_side(1.0, 1.0, 4.0), DomainError);
  const double a = cosine_rule_side(0.9, 1.4, 2.1);
  CHECK(cosine_rule_angle(a, 0.9, 1.4) == doctest::Approx(2.1));
}

TEST_CASE("K_theta") {
  CHECK(K_theta(pi / 2) == doctest::Approx(std::log(2.0)));
  CHECK(K_theta(pi) == doctest::Approx(0.0));
  CHECK(K_theta(pi / 3) == doctest::Approx(std::log(4.0)));
  CHECK(K_theta(pi / 3) == doctest::Approx(1.3863).epsilon(1e-4));
  CHECK_THROWS_AS(K_theta(0.0), DomainError);
}

TEST_CASE("hyperbolic triangle bounds on random triangles") {
  std::mt19937_64 rng(38);
  std::uniform_real_distribution<double> side(0.0, 5.0), angle(1e-6, pi - 1e-6);
  for (int i = 0; i < 2000; ++i) {
    const double b = side(rng), c = side(rng), th = angle(rng);
    CHECK(cosine_rule_side(b, c, th) >= b + c - K_theta(th) - 1e-9);
  }
  std::uniform_real_distribution<double> obtuse(pi / 2 + 1e-6, pi - 1e-6), far(kR0, 5.0), bside(1e-3, 5.0);
  for (int i = 0; i < 2000; ++i) {
    const double th_a = obtuse(rng), c = far(rng), b = bside(rng);
    const double a = cosine_rule_side(b, c, th_a);
    const double th_b = cosine_rule_angle(b, a, c);
    CHECK(th_b < (pi - th_a) / 2 + 1e-9);
  }
}

TEST_CASE("well spaced piecewise geodesics") {
  std::mt19937_64 rng(39);
  for (double theta : {0.3, 0.7, 1.2}) {
    const double k = K_theta(theta);
    std::uniform_real_distribution<double> turn(-(pi - 2 * theta), pi - 2 * theta), extra(0.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 1 + trial % 8;
      double heading = 0.0;
      std::vector<PiecewiseLinearPath::Point> pts{{0.0, 0.0}};
      for (int i = 0; i < n; ++i) {
        if (i > 0) heading += turn(rng);
        const double len = k + extra(rng);
        pts.push_back({pts.back()[0] + len * std::cos(heading), pts.back()[1] + len * std::sin(heading)});
      }
      const PiecewiseLinearPath p(2, pts);
      const auto x = rolling_vertices(p, 1.0);
      double previous = 0.0;
      for (std::size_t i = 1; i < x.size(); ++i) {
        const double di = hyp_distance(x.front(), x[i]);
        CHECK(di >= previous - 1e-9);
        previous = di;
      }
      const double gap = p.length() - hyp_distance(x.front(), x.back());
      CHECK(gap >= -1e-9);
      CHECK(gap <= (n - 1) * k + 1e-9);
    }
  }
}

TEST_CASE("nearly straight developments stay close to cosh T") {
  std::mt19937_64 rng(40);
  std::uniform_real_distribution<double> total(0.5, 3.0), phi(-1.0, 1.0);
  for (double eta : {0.05, 0.2, 0.6}) {
    for (int trial = 0; trial < 10; ++trial) {
      const double T = total(rng);
      const int pieces = 1 + trial % 5;
      std::vector<double> angles;
      for (int j = 0; j < pieces; ++j) angles.push_back(eta * phi(rng));
      double amax = 0.0;
      for (double a : angles) amax = std::max(amax, std::abs(a));
      // Direction R(phi_j) e1 on the j-th time slice, sampled at step 1e-3.
      const int steps = static_cast<int>(std::ceil(T / 1e-3));
      std::vector<PiecewiseLinearPath::Point> pts{{0.0, 0.0}};
      for (int s = 0; s < steps; ++s) {
        const double a = angles[static_cast<std::size_t>(std::min(pieces - 1, s * pieces / steps))];
        const double h = T / steps;
        pts.push_back({pts.back()[0] + h * std::cos(a), pts.back()[1] + h * std::sin(a)});
      }
      const double x_T = std::cosh(chord_distance(PiecewiseLinearPath(2, pts), 1.0));
      CHECK(std::abs(std::cosh(T) - x_T) <= std::pow(4.0, T) * amax * amax / 2 + 1e-4);
    }
  }
}

TEST_CASE("operator norm") {
  CHECK(matrix_op_norm(LorentzMatrix::identity(3)) == doctest::Approx(1.0).epsilon(1e-14));
  const std::vector<double> v{0.0, 0.0, 1.3};
  CHECK(matrix_op_norm(segment_exp(v)) == doctest::Approx(std::exp(1.3)).epsilon(1e-12));
  const std::vector<double> tiny{1e-9, 0.0};
  CHECK(matrix_op_norm(segment_exp(tiny)) == doctest::Approx(std::exp(1e-9)).epsilon(1e-15));

  std::mt19937_64 rng(41);
  for (int i = 0; i < 50; ++i) {
    const int dim = 1 + i % 4;
    const auto p = sigpath::testing::random_path(rng, dim, 1 + i % 6, 0.7);
    const auto g = develop(p, 1.0);
    const double norm = matrix_op_norm(g);
    CHECK(norm >= std::exp(hyp_distance(hyperbolic_origin(dim), g.apply(hyperbolic_origin(dim)))) - 1e-9);
    std::vector<std::vector<double>> gtg(static_cast<std::size_t>(g.size()), std::vector<double>(static_cast<std::size_t>(g.size())));
    for (int r = 0; r < g.size(); ++r) {
      for (int c = 0; c < g.size(); ++c) {
        for (int k = 0; k < g.size(); ++k) gtg[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] += g(k, r) * g(k, c);
      }
    }
    CHECK(norm == doctest::Approx(std::sqrt(jacobi_top_eigenvalue(gtg))).epsilon(1e-10));
  }
}

TEST_CASE("estimate constants") {
  EstimateConstants k;
  CHECK(EstimateConstants::R0() == doctest::Approx(0.881374).epsilon(1e-6));
  CHECK(k.D2() == doctest::Approx(2 * kR0));
  EstimateConstants k3{0.5, 3};
  CHECK(k3.D2() > EstimateConstants::R0());
  CHECK(k3.D2() <= 2 * EstimateConstants::R0());
  const double expected_d1 = (std::pow(4.0, 2 * kR0) / (2 * 0.8875) + 16 * std::log(2.0) / (pi * pi)) / kR0;
  CHECK(k.D1() == doctest::Approx(expected_d1));
  CHECK(k.admissibility_threshold() ==
        doctest::Approx(std::sqrt(2 * (std::sqrt(2.0) - std::sqrt(1 + 0.8875 * 0.8875)) * std::pow(4.0, -2 * kR0))));
  CHECK_THROWS_AS((EstimateConstants{1.2, 1}).validate(), DomainError);
  CHECK_THROWS_AS((EstimateConstants{0.5, 0}).validate(), DomainError);
}

TEST_CASE("smoothness profiles") {
  const auto lip = SmoothnessProfile::lipschitz(0.5);
  CHECK(lip(1.0) == 0.5);
  CHECK(lip(100.0) == 2.0);
  const auto tab = SmoothnessProfile::tabulated({{0.0, 0.0}, {1.0, 0.4}, {2.0, 1.0}});
  CHECK(tab(0.5) == doctest::Approx(0.2));
  CHECK(tab(1.5) == doctest::Approx(0.7));
  CHECK(tab(10.0) == doctest::Approx(1.0));
  CHECK(SmoothnessProfile::tabulated({{0.0, 3.0}})(1.0) == 2.0);
  CHECK_THROWS_AS(SmoothnessProfile::tabulated({{0.0, 0.5}, {1.0, 0.4}}), DomainError);
  CHECK_THROWS_AS(SmoothnessProfile::lipschitz(-1.0), DomainError);
}

TEST_CASE("chord defect bound") {
  const EstimateConstants k;
  const auto flat = SmoothnessProfile::lipschitz(0.0);
  CHECK(chord_defect_bound(10.0, 2.0, flat, k).value() == 0.0);
  const PiecewiseLinearPath line({{0.0, 0.0}, {10.0, 0.0}});
  CHECK(std::abs(chord_distance(line, 2.0) - 20.0) < 1e-9);

  const auto curved = SmoothnessProfile::lipschitz(0.1);
  const auto bound = chord_defect_bound(10.0, 20.0, curved, k);
  REQUIRE(bound.has_value());
  const double dv = 0.1 * k.D2() / 20.0;
  CHECK(*bound == doctest::Approx(k.D1() * dv * dv * 200.0));
  const auto p = arc(0.1, 10.0, 1e-3);
  CHECK(std::abs(chord_distance(p, 20.0) - 20.0 * p.length()) <= *bound);

  CHECK_FALSE(chord_defect_bound(10.0, 1.0, curved, k).has_value());  // delta too large
  CHECK_FALSE(chord_defect_bound(0.01, 1.0, flat, k).has_value());   // alpha l below M R0
}

TEST_CASE("Stirling tail") {
  CHECK(stirling_constant() == doctest::Approx(0.38).epsilon(0.01));
  const double tail13 = std::exp(1.0) - 2.5;
  CHECK(tail13 == doctest::Approx(0.2183).epsilon(1e-3));
  CHECK(stirling_tail(1.0, 3) == doctest::Approx(0.2888).epsilon(1e-3));
  CHECK(tail13 <= stirling_tail(1.0, 3));
  double tail26 = std::exp(2.0);
  for (int r = 0; r < 6; ++r) tail26 -= std::pow(2.0, r) / std::tgamma(r + 1.0);
  CHECK(tail26 <= stirling_tail(2.0, 6));
  for (double x : {0.5, 1.0, 3.0, 10.0}) {
    for (long m = static_cast<long>(std::ceil(std::numbers::e * x)); m < 60; m += 3) {
      double tail = 0.0;
      for (long r = m; r < m + 200; ++r) tail += std::exp(r * std::log(x) - std::lgamma(r + 1.0));
      CHECK(tail <= stirling_tail(x, m));
    }
  }
  CHECK_THROWS_AS(stirling_tail(1.0, 2), DomainError);
  CHECK_THROWS_AS(stirling_tail(0.1, 5), DomainError);
}

TEST_CASE("length recovery") {
  for (double l : {0.5, 1.0, 3.0}) {
    std::vector<double> b;
    for (int k = 0; k <= 400; ++k) b.push_back(std::pow(l, k));
    for (double alpha : {1.0, 10.0, 40.0}) CHECK(length_recovery(b, alpha).estimate == doctest::Approx(l).epsilon(1e-12));
  }
  const std::vector<double> trivial{1.0, 0.0, 0.0, 0.0};
  CHECK(length_recovery(trivial, 5.0).estimate == doctest::Approx(0.0));
  const std::vector<double> zeros{0.0, 0.0};
  CHECK_THROWS_AS(length_recovery(zeros, 2.0), NumericalError);
  CHECK_THROWS_AS(length_recovery(trivial, 0.0), DomainError);

  std::vector<double> unit, scaled;
  for (int k = 0; k <= 200; ++k) {
    unit.push_back(std::pow(0.9, k));
    scaled.push_back(std::pow(0.9 * 2.5, k));
  }
  const auto direct = length_recovery(scaled, 7.0);
  const auto rescaled = length_recovery_rescaled(unit, 2.5, 7.0);
  CHECK(rescaled.log_c == doctest::Approx(direct.log_c).epsilon(1e-12));
  CHECK(rescaled.estimate == doctest::Approx(direct.estimate).epsilon(1e-12));
}

TEST_CASE("strong recovery ratio") {
  const std::vector<double> b{1.0, 2.0, 4.0, 8.0};
  for (int k = 0; k < 4; ++k) CHECK(strong_recovery_ratio(b, 2.0, k) == doctest::Approx(1.0));
  CHECK_THROWS_AS(strong_recovery_ratio(b, 0.0, 1), DomainError);
  CHECK_THROWS_AS(strong_recovery_ratio(b, 1.0, 4), DomainError);
}

TEST_CASE("min_nonzero_level") {
  const EstimateConstants k;
  const auto lip = SmoothnessProfile::lipschitz(1.0);
  for (double l : {10.0, 100.0, 1000.0}) {
    const auto n = min_nonzero_level(l, lip, k);
    CHECK(static_cast<double>(n.N) / l == doctest::Approx(41.38).epsilon(0.01));
    CHECK(chord_defect_bound(l, n.alpha, lip, k).has_value());
  }
  CHECK(min_nonzero_level(5.0, SmoothnessProfile::lipschitz(0.0), k).N == 3);
  CHECK_THROWS_AS(min_nonzero_level(5.0, SmoothnessProfile::tabulated({{0.0, 0.5}}), k), DomainError);
  // Admissible never: delta(0) passes the hypothesis but exceeds the admissibility threshold.
  CHECK_THROWS_AS(min_nonzero_level(5.0, SmoothnessProfile::tabulated({{0.0, 0.2}}), k), DomainError);
}

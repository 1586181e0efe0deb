#include <doctest.h>

#include <cmath>
#include <functional>

#include "jop/errors.hpp"
#include "jop/measure.hpp"
#include "jop/quadrature.hpp"

using namespace jop;

namespace {

// Independent oracle: adaptive Simpson on u with the substitution x = tan(u),
// mapping (0, inf) to (0, pi/2). Only used to cross-check library moments.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fb, double fm, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, fm, flm, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, fb, frm, 0.5 * tol, depth - 1);
}

double tan_substitution_integral(const std::function<double(double)>& g, double tol) {
  auto f = [&](double u) {
    const double t = std::tan(u);
    const double c = std::cos(u);
    return g(t) / (c * c);
  };
  const double a = 1e-12, b = M_PI / 2.0 - 1e-12;
  return adaptive_simpson(f, a, b, f(a), f(b), f(0.5 * (a + b)), tol, 60);
}

} // namespace

TEST_CASE("gauss rules against closed forms") {
  // Chebyshev weight: int (1-x)^(-1/2) (1+x)^(-1/2) = pi
  QuadRule cheb = gauss_jacobi(8, -0.5, -0.5);
  CHECK(cheb.weights.sum() == doctest::Approx(M_PI).epsilon(1e-13));
  // Legendre: int_{-1}^{1} x^2 = 2/3
  QuadRule leg = gauss_legendre(6);
  double s = 0.0;
  for (int i = 0; i < leg.size(); ++i) s += leg.weights(i) * leg.nodes(i) * leg.nodes(i);
  CHECK(s == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  // Laguerre: int x^(1/2) e^{-x} = Gamma(3/2)
  QuadRule lag = gauss_laguerre(10, 0.5);
  CHECK(lag.weights.sum() == doctest::Approx(std::tgamma(1.5)).epsilon(1e-13));
  // Hermite: int e^{-x^2} = sqrt(pi)
  QuadRule her = gauss_hermite(10);
  CHECK(her.weights.sum() == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
}

TEST_CASE("moments of the uniform measures") {
  IntervalMeasure unit(0.0, 1.0);
  MomentTable mt = moments(unit, 3);
  CHECK(mt(0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(mt(1) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(mt(2) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(mt(3) == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(mt.certified_rel_err() <= 1e-12);

  IntervalMeasure sym(-1.0, 1.0);
  MomentTable ms = moments(sym, 2);
  CHECK(ms(0) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(std::abs(ms(1)) < 1e-14);
}

TEST_CASE("half-range Gaussian moment matches the tan-substitution oracle") {
  // (0, inf), w = x^{1/2} e^{-x^2/2}
  IntervalMeasure mu(0.0, kInf, {{0.0, 0.5}}, 0.0, true);
  MomentTable mt = moments(mu, 4);
  auto weight = [](double x) { return std::sqrt(x) * std::exp(-0.5 * x * x); };
  const double oracle0 = tan_substitution_integral(weight, 1e-13);
  CHECK(mt(0) == doctest::Approx(oracle0).epsilon(1e-10));
  // closed form: m(s) = 2^{(s-1/4)...}; use Gamma directly as a second check
  auto closed = [](double s) { return std::pow(2.0, 0.5 * (s - 0.5)) * std::tgamma(0.5 * (s + 1.5)); };
  for (int s = 0; s <= 4; ++s) CHECK(mt(s) == doctest::Approx(closed(s)).epsilon(1e-12));
}

TEST_CASE("mirrored Gaussian half-line carries alternating signs") {
  IntervalMeasure mu(-kInf, 0.0, {{0.0, 0.5}}, 0.0, true);
  MomentTable mt = moments(mu, 5);
  for (int s = 0; s <= 5; ++s) {
    CHECK((s % 2 == 0 ? mt(s) > 0.0 : mt(s) < 0.0));
  }
  IntervalMeasure pos(0.0, kInf, {{0.0, 0.5}}, 0.0, true);
  MomentTable mp = moments(pos, 5);
  for (int s = 0; s <= 5; ++s) CHECK(std::abs(mt(s)) == doctest::Approx(mp(s)).epsilon(1e-12));
}

TEST_CASE("Laguerre-class measure") {
  // (1, inf), w = e^{-2x}: m(0) = e^{-2}/2
  IntervalMeasure mu(1.0, kInf, {}, -2.0);
  MomentTable mt = moments(mu, 3);
  CHECK(mt(0) == doctest::Approx(std::exp(-2.0) / 2.0).epsilon(1e-13));
  // m(1) = int_1^inf x e^{-2x} = (3/4) e^{-2}
  CHECK(mt(1) == doctest::Approx(0.75 * std::exp(-2.0)).epsilon(1e-13));
}

TEST_CASE("inner products and gram matrix") {
  IntervalMeasure unit(0.0, 1.0);
  MomentTable mt = moments(unit, 6);
  CHECK(inner_product(mt, Polynomial::one(), Polynomial::one()) == doctest::Approx(1.0));

  IntervalMeasure left(-2.0, -1.0);
  MomentTable ml = moments(left, 6);
  CHECK(inner_product(ml, Polynomial::one(), Polynomial::monomial(1)) ==
        doctest::Approx(-1.5).epsilon(1e-13));

  Eigen::MatrixXd H = gram_matrix(mt, 3, 3);
  CHECK(H(0, 0) == doctest::Approx(1.0));
  CHECK(H(0, 1) == doctest::Approx(0.5));
  CHECK(H(1, 0) == doctest::Approx(0.5));
  CHECK(H(2, 2) == doctest::Approx(0.2));
  CHECK((H - H.transpose()).norm() == 0.0);

  Eigen::MatrixXd G = gram_matrix(ml, 2, 2);
  CHECK(G(0, 0) == doctest::Approx(1.0));
  CHECK(G(0, 1) == doctest::Approx(-1.5));
  CHECK(G(1, 1) == doctest::Approx(7.0 / 3.0).epsilon(1e-13));

  CHECK_THROWS_AS(gram_matrix(mt, 10, 10), InsufficientMoments);
  CHECK_THROWS_AS(inner_product(mt, Polynomial::monomial(4), Polynomial::monomial(4)),
                  InsufficientMoments);
}

TEST_CASE("shift identity is exact") {
  IntervalMeasure mu(0.5, 2.0, {{0.5, -0.5}});
  MomentTable mt = moments(mu, 8);
  Polynomial p({0.3, -1.2, 0.7}), q({-0.4, 0.9});
  const Polynomial x = Polynomial::monomial(1);
  CHECK(inner_product(mt, x * p, q) == inner_product(mt, p, x * q));
}

TEST_CASE("symmetry of inner products on random polynomials") {
  IntervalMeasure mu(-1.0, 1.0, {{1.0, -0.5}, {-1.0, 0.5}});
  MomentTable mt = moments(mu, 10);
  Polynomial p({0.2, 1.0, -0.3, 0.05}), q({1.1, -0.2, 0.4});
  CHECK(inner_product(mt, p, q) == doctest::Approx(inner_product(mt, q, p)).epsilon(1e-15));
}

TEST_CASE("quadrature certification is stable under order doubling") {
  IntervalMeasure mu(0.0, 1.0, {{0.0, -0.5}, {1.0, -0.5}});
  MomentTable mt = moments(mu, 8);
  // Chebyshev-type measure on (0,1): m(0) = pi
  CHECK(mt(0) == doctest::Approx(M_PI).epsilon(1e-13));
  CHECK(mt.certified_rel_err() <= 1e-12);
}

TEST_CASE("Hankel positivity holds for constructed tables") {
  IntervalMeasure mu(0.0, 1.0);
  MomentTable mt = moments(mu, 12);
  const int t = 6;
  Eigen::MatrixXd H(t + 1, t + 1);
  for (int i = 0; i <= t; ++i)
    for (int j = 0; j <= t; ++j) H(i, j) = mt(i + j);
  Eigen::LLT<Eigen::MatrixXd> llt(H);
  CHECK(llt.info() == Eigen::Success);
}

TEST_CASE("invalid measures are rejected") {
  CHECK_THROWS_AS(IntervalMeasure(1.0, 0.0), NonIntegrable);
  // exponent not integrable
  CHECK_THROWS_AS(IntervalMeasure(0.0, 1.0, {{0.0, -1.5}}), NonIntegrable);
  // interior singularity
  CHECK_THROWS_AS(IntervalMeasure(0.0, 1.0, {{0.5, -0.5}}), NonIntegrable);
  // unbounded without decay
  CHECK_THROWS_AS(IntervalMeasure(0.0, kInf), NonIntegrable);
  CHECK_THROWS_AS(IntervalMeasure(0.0, kInf, {}, 1.0), NonIntegrable);
  // smooth factor changes sign inside
  CHECK_THROWS_AS(IntervalMeasure(0.0, 1.0, {}, 0.0, false, Polynomial({-0.5, 1.0})),
                  NonIntegrable);
  // smooth vanishing at an endpoint is fine
  CHECK_NOTHROW(IntervalMeasure(0.0, 1.0, {}, 0.0, false, Polynomial({0.0, 1.0})));
}

TEST_CASE("moment cache returns consistent tables") {
  IntervalMeasure mu(1.0, 2.0);
  MomentTable a = cached_moments(mu, 4);
  MomentTable b = cached_moments(mu, 4);
  CHECK(a.values() == b.values());
  MomentTable c = cached_moments(mu, 8); // forces a larger table
  CHECK(c.max_order() >= 8);
  for (int s = 0; s <= 4; ++s) CHECK(a(s) == doctest::Approx(c(s)).epsilon(1e-13));
}

TEST_CASE("measure_rule integrates smooth functions against the weight") {
  IntervalMeasure mu(0.0, 1.0, {{0.0, -0.5}});
  QuadRule r = measure_rule(mu, 32);
  double s = 0.0;
  for (int i = 0; i < r.size(); ++i) s += r.weights(i) * std::exp(r.nodes(i));
  // The Simpson oracle converges slowly at the x^{-1/2} endpoint; compare at
  // its achievable accuracy.
  auto f = [](double x) { return std::exp(x) / std::sqrt(x); };
  const double a = 1e-14, b = 1.0;
  const double oracle = adaptive_simpson(f, a, b, f(a), f(b), f(0.5 * (a + b)), 1e-13, 60);
  CHECK(s == doctest::Approx(oracle).epsilon(1e-6));
}

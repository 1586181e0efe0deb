#include <doctest.h>

#include <algorithm>
#include <random>

#include "jop/poly.hpp"

using namespace jop;

TEST_CASE("evaluate") {
  CHECK(Polynomial(1.0)(17.5) == doctest::Approx(1.0));
  Polynomial p({-1.0, 0.0, 1.0}); // x^2 - 1
  CHECK(p(1.0) == doctest::Approx(0.0));
  // x^2 - 3x + 2 at 0.5: 0.25 - 1.5 + 2 = 0.75
  Polynomial q({2.0, -3.0, 1.0});
  CHECK(q(0.5) == doctest::Approx(0.75));
}

TEST_CASE("canonical zero and degree") {
  CHECK(Polynomial::zero().is_zero());
  CHECK(Polynomial::zero().degree() == -1);
  CHECK(Polynomial({0.0, 0.0}).is_zero());
  CHECK(Polynomial({1.0, 2.0, 0.0}).degree() == 1);
}

TEST_CASE("from_roots") {
  std::vector<double> r{1.0, 2.0};
  Polynomial p = Polynomial::from_roots(r);
  CHECK(p.coeff(0) == doctest::Approx(2.0));
  CHECK(p.coeff(1) == doctest::Approx(-3.0));
  CHECK(p.coeff(2) == doctest::Approx(1.0));

  Polynomial c = Polynomial::from_roots(std::vector<double>{}, 3.0);
  CHECK(c.degree() == 0);
  CHECK(c(99.0) == doctest::Approx(3.0));

  // 2(x+1)x(x-1) = 2x^3 - 2x, expanded by hand
  Polynomial m = Polynomial::from_roots(std::vector<double>{-1.0, 0.0, 1.0}, 2.0);
  CHECK(m.coeff(3) == doctest::Approx(2.0));
  CHECK(m.coeff(1) == doctest::Approx(-2.0));
  CHECK(m.coeff(0) == doctest::Approx(0.0));
  CHECK(m.coeff(2) == doctest::Approx(0.0));
}

TEST_CASE("roots of factored forms") {
  Polynomial p({-1.0, 0.0, 1.0});
  auto rs = p.roots();
  REQUIRE(rs.size() == 2);
  CHECK(rs[0].re == doctest::Approx(-1.0));
  CHECK(rs[1].re == doctest::Approx(1.0));
  CHECK(rs[0].multiplicity == 1);

  Polynomial q({2.0, -3.0, 1.0});
  auto qs = q.roots();
  REQUIRE(qs.size() == 2);
  CHECK(qs[0].re == doctest::Approx(1.0));
  CHECK(qs[1].re == doctest::Approx(2.0));

  CHECK_THROWS_AS(Polynomial::zero().roots(), ZeroPolynomial);
}

TEST_CASE("roots round-trip on random monic degree 5") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> roots(5);
    // well-separated draws
    bool ok = false;
    while (!ok) {
      for (double& r : roots) r = dist(rng);
      std::sort(roots.begin(), roots.end());
      ok = true;
      for (int i = 0; i + 1 < 5; ++i)
        if (roots[i + 1] - roots[i] < 0.2) ok = false;
    }
    Polynomial p = Polynomial::from_roots(roots);
    auto found = p.roots();
    REQUIRE(found.size() == 5);
    for (int i = 0; i < 5; ++i) {
      CHECK(found[i].im == 0.0);
      CHECK(std::abs(found[i].re - roots[static_cast<size_t>(i)]) < 1e-8);
    }
  }
}

TEST_CASE("double roots cluster at the stated tolerance") {
  // (x-2)^2 (x+1)
  Polynomial p = Polynomial::from_roots(std::vector<double>{2.0, 2.0, -1.0});
  auto rs = p.roots();
  REQUIRE(rs.size() == 2);
  int total = 0;
  for (const auto& r : rs) total += r.multiplicity;
  CHECK(total == 3);
  bool found_double = false;
  for (const auto& r : rs)
    if (r.multiplicity == 2 && std::abs(r.re - 2.0) < 1e-6) found_double = true;
  CHECK(found_double);
}

TEST_CASE("sum of multiplicities equals the degree even for hard clusters") {
  // A triple root's eigenvalue cloud sits at ~eps^(1/3), beyond the 1e-7
  // clustering tolerance; the contract is location accuracy and a total
  // multiplicity equal to the degree.
  Polynomial p = Polynomial::from_roots(std::vector<double>{1.0, 1.0, 1.0, -2.0});
  auto rs = p.roots();
  int total = 0;
  for (const auto& r : rs) {
    total += r.multiplicity;
    const double d = std::min(std::abs(r.re - 1.0), std::abs(r.re + 2.0));
    CHECK(d < 2e-5);
  }
  CHECK(total == 4);
}

TEST_CASE("from_roots(roots(p)) reproduces p up to leading coefficient") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-1.5, 1.5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> roots(6);
    bool ok = false;
    while (!ok) {
      for (double& r : roots) r = dist(rng);
      std::sort(roots.begin(), roots.end());
      ok = true;
      for (int i = 0; i + 1 < 6; ++i)
        if (roots[i + 1] - roots[i] < 0.15) ok = false;
    }
    Polynomial p = Polynomial::from_roots(roots, 1.7);
    std::vector<double> rec;
    for (const auto& r : p.roots())
      for (int m = 0; m < r.multiplicity; ++m) rec.push_back(r.re);
    Polynomial q = Polynomial::from_roots(rec, p.leading_coeff());
    for (int i = 0; i <= p.degree(); ++i)
      CHECK(std::abs(q.coeff(i) - p.coeff(i)) <= 1e-8 * (1.0 + std::abs(p.coeff(i))));
  }
}

TEST_CASE("differentiate lowers degree by one") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int d = 1; d <= 10; ++d) {
    std::vector<double> c(static_cast<size_t>(d) + 1);
    for (double& v : c) v = dist(rng);
    c.back() = 1.0;
    CHECK(Polynomial(c).differentiate().degree() == d - 1);
  }
}

TEST_CASE("evaluate multiplicativity") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(-1e3, 1e3);
  std::uniform_real_distribution<double> xs(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(4), b(5);
    for (double& v : a) v = dist(rng);
    for (double& v : b) v = dist(rng);
    Polynomial p{a}, q{b};
    const double x = xs(rng);
    const double lhs = (p * q)(x);
    const double rhs = p(x) * q(x);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("monic and divmod") {
  Polynomial p({2.0, -6.0, 4.0});
  Polynomial m = p.monic();
  CHECK(m.leading_coeff() == doctest::Approx(1.0));
  CHECK_THROWS_AS(Polynomial::zero().monic(), ZeroPolynomial);

  Polynomial num = Polynomial::from_roots(std::vector<double>{1.0, 2.0, 3.0}, 2.0);
  Polynomial den = Polynomial::from_roots(std::vector<double>{2.0});
  auto [quot, rem] = num.divmod(den);
  CHECK(rem.linf_norm() < 1e-12);
  Polynomial back = quot * den + rem;
  for (int i = 0; i <= num.degree(); ++i) CHECK(back.coeff(i) == doctest::Approx(num.coeff(i)));
}

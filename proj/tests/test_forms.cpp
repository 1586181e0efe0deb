#include <doctest.h>

#include <cmath>
#include <random>

#include "jop/errors.hpp"
#include "jop/forms.hpp"

using namespace jop;

namespace {

InnerProductFamily two_boxes(int n_max = 6) {
  std::vector<IntervalMeasure> ms;
  ms.emplace_back(-2.0, -1.0);
  ms.emplace_back(1.0, 2.0);
  return InnerProductFamily(std::move(ms), n_max);
}

InnerProductFamily three_boxes(int n_max = 5) {
  // Heine-Stieltjes style: unit weights on three consecutive gaps
  std::vector<IntervalMeasure> ms;
  ms.emplace_back(0.0, 1.0);
  ms.emplace_back(1.0, 2.0);
  ms.emplace_back(2.0, 3.0);
  return InnerProductFamily(std::move(ms), n_max);
}

Polynomial random_poly(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> c(static_cast<size_t>(degree) + 1);
  for (double& v : c) v = dist(rng);
  return Polynomial(std::move(c));
}

} // namespace

TEST_CASE("rank-one form on the two-interval example") {
  InnerProductFamily fam = two_boxes();
  // det [[1, 1], [-3/2, 3/2]] = 3, closed-form moments
  const double v = rank_one_form(fam, Polynomial::one(), Polynomial::one());
  CHECK(v == doctest::Approx(3.0).epsilon(1e-13));
  // the direct 2-D integral of (x2 - x1)
  const double o = vandermonde_oracle(fam, Polynomial::one(), Polynomial::one());
  CHECK(o == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("rank-one form is symmetric") {
  InnerProductFamily fam = two_boxes();
  std::mt19937_64 rng(19);
  for (int t = 0; t < 20; ++t) {
    Polynomial p = random_poly(rng, 3), q = random_poly(rng, 4);
    const double a = rank_one_form(fam, p, q);
    const double b = rank_one_form(fam, q, p);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("deleted form collapses for k = 2") {
  InnerProductFamily fam = two_boxes();
  Polynomial p({0.5, 1.0}), q({-1.0, 2.0});
  CHECK(deleted_form(fam, 1, p, q) == doctest::Approx(fam.ip(2, p, q)));
  CHECK(deleted_form(fam, 2, Polynomial::one(), Polynomial::one()) == doctest::Approx(1.0));
  CHECK_THROWS_AS(deleted_form(fam, 3, p, q), IndexOutOfRange);
}

TEST_CASE("deleted form matches the 2-D Vandermonde quadrature for k = 3") {
  InnerProductFamily fam = three_boxes();
  std::mt19937_64 rng(23);
  for (int t = 0; t < 5; ++t) {
    Polynomial p = random_poly(rng, 3), q = random_poly(rng, 3);
    for (int j = 1; j <= 3; ++j) {
      const double det = deleted_form(fam, j, p, q);
      const double oracle = vandermonde_oracle(fam, p, q, j);
      CHECK(det == doctest::Approx(oracle).epsilon(1e-9));
    }
  }
}

TEST_CASE("rank-one form matches the 3-D Vandermonde quadrature for k = 3") {
  InnerProductFamily fam = three_boxes();
  std::mt19937_64 rng(29);
  for (int t = 0; t < 3; ++t) {
    Polynomial p = random_poly(rng, 4), q = random_poly(rng, 4);
    const double det = rank_one_form(fam, p, q);
    const double oracle = vandermonde_oracle(fam, p, q);
    CHECK(det == doctest::Approx(oracle).epsilon(1e-8));
  }
}

TEST_CASE("oracle equivalence for k = 2 at degree <= 4") {
  InnerProductFamily fam = two_boxes();
  std::mt19937_64 rng(31);
  for (int t = 0; t < 10; ++t) {
    Polynomial p = random_poly(rng, 4), q = random_poly(rng, 4);
    CHECK(rank_one_form(fam, p, q) ==
          doctest::Approx(vandermonde_oracle(fam, p, q)).epsilon(1e-8));
    for (int j = 1; j <= 2; ++j)
      CHECK(deleted_form(fam, j, p, q) ==
            doctest::Approx(vandermonde_oracle(fam, p, q, j)).epsilon(1e-8));
  }
}

TEST_CASE("symmetric intervals: rank-one form of constants") {
  std::vector<IntervalMeasure> ms;
  ms.emplace_back(-2.0, -1.0);
  ms.emplace_back(1.0, 2.0);
  InnerProductFamily fam(std::move(ms), 4);
  // det [[m(0), m(0)], [-m(1), m(1)]] = 2 m(1) m(0) with m on the right box
  const double m0 = fam.table(2)(0), m1 = fam.table(2)(1);
  CHECK(rank_one_form(fam, Polynomial::one(), Polynomial::one()) ==
        doctest::Approx(2.0 * m0 * m1).epsilon(1e-12));
}

TEST_CASE("definiteness on disjoint ordered intervals") {
  InnerProductFamily fam2 = two_boxes();
  DefinitenessReport rep = definiteness_check(fam2, 200, 6);
  CHECK(rep.rank_one_all_positive);
  CHECK(rep.deleted_all_nonzero);
  CHECK(rep.min_rank_one > 0.0);
  CHECK(rep.min_abs_deleted > 0.0);

  InnerProductFamily fam3 = three_boxes();
  DefinitenessReport rep3 = definiteness_check(fam3, 100, 4);
  CHECK(rep3.rank_one_all_positive);
  CHECK(rep3.deleted_all_nonzero);

  // p = 0 gives exactly zero
  CHECK(rank_one_form(fam2, Polynomial::zero(), Polynomial::one()) == 0.0);
}

TEST_CASE("family validation") {
  std::vector<IntervalMeasure> overlap;
  overlap.emplace_back(0.0, 2.0);
  overlap.emplace_back(1.0, 3.0);
  CHECK_THROWS_AS(InnerProductFamily(std::move(overlap), 3), ConfigError);

  std::vector<IntervalMeasure> one;
  one.emplace_back(0.0, 1.0);
  CHECK_THROWS_AS(InnerProductFamily(std::move(one), 3), ConfigError);

  CHECK_THROWS_AS(vandermonde_oracle(InnerProductFamily(
                                         []{
                                           std::vector<IntervalMeasure> ms;
                                           for (int i = 0; i < 4; ++i)
                                             ms.emplace_back(2.0 * i, 2.0 * i + 1.0);
                                           return ms;
                                         }(),
                                         2),
                                     Polynomial::one(), Polynomial::one()),
                  UnsupportedDimension);
}

TEST_CASE("insufficient moments are reported") {
  InnerProductFamily fam = two_boxes(2);
  CHECK_THROWS_AS(rank_one_form(fam, Polynomial::monomial(8), Polynomial::monomial(8)),
                  InsufficientMoments);
}

#include "jop/forms.hpp"

#include <cmath>
#include <random>

#include "jop/errors.hpp"

namespace jop {

namespace {
constexpr int kMaxK = 6; // LU determinants; desk-scale families

Eigen::MatrixXd pair_matrix(const InnerProductFamily& fam, const Polynomial& p,
                            const Polynomial& q, int rows) {
  if (p.degree() > fam.n_max() || q.degree() > fam.n_max())
    throw InsufficientMoments("forms: polynomial degree exceeds the family's n_max");
  // rows x k matrix with entry (r, j-1) = <p, x^r q>_j, unsigned.
  Eigen::MatrixXd M(rows, fam.k());
  const Polynomial c = p * q;
  for (int j = 1; j <= fam.k(); ++j) {
    const MomentTable& t = fam.table(j);
    if (c.degree() + rows - 1 > t.max_order())
      throw InsufficientMoments("forms: moment table does not cover the requested degree");
    for (int r = 0; r < rows; ++r) {
      double s = 0.0;
      for (int i = 0; i <= c.degree(); ++i) s += c.coeff(i) * t(i + r);
      M(r, j - 1) = s;
    }
  }
  return M;
}
} // namespace

InnerProductFamily::InnerProductFamily(std::vector<IntervalMeasure> measures, int n_max)
    : n_max_(n_max) {
  if (measures.size() < 2) throw ConfigError("family: needs k >= 2 measures");
  if (static_cast<int>(measures.size()) > kMaxK) throw UnsupportedDimension("family: k > 6");
  if (n_max < 0) throw ConfigError("family: n_max must be >= 0");
  for (size_t j = 0; j + 1 < measures.size(); ++j)
    if (!(measures[j].upper() <= measures[j + 1].lower()))
      throw ConfigError("family: intervals must be disjoint and ordered left to right (" +
                        std::to_string(j + 1) + " overlaps " + std::to_string(j + 2) + ")");
  const int S = 2 * (n_max + static_cast<int>(measures.size())) + 8;
  tables_.reserve(measures.size());
  for (const auto& m : measures) tables_.push_back(cached_moments(m, S));
  // Global sign normalization: with intervals ordered left to right the
  // determinant form evaluated on the constant 1 is positive; pin it.
  sign_ = 1.0;
  const double probe = rank_one_form(*this, Polynomial::one(), Polynomial::one());
  if (probe < 0.0) sign_ = -1.0;
}

const MomentTable& InnerProductFamily::table(int j) const {
  if (j < 1 || j > k()) throw IndexOutOfRange("family: inner product index out of range");
  return tables_[static_cast<size_t>(j - 1)];
}

double InnerProductFamily::ip(int j, const Polynomial& p, const Polynomial& q, int power) const {
  const MomentTable& t = table(j);
  if (p.is_zero() || q.is_zero()) return 0.0;
  const Polynomial c = p * q;
  if (c.degree() + power > t.max_order())
    throw InsufficientMoments("family: moment table does not cover the requested power");
  double s = 0.0;
  for (int i = 0; i <= c.degree(); ++i) s += c.coeff(i) * t(i + power);
  return s;
}

double rank_one_form(const InnerProductFamily& fam, const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) return 0.0;
  Eigen::MatrixXd M = pair_matrix(fam, p, q, fam.k());
  return fam.sign() * M.determinant();
}

double deleted_form(const InnerProductFamily& fam, int j, const Polynomial& p,
                    const Polynomial& q) {
  const int k = fam.k();
  if (j < 1 || j > k) throw IndexOutOfRange("deleted_form: j out of range");
  if (p.is_zero() || q.is_zero()) return 0.0;
  if (k == 2) return fam.ip(j == 1 ? 2 : 1, p, q);
  Eigen::MatrixXd M = pair_matrix(fam, p, q, k - 1);
  Eigen::MatrixXd D(k - 1, k - 1);
  int col = 0;
  for (int i = 1; i <= k; ++i) {
    if (i == j) continue;
    D.col(col++) = M.col(i - 1);
  }
  return D.determinant();
}

double vandermonde_oracle(const InnerProductFamily& fam, const Polynomial& p, const Polynomial& q,
                          int deleted, int order) {
  const int k = fam.k();
  if (k > 3) throw UnsupportedDimension("vandermonde_oracle: k > 3");
  if (deleted < 0 || deleted > k) throw IndexOutOfRange("vandermonde_oracle: deleted index");

  std::vector<int> dims; // inner-product indices participating, in order
  for (int j = 1; j <= k; ++j)
    if (j != deleted) dims.push_back(j);
  const int d = static_cast<int>(dims.size());

  std::vector<QuadRule> rules;
  rules.reserve(static_cast<size_t>(d));
  for (int j : dims) {
    const IntervalMeasure& mu = fam.table(j).measure();
    int base = order > 0 ? order : (mu.bounded() ? 64 : 512);
    rules.push_back(measure_rule(mu, base));
  }

  // Per-axis values of p*q at the nodes.
  std::vector<Eigen::VectorXd> fg(static_cast<size_t>(d));
  for (int a = 0; a < d; ++a) {
    const auto& r = rules[static_cast<size_t>(a)];
    fg[static_cast<size_t>(a)].resize(r.size());
    for (int i = 0; i < r.size(); ++i)
      fg[static_cast<size_t>(a)](i) = p(r.nodes(i)) * q(r.nodes(i));
  }

  double total = 0.0;
  if (d == 1) {
    for (int i = 0; i < rules[0].size(); ++i) total += rules[0].weights(i) * fg[0](i);
  } else if (d == 2) {
    for (int i = 0; i < rules[0].size(); ++i) {
      const double xi = rules[0].nodes(i);
      double row = 0.0;
      for (int j = 0; j < rules[1].size(); ++j)
        row += rules[1].weights(j) * fg[1](j) * (rules[1].nodes(j) - xi);
      total += rules[0].weights(i) * fg[0](i) * row;
    }
  } else {
    for (int i = 0; i < rules[0].size(); ++i) {
      const double xi = rules[0].nodes(i);
      for (int j = 0; j < rules[1].size(); ++j) {
        const double xj = rules[1].nodes(j);
        const double wij = rules[0].weights(i) * fg[0](i) * rules[1].weights(j) * fg[1](j) * (xj - xi);
        double row = 0.0;
        for (int l = 0; l < rules[2].size(); ++l)
          row += rules[2].weights(l) * fg[2](l) * (rules[2].nodes(l) - xi) * (rules[2].nodes(l) - xj);
        total += wij * row;
      }
    }
  }
  const double sgn = (deleted == 0) ? fam.sign() : 1.0;
  return sgn * total;
}

DefinitenessReport definiteness_check(const InnerProductFamily& fam, int trials, int degree,
                                      std::uint64_t seed) {
  DefinitenessReport rep;
  rep.trials = trials;
  rep.min_rank_one = kInf;
  rep.min_abs_deleted = kInf;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    std::vector<double> c(static_cast<size_t>(degree) + 1);
    for (double& v : c) v = coeff(rng);
    Polynomial p{std::move(c)};
    if (p.is_zero()) continue;
    const double nrm = p.l2_norm();
    // The forms are homogeneous of degree 2k (resp. 2(k-1)) in p.
    const double r1 = rank_one_form(fam, p, p) / std::pow(nrm, 2.0 * fam.k());
    rep.min_rank_one = std::min(rep.min_rank_one, r1);
    if (!(r1 > 0.0)) rep.rank_one_all_positive = false;
    for (int j = 1; j <= fam.k(); ++j) {
      const double dj = std::abs(deleted_form(fam, j, p, p)) / std::pow(nrm, 2.0 * (fam.k() - 1));
      rep.min_abs_deleted = std::min(rep.min_abs_deleted, dj);
      if (!(dj > 0.0)) rep.deleted_all_nonzero = false;
    }
  }
  return rep;
}

double rank_one_residual(const InnerProductFamily& fam, const Polynomial& p, const Polynomial& q) {
  const double scale =
      std::sqrt(std::abs(rank_one_form(fam, p, p)) * std::abs(rank_one_form(fam, q, q)));
  if (!(scale > 0.0)) return 0.0;
  return std::abs(rank_one_form(fam, p, q)) / scale;
}

double deleted_residual(const InnerProductFamily& fam, int j, const Polynomial& p,
                        const Polynomial& q) {
  const double scale =
      std::sqrt(std::abs(deleted_form(fam, j, p, p)) * std::abs(deleted_form(fam, j, q, q)));
  if (!(scale > 0.0)) return 0.0;
  return std::abs(deleted_form(fam, j, p, q)) / scale;
}

} // namespace jop

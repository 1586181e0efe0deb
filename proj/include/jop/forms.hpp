#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "jop/measure.hpp"
#include "jop/poly.hpp"

namespace jop {

/// k inner products <.,.>_j given by weighted intervals, ordered left to
/// right, together with their moment tables up to the order needed for
/// polynomials of degree n_max.
///
/// The k-fold determinantal form on rank-one tensors is
///   <p^(k), q^(k)> = det( <p, x^r q>_j ),  r = 0..k-1 (rows), j = 1..k,
/// and the j-th deleted form on (k-1)-fold tensors omits column j and the
/// last power row. A fixed global sign (determined at construction from
/// p = 1) normalizes the k-fold form to be positive definite.
class InnerProductFamily {
public:
  InnerProductFamily(std::vector<IntervalMeasure> measures, int n_max);

  int k() const { return static_cast<int>(tables_.size()); }
  int n_max() const { return n_max_; }
  const MomentTable& table(int j) const; // j = 1..k
  const std::vector<MomentTable>& tables() const { return tables_; }
  double sign() const { return sign_; }

  /// <p, x^power q>_j for j = 1..k.
  double ip(int j, const Polynomial& p, const Polynomial& q, int power = 0) const;

private:
  std::vector<MomentTable> tables_;
  int n_max_;
  double sign_ = 1.0;
};

/// <p^(k), q^(k)>: determinant of the k x k matrix of <p, x^r q>_j.
double rank_one_form(const InnerProductFamily& fam, const Polynomial& p, const Polynomial& q);

/// <p^(k-1), q^(k-1)>_(j): the (k-1) x (k-1) determinant omitting column j,
/// rows r = 0..k-2. j = 1..k.
double deleted_form(const InnerProductFamily& fam, int j, const Polynomial& p,
                    const Polynomial& q);

/// Direct tensor-product quadrature of the k-fold (or (k-1)-fold when
/// `deleted` is 1..k) integral with the Vandermonde factor. Test oracle for
/// the determinant formulas; k <= 3 only.
double vandermonde_oracle(const InnerProductFamily& fam, const Polynomial& p, const Polynomial& q,
                          int deleted = 0, int order = 0);

/// Report of random-trial definiteness checks (Definiteness Conditions 1, 2).
struct DefinitenessReport {
  int trials = 0;
  double min_rank_one = 0.0;        // min over trials of <p^(k), p^(k)> (sign-normalized)
  double min_abs_deleted = 0.0;     // min over trials and j of |<p^(k-1), p^(k-1)>_(j)|
  bool rank_one_all_positive = true;
  bool deleted_all_nonzero = true;
};

DefinitenessReport definiteness_check(const InnerProductFamily& fam, int trials, int degree,
                                      std::uint64_t seed = 12345);

/// rank_one_form normalized by the Cauchy-Schwarz scale
/// sqrt(<p,p><q,q>); the residual metric used by orthogonality checks.
double rank_one_residual(const InnerProductFamily& fam, const Polynomial& p, const Polynomial& q);

/// deleted_form(j) normalized by sqrt(|<p,p>_(j)| |<q,q>_(j)|).
double deleted_residual(const InnerProductFamily& fam, int j, const Polynomial& p,
                        const Polynomial& q);

} // namespace jop

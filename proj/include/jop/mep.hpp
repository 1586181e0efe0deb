#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jop/forms.hpp"
#include "jop/poly.hpp"

namespace jop {

/// Rectangular multiparameter eigenvalue problem sum_j lambda_j A_j v = 0
/// with k Hankel matrices of shape (n+k-1) x (n+1) built from moments.
struct RectMEP {
  int k = 0;
  int n = 0;
  std::vector<Eigen::MatrixXd> A;
  std::string source; // "family", "appendix_b", "custom"
};

/// One accepted eigenpair: monic eigenvector (as a polynomial), unit-length
/// eigenvalue with first nonzero component positive, and the relative
/// residual ||sum lambda_j A_j v|| / (||v|| max_j ||A_j||).
struct Eigenpair {
  Polynomial vector;
  Eigen::VectorXd lambda;
  double residual = 0.0;
  std::vector<int> signature; // real-root counts per interval, left to right
};

/// The N = C(n+k-1, k-1) eigenpairs of one degree, canonically ordered, with
/// the distinctness certificate and the deleted-form orthogonality residuals.
struct JointSystem {
  int n = 0;
  int k = 0;
  std::vector<Eigenpair> members;
  double min_lambda_angle = 0.0;          // min pairwise angle between lambda rays
  double max_orthogonality_residual = 0.0; // max over j, alpha != beta
  std::vector<Eigen::MatrixXd> deleted_residuals; // one matrix per deleted form
};

struct SolveOptions {
  std::uint64_t seed = 0;
  int max_newton_iters = 50;
  double accept_residual = 1e-11;
  double dedup_angle = 1e-6; // lambda rays closer than this are one solution
};

long binomial(int n, int r);

/// Angle between the rays spanned by two vectors (sign-invariant).
double ray_angle(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// A_j[i][s] = m_j(i + s), shape (n+k-1) x (n+1).
RectMEP build(const InnerProductFamily& fam, int n);

/// k = 2 path: Cholesky reduction of A_2 to a standard symmetric eigenproblem.
JointSystem solve_k2(const RectMEP& mep, const InnerProductFamily& fam);

/// Seed for the Newton path: monic polynomial with counts[j] roots equispaced
/// in interval j, and lambda from the eigenvalue formula.
std::pair<Polynomial, Eigen::VectorXd> seed_from_distribution(const InnerProductFamily& fam,
                                                              int n,
                                                              const std::vector<int>& counts);

/// All compositions of n into k parts (stars and bars), each mapped through
/// seed_from_distribution.
std::vector<std::pair<Polynomial, Eigen::VectorXd>> enumerate_seeds(const InnerProductFamily& fam,
                                                                    int n);

/// Newton iteration on the augmented square system for each seed, followed by
/// deduplication on lambda-ray angle. Throws IncompleteSystem if fewer than
/// C(n+k-1, k-1) distinct pairs survive.
JointSystem solve_newton(const RectMEP& mep, const InnerProductFamily& fam,
                         const std::vector<std::pair<Polynomial, Eigen::VectorXd>>& seeds,
                         const SolveOptions& opt = {});

/// Dispatch: solve_k2 for k = 2, otherwise solve_newton over all composition
/// seeds.
JointSystem solve_joint_system(const InnerProductFamily& fam, int n, const SolveOptions& opt = {});

/// Assemble a JointSystem from externally produced eigenvectors (for example
/// a differential-operator eigenbasis): lambda comes from the eigenvalue
/// formula, residuals from the family MEP.
JointSystem system_from_vectors(const InnerProductFamily& fam, int n,
                                const std::vector<Polynomial>& vectors);

/// lambda ~ ((-1)^{j-1} <v^(k-1), v^(k-1)>_(j))_j, normalized. Throws
/// DegenerateVector when all components vanish.
Eigen::VectorXd eigenvalue_formula(const InnerProductFamily& fam, const Polynomial& v);

/// The closed-form Appendix-style problem: k matrices of shape
/// (n+k-1) x (n+1) with A_i[j, j+1-i] = 1 plus the wrap entry A_k[0, n] = 1.
struct BandedTemplate {
  int n = 0;
  int k = 0;
  std::vector<Eigen::MatrixXd> A;
};

BandedTemplate appendix_b_build(int n, int k);

/// Column-reversed copy (the symmetric form of the template).
BandedTemplate symmetrize_columns(const BandedTemplate& t);

/// Closed-form eigenpair from a choice of kappa = k-1 distinct (n+kappa)-th
/// roots of unity (given by their indices in 0..n+kappa-1). Pairs whose
/// choice set is closed under conjugation are realified.
struct ClosedFormPair {
  Eigen::VectorXcd lambda;
  Eigen::VectorXcd vector;
  bool real = false;
  Eigen::VectorXd lambda_real; // valid when real
  Eigen::VectorXd vector_real;
  double residual = 0.0; // against the banded template
  std::vector<int> choice;
};

ClosedFormPair appendix_b_closed_form(int n, int k, const std::vector<int>& choice);

/// All C(n+kappa, kappa) choices.
std::vector<ClosedFormPair> appendix_b_enumerate(int n, int k);

/// M(u, v)[i][j] = <u, x^i v>_{j+1} (rows = powers 0..k-1, columns = inner
/// products) together with the k minors deleting the last row and one column;
/// minor j equals the j-th deleted form. For eigenvectors with distinct
/// eigenvalues all minors vanish.
std::pair<Eigen::MatrixXd, Eigen::VectorXd> m_matrix_minors(const InnerProductFamily& fam,
                                                            const Polynomial& u,
                                                            const Polynomial& v);

/// Root-count signature of v with respect to the family intervals: real roots
/// assigned to the nearest interval band.
std::vector<int> root_signature(const InnerProductFamily& fam, const Polynomial& v);

/// Canonical member order: by signature, then lexicographically by
/// coefficients.
void canonical_sort(std::vector<Eigenpair>& members);

} // namespace jop

#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "jop/mep.hpp"

namespace jop {

/// Heun family: Q(x) = prod (x - e_i) with e_1 < e_2 < e_3,
/// P(x) = sum_i a_i prod_{j != i} (x - e_j), weight prod |x - e_i|^{a_i - 1}
/// on the two gaps (e_1, e_2) and (e_2, e_3).
struct HeunSpec {
  std::array<double, 3> e{};
  std::array<double, 3> a{};
  int n = 0;

  HeunSpec(std::array<double, 3> roots, std::array<double, 3> exps, int degree);
  Polynomial Q() const;
  Polynomial P() const;
  InnerProductFamily family(int n_max = -1) const;
};

/// Matrix of L_n = Q d^2 + P d - n(n-1+a_1+a_2+a_3) x on the monomial basis
/// of V_n (the operator preserves V_n).
Eigen::MatrixXd heun_matrix(const HeunSpec& spec);

struct HeunSolution {
  JointSystem system;
  Eigen::VectorXd operator_eigenvalues; // ascending
};

/// Dense eigen-decomposition of the Heun matrix; eigenvectors returned as a
/// joint system over the two-interval family.
HeunSolution heun_solve(const HeunSpec& spec);

/// || G_j L - (G_j L)^T || / || G_j L || where G_j is the Hankel pairing of
/// the j-th inner product: the matrix statement of <Lf, g>_j = <f, Lg>_j.
/// `opmatrix` may be rectangular (V_n into a larger space).
double selfadjointness_residual(const InnerProductFamily& fam, const Eigen::MatrixXd& opmatrix,
                                int j);

/// One Lame polynomial: prefactor pattern eps (each factor (x-e_i)^{eps_i/2}),
/// polynomial part of the stated inner degree, and its Heun eigenvalue.
struct LameEntry {
  std::array<int, 3> eps{};
  int inner_degree = 0;
  Polynomial poly;
  double eigenvalue = 0.0;
};

struct LameCatalog {
  int nu = 0;
  std::vector<LameEntry> entries; // total must be 2 nu + 1
};

/// All Lame polynomials of degree nu over Q with the given roots: for each
/// species pattern compatible with the parity of nu, the Heun problem with
/// a_i = eps_i + 1/2 at inner degree (nu - sum eps)/2.
LameCatalog lame_catalog(const std::array<double, 3>& qroots, int nu);

/// Whittaker-Hill / Ince family: weight e^{2 alpha x} |1-x|^{a1-1} |1+x|^{a2-1}
/// on (-1, 1) and (1, inf); alpha < 0, a_i in {1/2, 3/2}.
struct InceSpec {
  double alpha = -1.0;
  double a1 = 0.5;
  double a2 = 0.5;
  int n = 0;

  InceSpec(double alpha_, double a1_, double a2_, int degree);
  int eps1() const { return a1 > 1.0 ? 1 : 0; }
  int eps2() const { return a2 > 1.0 ? 1 : 0; }
  int nu() const { return 2 * n + 1 + eps1() + eps2(); }
  InnerProductFamily family(int n_max = -1) const;
};

/// Matrix of the Ince operator
/// (x^2-1) d^2 + (a1 (x+1) + a2 (x-1) + 2 alpha (x^2-1)) d - 2 n alpha x.
Eigen::MatrixXd ince_matrix(const InceSpec& spec);

/// Whittaker-Hill residual of psi(theta) = sin^eps1 cos^eps2 E(cos 2theta)
/// e^{alpha cos 2theta} at the sample points, with the spectral parameter
/// fitted per member by least squares. Returns the worst normalized residual.
double ince_check(const InceSpec& spec, const JointSystem& system,
                  const std::vector<double>& thetas);

/// Periodicity class of the Ince eigenfunctions: psi(theta+pi) = +psi for odd
/// nu, -psi for even nu. Returns the worst deviation from the expected sign.
double ince_periodicity_residual(const InceSpec& spec, const JointSystem& system,
                                 const std::vector<double>& thetas);

/// Sextic-potential family: weight |x|^{l+1/2} e^{-x^2/2} on (-inf, 0) and
/// (0, inf); l > -1, nu = 4n + 5 + 2l.
struct SexticSpec {
  double ell = 0.0;
  int n = 0;

  SexticSpec(double ell_, int degree);
  double nu() const { return 4.0 * n + 5.0 + 2.0 * ell; }
  InnerProductFamily family(int n_max = -1) const;
};

/// Matrix of L = -2x d^2 + (2x^2 - 2l - 3) d - 2nx.
Eigen::MatrixXd sextic_matrix(const SexticSpec& spec);

/// Residual of H psi = mu psi with H = -d^2/dr^2 + r^6 - nu r^2 + l(l+1)/r^2
/// and psi(r) = r^{l+1} e^{-r^4/4} E(r^2), mu fitted per member.
double sextic_check(const SexticSpec& spec, const JointSystem& system,
                    const std::vector<double>& rs);

/// Heine-Stieltjes family: k+1 ordered nodes e_0 < ... < e_k with exponents
/// m_i > 0; intervals (e_{j-1}, e_j), weight prod |x - e_i|^{m_i - 1}.
struct HeineStieltjesSpec {
  std::vector<double> e;
  std::vector<double> m;
  int n = 0;

  HeineStieltjesSpec(std::vector<double> nodes, std::vector<double> exponents, int degree);
  int k() const { return static_cast<int>(e.size()) - 1; }
  double exponent_sum() const;
  /// Required leading coefficient of every Van Vleck polynomial.
  double van_vleck_leading() const { return -static_cast<double>(n) * (n - 1 + exponent_sum()); }
  InnerProductFamily family(int n_max = -1) const;
};

/// Rectangular matrix of L = Q d^2 + sum_j m_j Q_jhat d from V_n into
/// V_{n+k-1} (the operator does not preserve V_n for k >= 2).
Eigen::MatrixXd heine_stieltjes_opmatrix(const HeineStieltjesSpec& spec);

struct HeineStieltjesResult {
  JointSystem system;
  std::vector<Polynomial> van_vleck;  // aligned with system.members
  double max_division_remainder = 0.0;
  double max_ode_residual = 0.0;
};

/// Solve via the Newton MEP path seeded from all root distributions, then
/// extract each Van Vleck polynomial by exact division and verify the ODE.
HeineStieltjesResult heine_stieltjes_solve(const HeineStieltjesSpec& spec,
                                           const SolveOptions& opt = {});

} // namespace jop

#include "jop/gs.hpp"

#include <cmath>

#include "jop/errors.hpp"

namespace jop {

namespace {

// T(v, E)[r][j] = <v, x^r E>_j, the matrix whose determinant is the rank-one
// form; linear in v, so d det / d v_c contracts the cofactors with
// <x^c, x^r E>_j.
Eigen::MatrixXd form_matrix(const InnerProductFamily& fam, const Polynomial& v,
                            const Polynomial& e) {
  const int k = fam.k();
  Eigen::MatrixXd T(k, k);
  for (int r = 0; r < k; ++r)
    for (int j = 1; j <= k; ++j) T(r, j - 1) = fam.ip(j, v, e, r);
  return T;
}

Eigen::MatrixXd cofactor_matrix(const Eigen::MatrixXd& T) {
  const int k = static_cast<int>(T.rows());
  Eigen::MatrixXd C(k, k);
  if (k == 1) {
    C(0, 0) = 1.0;
    return C;
  }
  Eigen::MatrixXd sub(k - 1, k - 1);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) {
      int sr = 0;
      for (int i = 0; i < k; ++i) {
        if (i == r) continue;
        int sc = 0;
        for (int j = 0; j < k; ++j) {
          if (j == c) continue;
          sub(sr, sc++) = T(i, j);
        }
        ++sr;
      }
      C(r, c) = (((r + c) % 2 == 0) ? 1.0 : -1.0) * sub.determinant();
    }
  return C;
}

} // namespace

Eigen::MatrixXd gs_residuals(const InnerProductFamily& fam,
                             const std::vector<Polynomial>& candidates,
                             const JointSystem& previous) {
  const long expected = binomial(previous.n + fam.k() - 1, fam.k() - 1);
  if (static_cast<long>(previous.members.size()) != expected)
    throw ConfigError("gs_residuals: previous system has the wrong member count");
  Eigen::MatrixXd R(static_cast<int>(candidates.size()), static_cast<int>(previous.members.size()));
  for (size_t c = 0; c < candidates.size(); ++c)
    for (size_t a = 0; a < previous.members.size(); ++a)
      R(static_cast<int>(c), static_cast<int>(a)) =
          rank_one_residual(fam, candidates[c], previous.members[a].vector);
  return R;
}

Polynomial gs_refine(const InnerProductFamily& fam, const Polynomial& candidate,
                     const JointSystem& previous, int max_iters) {
  const int k = fam.k();
  const int n = candidate.degree();
  if (n < 1) throw ConfigError("gs_refine: candidate must have degree >= 1");
  const long neq = static_cast<long>(previous.members.size());
  if (neq + 1 < n + 1)
    throw UnderdeterminedSystem("gs_refine: fewer equations than unknowns");

  // Unknowns: coefficients 0..n-1; the leading coefficient is pinned to 1.
  Eigen::VectorXd x(n);
  {
    const Polynomial c = candidate.monic();
    for (int i = 0; i < n; ++i) x(i) = c.coeff(i);
  }
  auto to_poly = [&](const Eigen::VectorXd& y) {
    std::vector<double> c(static_cast<size_t>(n) + 1, 0.0);
    for (int i = 0; i < n; ++i) c[static_cast<size_t>(i)] = y(i);
    c.back() = 1.0;
    return Polynomial(std::move(c));
  };

  std::vector<double> eq_scale(static_cast<size_t>(neq));
  for (long a = 0; a < neq; ++a) {
    const Polynomial& e = previous.members[static_cast<size_t>(a)].vector;
    eq_scale[static_cast<size_t>(a)] = std::sqrt(std::abs(rank_one_form(fam, e, e)));
  }

  for (int it = 0; it < max_iters; ++it) {
    Polynomial v = to_poly(x);
    Eigen::VectorXd g(neq);
    Eigen::MatrixXd J(neq, n);
    for (long a = 0; a < neq; ++a) {
      const Polynomial& e = previous.members[static_cast<size_t>(a)].vector;
      Eigen::MatrixXd T = form_matrix(fam, v, e);
      Eigen::MatrixXd C = cofactor_matrix(T);
      const double s = eq_scale[static_cast<size_t>(a)];
      g(a) = fam.sign() * T.determinant() / s;
      for (int c = 0; c < n; ++c) {
        double d = 0.0;
        const Polynomial xc = Polynomial::monomial(c);
        for (int r = 0; r < k; ++r)
          for (int j = 1; j <= k; ++j) d += C(r, j - 1) * fam.ip(j, xc, e, r);
        J(a, c) = fam.sign() * d / s;
      }
    }
    const double vscale = std::sqrt(std::abs(rank_one_form(fam, v, v)));
    if ((g.cwiseAbs().maxCoeff() / std::max(vscale, 1e-300)) < 1e-12) return v;
    Eigen::VectorXd step = J.colPivHouseholderQr().solve(-g);
    x += step;
    if (step.norm() < 1e-15 * (1.0 + x.norm())) break;
  }
  Polynomial v = to_poly(x);
  double worst = 0.0;
  for (long a = 0; a < neq; ++a)
    worst = std::max(worst,
                     rank_one_residual(fam, v, previous.members[static_cast<size_t>(a)].vector));
  if (worst > 1e-10) throw ConvergenceFailure("gs_refine: did not reach the GS equations");
  return v;
}

GSLedger gs_drive(const InnerProductFamily& fam, int n_max, const SolveOptions& opt) {
  if (n_max > fam.n_max()) throw InsufficientMoments("gs_drive: family does not support n_max");
  GSLedger ledger;
  ledger.systems.push_back(solve_joint_system(fam, 0, opt));
  for (int n = 1; n <= n_max; ++n) {
    JointSystem sys = solve_joint_system(fam, n, opt);
    std::vector<Polynomial> candidates;
    candidates.reserve(sys.members.size());
    for (const auto& m : sys.members) candidates.push_back(m.vector);
    Eigen::MatrixXd R = gs_residuals(fam, candidates, ledger.systems.back());
    const double worst = R.size() > 0 ? R.cwiseAbs().maxCoeff() : 0.0;
    if (worst > 1e-8)
      throw ConvergenceFailure("gs_drive: candidate violates the GS equations at degree " +
                               std::to_string(n));
    ledger.max_residual = std::max(ledger.max_residual, worst);
    for (const auto& c : candidates) {
      const Polynomial refined = gs_refine(fam, c, ledger.systems.back());
      double shift = 0.0;
      for (int i = 0; i <= n; ++i) shift = std::max(shift, std::abs(refined.coeff(i) - c.coeff(i)));
      ledger.max_refine_shift = std::max(ledger.max_refine_shift, shift);
    }
    ledger.residuals.push_back(std::move(R));
    ledger.systems.push_back(std::move(sys));
  }
  return ledger;
}

ToyReport toy_example(double epsilon, double lambda) {
  if (epsilon < 0.0 || epsilon >= 1.0) throw ConfigError("toy_example: epsilon must be in [0, 1)");
  if (!(lambda > 0.0)) throw ConfigError("toy_example: lambda must be positive");
  ToyReport rep;
  rep.epsilon = epsilon;
  rep.lambda = lambda;
  rep.criterion = 1.0 - std::pow(epsilon, 4) - lambda * epsilon * epsilon;

  Eigen::Matrix3d G;
  G << 1.0, 0.0, -epsilon * epsilon, //
      0.0, lambda, 0.0,              //
      -epsilon * epsilon, 0.0, 1.0;

  // Rank-one vectors a*e1 + b*e2 + c*e3 correspond to (alpha x + beta)^(2)
  // with (a, b, c) = (alpha^2, alpha beta, beta^2), i.e. a c = b^2. In the
  // complement of e3: c = a eps^2, so b = +/- a eps.
  if (epsilon == 0.0) {
    rep.rank_one_count = 1;
    rep.directions.push_back(Eigen::Vector3d(1.0, 0.0, 0.0));
  } else {
    rep.rank_one_count = 2;
    rep.directions.push_back(Eigen::Vector3d(1.0, epsilon, epsilon * epsilon));
    rep.directions.push_back(Eigen::Vector3d(1.0, -epsilon, epsilon * epsilon));
    const Eigen::Vector3d& u = rep.directions[0];
    const Eigen::Vector3d& w = rep.directions[1];
    rep.mutual_inner = u.dot(G * w) / std::sqrt(u.dot(G * u) * w.dot(G * w));
  }
  rep.orthogonal = (rep.rank_one_count == 2) && std::abs(rep.mutual_inner) < 1e-12;
  return rep;
}

} // namespace jop

#include "jop/classical.hpp"

#include <cmath>

#include "jop/errors.hpp"

namespace jop {

namespace {

// Matrix of a polynomial-coefficient operator on the monomial basis of V_n,
// reading rows 0..rows-1 of each image polynomial.
Eigen::MatrixXd operator_matrix(int n, int rows, const std::function<Polynomial(int)>& image) {
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(rows, n + 1);
  for (int s = 0; s <= n; ++s) {
    const Polynomial col = image(s);
    for (int i = 0; i < rows; ++i) L(i, s) = col.coeff(i);
  }
  return L;
}

std::vector<double> chebyshev_samples(double lo, double hi, int count, double guard_frac) {
  const double len = hi - lo;
  const double a = lo + guard_frac * len, b = hi - guard_frac * len;
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  std::vector<double> xs(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i)
    xs[static_cast<size_t>(i)] = mid + half * std::cos(M_PI * (2.0 * i + 1.0) / (2.0 * count));
  return xs;
}

// Least-squares fit of mu in H psi = mu psi over samples, then the worst
// |H psi - mu psi| normalized by max |psi| * max(1, |mu|).
double fitted_residual(const std::vector<double>& Hpsi, const std::vector<double>& psi) {
  double num = 0.0, den = 0.0, psimax = 0.0;
  for (size_t i = 0; i < psi.size(); ++i) {
    num += Hpsi[i] * psi[i];
    den += psi[i] * psi[i];
    psimax = std::max(psimax, std::abs(psi[i]));
  }
  const double mu = den > 0.0 ? num / den : 0.0;
  double worst = 0.0;
  for (size_t i = 0; i < psi.size(); ++i) worst = std::max(worst, std::abs(Hpsi[i] - mu * psi[i]));
  return worst / (psimax * std::max(1.0, std::abs(mu)));
}

} // namespace

HeunSpec::HeunSpec(std::array<double, 3> roots, std::array<double, 3> exps, int degree)
    : e(roots), a(exps), n(degree) {
  if (!(e[0] < e[1] && e[1] < e[2])) throw ConfigError("heun: roots must be strictly ordered");
  for (double ai : a)
    if (!(ai > 0.0)) throw ConfigError("heun: a_i must be positive");
  if (n < 0) throw ConfigError("heun: degree must be >= 0");
}

Polynomial HeunSpec::Q() const { return Polynomial::from_roots(std::span(e.data(), 3)); }

Polynomial HeunSpec::P() const {
  Polynomial p;
  for (int i = 0; i < 3; ++i) {
    std::array<double, 2> other{};
    int t = 0;
    for (int j = 0; j < 3; ++j)
      if (j != i) other[static_cast<size_t>(t++)] = e[static_cast<size_t>(j)];
    p = p + Polynomial::from_roots(std::span(other.data(), 2), a[static_cast<size_t>(i)]);
  }
  return p;
}

InnerProductFamily HeunSpec::family(int n_max) const {
  std::vector<SingularFactor> sf;
  for (int i = 0; i < 3; ++i) sf.push_back({e[static_cast<size_t>(i)], a[static_cast<size_t>(i)] - 1.0});
  std::vector<IntervalMeasure> ms;
  ms.emplace_back(e[0], e[1], sf);
  ms.emplace_back(e[1], e[2], sf);
  return InnerProductFamily(std::move(ms), n_max < 0 ? n : n_max);
}

Eigen::MatrixXd heun_matrix(const HeunSpec& spec) {
  const Polynomial q = spec.Q(), p = spec.P();
  const double c = spec.n * (spec.n - 1.0 + spec.a[0] + spec.a[1] + spec.a[2]);
  const Polynomial cx = Polynomial::monomial(1, c);
  auto image = [&](int s) {
    const Polynomial xs = Polynomial::monomial(s);
    return q * xs.differentiate().differentiate() + p * xs.differentiate() - cx * xs;
  };
  return operator_matrix(spec.n, spec.n + 1, image);
}

HeunSolution heun_solve(const HeunSpec& spec) {
  const Eigen::MatrixXd L = heun_matrix(spec);
  Eigen::EigenSolver<Eigen::MatrixXd> es(L);
  if (es.info() != Eigen::Success) throw ComplexEigenvalues("heun_solve: eigensolver failed");
  const double scale = L.norm() + 1.0;
  for (int i = 0; i <= spec.n; ++i)
    if (std::abs(es.eigenvalues()(i).imag()) > 1e-8 * scale)
      throw ComplexEigenvalues("heun_solve: complex eigenvalue (invalid spec?)");

  InnerProductFamily fam = spec.family();
  std::vector<Polynomial> vectors;
  for (int i = 0; i <= spec.n; ++i) {
    std::vector<double> c(static_cast<size_t>(spec.n) + 1);
    for (int r = 0; r <= spec.n; ++r) c[static_cast<size_t>(r)] = es.eigenvectors()(r, i).real();
    vectors.push_back(Polynomial(std::move(c)).monic());
  }
  HeunSolution out{system_from_vectors(fam, spec.n, vectors), es.eigenvalues().real()};
  std::sort(out.operator_eigenvalues.begin(), out.operator_eigenvalues.end());
  return out;
}

double selfadjointness_residual(const InnerProductFamily& fam, const Eigen::MatrixXd& opmatrix,
                                int j) {
  const int cols = static_cast<int>(opmatrix.cols());
  const int rows = static_cast<int>(opmatrix.rows());
  const Eigen::MatrixXd H = gram_matrix(fam.table(j), cols, rows); // <x^i, x^t>_j
  const Eigen::MatrixXd S = H * opmatrix;                          // <x^i, L x^s>_j
  return (S - S.transpose()).norm() / S.norm();
}

LameCatalog lame_catalog(const std::array<double, 3>& qroots, int nu) {
  if (nu < 0) throw ConfigError("lame_catalog: nu must be >= 0");
  LameCatalog cat;
  cat.nu = nu;
  for (int mask = 0; mask < 8; ++mask) {
    const std::array<int, 3> eps{mask & 1, (mask >> 1) & 1, (mask >> 2) & 1};
    const int esum = eps[0] + eps[1] + eps[2];
    if ((nu - esum) % 2 != 0 || nu < esum) continue;
    const int inner = (nu - esum) / 2;
    HeunSpec hs(qroots, {eps[0] + 0.5, eps[1] + 0.5, eps[2] + 0.5}, inner);
    HeunSolution sol = heun_solve(hs);
    for (size_t i = 0; i < sol.system.members.size(); ++i) {
      LameEntry entry;
      entry.eps = eps;
      entry.inner_degree = inner;
      entry.poly = sol.system.members[i].vector;
      entry.eigenvalue = sol.operator_eigenvalues(static_cast<int>(i));
      cat.entries.push_back(std::move(entry));
    }
  }
  return cat;
}

InceSpec::InceSpec(double alpha_, double a1_, double a2_, int degree)
    : alpha(alpha_), a1(a1_), a2(a2_), n(degree) {
  if (!(alpha < 0.0)) throw ConfigError("ince: alpha must be negative");
  auto half = [](double v) { return v == 0.5 || v == 1.5; };
  if (!half(a1) || !half(a2)) throw ConfigError("ince: a_i must be 1/2 or 3/2");
  if (n < 0) throw ConfigError("ince: degree must be >= 0");
}

InnerProductFamily InceSpec::family(int n_max) const {
  std::vector<SingularFactor> sf{{1.0, a1 - 1.0}, {-1.0, a2 - 1.0}};
  std::vector<IntervalMeasure> ms;
  ms.emplace_back(-1.0, 1.0, sf, 2.0 * alpha);
  ms.emplace_back(1.0, kInf, sf, 2.0 * alpha);
  return InnerProductFamily(std::move(ms), n_max < 0 ? n : n_max);
}

Eigen::MatrixXd ince_matrix(const InceSpec& spec) {
  const Polynomial q({-1.0, 0.0, 1.0});
  const Polynomial p({spec.a1 - spec.a2 - 2.0 * spec.alpha, spec.a1 + spec.a2, 2.0 * spec.alpha});
  const Polynomial cx = Polynomial::monomial(1, 2.0 * spec.n * spec.alpha);
  auto image = [&](int s) {
    const Polynomial xs = Polynomial::monomial(s);
    return q * xs.differentiate().differentiate() + p * xs.differentiate() - cx * xs;
  };
  return operator_matrix(spec.n, spec.n + 1, image);
}

double ince_check(const InceSpec& spec, const JointSystem& system,
                  const std::vector<double>& thetas) {
  const int e1 = spec.eps1(), e2 = spec.eps2();
  const double al = spec.alpha;
  const double nu = spec.nu();
  double worst = 0.0;
  for (const auto& member : system.members) {
    const Polynomial& E = member.vector;
    const Polynomial dE = E.differentiate(), ddE = dE.differentiate();
    std::vector<double> psi, Hpsi;
    for (double th : thetas) {
      const double s = std::sin(th), c = std::cos(th);
      const double u = std::cos(2.0 * th), du = -2.0 * std::sin(2.0 * th);
      const double F = std::pow(s, e1) * std::pow(c, e2) * std::exp(al * u);
      const double h = e1 * (c / s) - e2 * (s / c) + al * du;
      const double hp = -e1 / (s * s) - e2 / (c * c) - 4.0 * al * u;
      const double G = E(u), Gp = dE(u) * du, Gpp = ddE(u) * du * du + dE(u) * (-4.0 * u);
      const double psiv = F * G;
      const double psipp = F * (hp + h * h) * G + 2.0 * F * h * Gp + F * Gpp;
      const double H = -psipp - (4.0 * al * nu * u + 2.0 * al * al * std::cos(4.0 * th)) * psiv;
      psi.push_back(psiv);
      Hpsi.push_back(H);
    }
    worst = std::max(worst, fitted_residual(Hpsi, psi));
  }
  return worst;
}

double ince_periodicity_residual(const InceSpec& spec, const JointSystem& system,
                                 const std::vector<double>& thetas) {
  // nu even -> pi-antiperiodic, nu odd -> pi-periodic.
  const double expected = (spec.nu() % 2 == 0) ? -1.0 : 1.0;
  const int e1 = spec.eps1(), e2 = spec.eps2();
  const double al = spec.alpha;
  double worst = 0.0;
  for (const auto& member : system.members) {
    const Polynomial& E = member.vector;
    auto psi = [&](double th) {
      const double u = std::cos(2.0 * th);
      return std::pow(std::sin(th), e1) * std::pow(std::cos(th), e2) * std::exp(al * u) * E(u);
    };
    double scale = 0.0;
    for (double th : thetas) scale = std::max(scale, std::abs(psi(th)));
    for (double th : thetas)
      worst = std::max(worst, std::abs(psi(th + M_PI) - expected * psi(th)) / scale);
  }
  return worst;
}

SexticSpec::SexticSpec(double ell_, int degree) : ell(ell_), n(degree) {
  if (!(ell > -1.0)) throw ConfigError("sextic: ell must be > -1");
  if (n < 0) throw ConfigError("sextic: degree must be >= 0");
}

InnerProductFamily SexticSpec::family(int n_max) const {
  std::vector<SingularFactor> sf{{0.0, ell + 0.5}};
  std::vector<IntervalMeasure> ms;
  ms.emplace_back(-kInf, 0.0, sf, 0.0, true);
  ms.emplace_back(0.0, kInf, sf, 0.0, true);
  return InnerProductFamily(std::move(ms), n_max < 0 ? n : n_max);
}

Eigen::MatrixXd sextic_matrix(const SexticSpec& spec) {
  const Polynomial q({0.0, -2.0});
  const Polynomial p({-2.0 * spec.ell - 3.0, 0.0, 2.0});
  const Polynomial cx = Polynomial::monomial(1, 2.0 * spec.n);
  auto image = [&](int s) {
    const Polynomial xs = Polynomial::monomial(s);
    return q * xs.differentiate().differentiate() + p * xs.differentiate() - cx * xs;
  };
  return operator_matrix(spec.n, spec.n + 1, image);
}

double sextic_check(const SexticSpec& spec, const JointSystem& system,
                    const std::vector<double>& rs) {
  const double l = spec.ell, nu = spec.nu();
  double worst = 0.0;
  for (const auto& member : system.members) {
    const Polynomial& E = member.vector;
    const Polynomial dE = E.differentiate(), ddE = dE.differentiate();
    std::vector<double> psi, Hpsi;
    for (double r : rs) {
      const double r2 = r * r;
      const double F = std::pow(r, l + 1.0) * std::exp(-0.25 * r2 * r2);
      const double h = (l + 1.0) / r - r2 * r;
      const double hp = -(l + 1.0) / r2 - 3.0 * r2;
      const double G = E(r2), Gp = 2.0 * r * dE(r2), Gpp = 2.0 * dE(r2) + 4.0 * r2 * ddE(r2);
      const double psiv = F * G;
      const double psipp = F * (hp + h * h) * G + 2.0 * F * h * Gp + F * Gpp;
      const double H = -psipp + (r2 * r2 * r2 - nu * r2 + l * (l + 1.0) / r2) * psiv;
      psi.push_back(psiv);
      Hpsi.push_back(H);
    }
    worst = std::max(worst, fitted_residual(Hpsi, psi));
  }
  return worst;
}

HeineStieltjesSpec::HeineStieltjesSpec(std::vector<double> nodes, std::vector<double> exponents,
                                       int degree)
    : e(std::move(nodes)), m(std::move(exponents)), n(degree) {
  if (e.size() < 3) throw ConfigError("heine-stieltjes: needs k+1 >= 3 nodes");
  if (m.size() != e.size()) throw ConfigError("heine-stieltjes: one exponent per node");
  for (size_t i = 0; i + 1 < e.size(); ++i)
    if (!(e[i] < e[i + 1])) throw ConfigError("heine-stieltjes: nodes must be strictly ordered");
  for (double mi : m)
    if (!(mi > 0.0)) throw ConfigError("heine-stieltjes: exponents must be positive");
  if (n < 0) throw ConfigError("heine-stieltjes: degree must be >= 0");
}

double HeineStieltjesSpec::exponent_sum() const {
  double s = 0.0;
  for (double mi : m) s += mi;
  return s;
}

InnerProductFamily HeineStieltjesSpec::family(int n_max) const {
  std::vector<SingularFactor> sf;
  for (size_t i = 0; i < e.size(); ++i) sf.push_back({e[i], m[i] - 1.0});
  std::vector<IntervalMeasure> ms;
  for (size_t j = 0; j + 1 < e.size(); ++j) ms.emplace_back(e[j], e[j + 1], sf);
  return InnerProductFamily(std::move(ms), n_max < 0 ? n : n_max);
}

Eigen::MatrixXd heine_stieltjes_opmatrix(const HeineStieltjesSpec& spec) {
  const Polynomial q = Polynomial::from_roots(spec.e);
  Polynomial pm;
  for (size_t j = 0; j < spec.e.size(); ++j) {
    std::vector<double> others;
    for (size_t i = 0; i < spec.e.size(); ++i)
      if (i != j) others.push_back(spec.e[i]);
    pm = pm + Polynomial::from_roots(others, spec.m[j]);
  }
  auto image = [&](int s) {
    const Polynomial xs = Polynomial::monomial(s);
    return q * xs.differentiate().differentiate() + pm * xs.differentiate();
  };
  return operator_matrix(spec.n, spec.n + spec.k(), image);
}

HeineStieltjesResult heine_stieltjes_solve(const HeineStieltjesSpec& spec,
                                           const SolveOptions& opt) {
  InnerProductFamily fam = spec.family();
  RectMEP mep = build(fam, spec.n);
  JointSystem sys = solve_newton(mep, fam, enumerate_seeds(fam, spec.n), opt);

  const Polynomial q = Polynomial::from_roots(spec.e);
  std::vector<Polynomial> qhat(spec.e.size());
  for (size_t j = 0; j < spec.e.size(); ++j) {
    std::vector<double> others;
    for (size_t i = 0; i < spec.e.size(); ++i)
      if (i != j) others.push_back(spec.e[i]);
    qhat[j] = Polynomial::from_roots(others);
  }

  HeineStieltjesResult out;
  out.max_division_remainder = 0.0;
  out.max_ode_residual = 0.0;
  for (const auto& member : sys.members) {
    const Polynomial& y = member.vector;
    Polynomial num = q * y.differentiate().differentiate();
    for (size_t j = 0; j < spec.e.size(); ++j)
      num = num + spec.m[j] * (qhat[j] * y.differentiate());
    num = -num;
    auto [V, rem] = num.divmod(y);
    const double rem_rel = rem.linf_norm() / std::max(num.linf_norm(), 1e-300);
    out.max_division_remainder = std::max(out.max_division_remainder, rem_rel);
    if (rem_rel > 1e-8)
      throw DivisionRemainder("heine_stieltjes_solve: eigenvector fails the ODE division");

    // ODE residual at Chebyshev samples inside every interval, away from the
    // singular endpoints.
    const Polynomial dy = y.differentiate(), ddy = dy.differentiate();
    std::vector<double> xs;
    for (size_t j = 0; j + 1 < spec.e.size(); ++j) {
      auto pts = chebyshev_samples(spec.e[j], spec.e[j + 1], 30, 1e-3);
      xs.insert(xs.end(), pts.begin(), pts.end());
    }
    double worst = 0.0;
    for (double x : xs) {
      double lhs = q(x) * ddy(x) + V(x) * y(x);
      double scale = std::abs(q(x) * ddy(x)) + std::abs(V(x) * y(x));
      for (size_t j = 0; j < spec.e.size(); ++j) {
        const double t = spec.m[j] * qhat[j](x) * dy(x);
        lhs += t;
        scale += std::abs(t);
      }
      worst = std::max(worst, std::abs(lhs) / std::max(scale, 1e-300));
    }
    out.max_ode_residual = std::max(out.max_ode_residual, worst);
    out.van_vleck.push_back(V);
  }
  out.system = std::move(sys);
  return out;
}

} // namespace jop

#include "jop/mep.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "jop/errors.hpp"

namespace jop {

long binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  long v = 1;
  for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
  return v;
}

double ray_angle(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd u = a.normalized(), w = b.normalized();
  if (u.dot(w) < 0.0) w = -w;
  const double d = 0.5 * (u - w).norm();
  return 2.0 * std::asin(std::min(1.0, d));
}

namespace {

Eigen::VectorXd normalize_lambda(Eigen::VectorXd lambda) {
  const double nrm = lambda.norm();
  if (!(nrm > 0.0)) throw DegenerateVector("lambda normalization: zero vector");
  lambda /= nrm;
  for (int i = 0; i < lambda.size(); ++i) {
    if (std::abs(lambda(i)) > 1e-14) {
      if (lambda(i) < 0.0) lambda = -lambda;
      break;
    }
  }
  return lambda;
}

double mep_residual(const RectMEP& mep, const Eigen::VectorXd& v, const Eigen::VectorXd& lambda) {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(mep.A[0].rows());
  for (int j = 0; j < mep.k; ++j) r += lambda(j) * (mep.A[static_cast<size_t>(j)] * v);
  double amax = 0.0;
  for (const auto& A : mep.A) amax = std::max(amax, A.norm());
  return r.norm() / (v.norm() * amax * std::max(lambda.norm(), 1e-300));
}

Eigen::VectorXd poly_to_vec(const Polynomial& p, int dim) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  for (int i = 0; i <= p.degree() && i < dim; ++i) v(i) = p.coeff(i);
  return v;
}

Polynomial vec_to_poly(const Eigen::VectorXd& v) {
  std::vector<double> c(static_cast<size_t>(v.size()));
  for (int i = 0; i < v.size(); ++i) c[static_cast<size_t>(i)] = v(i);
  return Polynomial(std::move(c));
}

JointSystem assemble(const InnerProductFamily& fam, std::vector<Eigenpair> members, int n) {
  for (auto& m : members) {
    m.signature = root_signature(fam, m.vector);
    if (m.residual > 1e-9)
      throw ConvergenceFailure("joint system: accepted pair residual above 1e-9");
  }
  canonical_sort(members);
  JointSystem sys;
  sys.n = n;
  sys.k = fam.k();
  sys.members = std::move(members);
  const int N = static_cast<int>(sys.members.size());
  sys.min_lambda_angle = M_PI / 2.0;
  for (int a = 0; a < N; ++a)
    for (int b = a + 1; b < N; ++b)
      sys.min_lambda_angle =
          std::min(sys.min_lambda_angle, ray_angle(sys.members[a].lambda, sys.members[b].lambda));
  sys.deleted_residuals.assign(static_cast<size_t>(fam.k()), Eigen::MatrixXd::Zero(N, N));
  sys.max_orthogonality_residual = 0.0;
  for (int j = 1; j <= fam.k(); ++j) {
    auto& R = sys.deleted_residuals[static_cast<size_t>(j - 1)];
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        if (a == b) continue;
        R(a, b) = deleted_residual(fam, j, sys.members[a].vector, sys.members[b].vector);
        sys.max_orthogonality_residual = std::max(sys.max_orthogonality_residual, R(a, b));
      }
  }
  return sys;
}

} // namespace

RectMEP build(const InnerProductFamily& fam, int n) {
  if (n < 0) throw ConfigError("build: n must be >= 0");
  if (n > fam.n_max()) throw InsufficientMoments("build: family does not support degree n");
  RectMEP mep;
  mep.k = fam.k();
  mep.n = n;
  mep.source = "family";
  const int rows = n + mep.k - 1, cols = n + 1;
  for (int j = 1; j <= mep.k; ++j) {
    const MomentTable& t = fam.table(j);
    if (rows + cols - 2 > t.max_order())
      throw InsufficientMoments("build: moment table too small");
    Eigen::MatrixXd A(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int s = 0; s < cols; ++s) A(i, s) = t(i + s);
    mep.A.push_back(std::move(A));
  }
  return mep;
}

JointSystem solve_k2(const RectMEP& mep, const InnerProductFamily& fam) {
  if (mep.k != 2) throw NotK2("solve_k2: requires k = 2");
  const int n = mep.n;
  const Eigen::MatrixXd& A1 = mep.A[0];
  const Eigen::MatrixXd& A2 = mep.A[1];
  Eigen::LLT<Eigen::MatrixXd> llt(A2);
  if (llt.info() != Eigen::Success)
    throw CholeskyFailure("solve_k2: A_2 is not positive definite (invalid measure?)");
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(A1, A2);
  if (ges.info() != Eigen::Success) throw CholeskyFailure("solve_k2: eigensolver failed");

  std::vector<Eigenpair> members;
  for (int i = 0; i <= n; ++i) {
    const double nu = ges.eigenvalues()(i);
    Eigen::VectorXd v = ges.eigenvectors().col(i);
    if (std::abs(v(n)) < 1e-12 * v.norm())
      throw ConvergenceFailure("solve_k2: eigenvector of degree < n");
    v /= v(n); // monic
    Eigenpair p;
    p.vector = vec_to_poly(v);
    p.lambda = normalize_lambda((Eigen::VectorXd(2) << 1.0, -nu).finished());
    p.residual = mep_residual(mep, v, p.lambda);
    members.push_back(std::move(p));
  }
  return assemble(fam, std::move(members), n);
}

Eigen::VectorXd eigenvalue_formula(const InnerProductFamily& fam, const Polynomial& v) {
  const int k = fam.k();
  Eigen::VectorXd mu(k);
  for (int j = 1; j <= k; ++j)
    mu(j - 1) = ((j % 2 == 1) ? 1.0 : -1.0) * deleted_form(fam, j, v, v);
  if (!(mu.norm() > 0.0))
    throw DegenerateVector("eigenvalue_formula: all deleted forms vanish");
  return normalize_lambda(mu);
}

std::pair<Polynomial, Eigen::VectorXd> seed_from_distribution(const InnerProductFamily& fam,
                                                              int n,
                                                              const std::vector<int>& counts) {
  if (static_cast<int>(counts.size()) != fam.k())
    throw ConfigError("seed_from_distribution: counts size != k");
  int total = 0;
  for (int c : counts) total += c;
  if (total != n) throw ConfigError("seed_from_distribution: counts must sum to n");
  std::vector<double> roots;
  for (int j = 1; j <= fam.k(); ++j) {
    const int c = counts[static_cast<size_t>(j - 1)];
    if (c == 0) continue;
    const IntervalMeasure& mu = fam.table(j).measure();
    double lo = mu.lower(), hi = mu.upper();
    if (std::isfinite(lo) && !std::isfinite(hi)) {
      hi = lo + 3.0;
    } else if (!std::isfinite(lo) && std::isfinite(hi)) {
      lo = hi - 3.0;
    } else if (!std::isfinite(lo) && !std::isfinite(hi)) {
      // mass concentrated around the origin: use the windows (-2,-.5)/(.5,2)
      const int left = (c + 1) / 2, right = c - left;
      for (int i = 0; i < left; ++i) roots.push_back(-2.0 + 1.5 * (i + 1) / (left + 1));
      for (int i = 0; i < right; ++i) roots.push_back(0.5 + 1.5 * (i + 1) / (right + 1));
      continue;
    }
    for (int i = 0; i < c; ++i) roots.push_back(lo + (hi - lo) * (i + 1) / (c + 1));
  }
  Polynomial v = Polynomial::from_roots(roots, 1.0);
  return {v, eigenvalue_formula(fam, v)};
}

std::vector<std::pair<Polynomial, Eigen::VectorXd>> enumerate_seeds(const InnerProductFamily& fam,
                                                                    int n) {
  std::vector<std::pair<Polynomial, Eigen::VectorXd>> seeds;
  std::vector<int> counts(static_cast<size_t>(fam.k()), 0);
  // lexicographic enumeration of compositions of n into k parts
  auto rec = [&](auto&& self, int pos, int rem) -> void {
    if (pos == fam.k() - 1) {
      counts[static_cast<size_t>(pos)] = rem;
      seeds.push_back(seed_from_distribution(fam, n, counts));
      return;
    }
    for (int c = 0; c <= rem; ++c) {
      counts[static_cast<size_t>(pos)] = c;
      self(self, pos + 1, rem - c);
    }
  };
  rec(rec, 0, n);
  return seeds;
}

namespace {

struct NewtonResult {
  bool converged = false;
  Eigen::VectorXd v;
  Eigen::VectorXd lambda;
  double residual = kInf;
};

NewtonResult newton_solve_one(const RectMEP& mep, const Eigen::VectorXd& v0,
                              const Eigen::VectorXd& lambda0, const Eigen::VectorXd& cv,
                              const Eigen::VectorXd& cl, const SolveOptions& opt) {
  const int k = mep.k, dimv = mep.n + 1, rows = mep.n + k - 1;
  const int dim = dimv + k;
  NewtonResult out;

  const double pv = cv.dot(v0), pl = cl.dot(lambda0);
  if (std::abs(pv) < 1e-8 * v0.norm() || std::abs(pl) < 1e-8 * lambda0.norm()) return out;
  Eigen::VectorXd v = v0 / pv, lambda = lambda0 / pl;

  auto eval_F = [&](const Eigen::VectorXd& vv, const Eigen::VectorXd& ll) {
    Eigen::VectorXd F(rows + 2);
    Eigen::VectorXd top = Eigen::VectorXd::Zero(rows);
    for (int j = 0; j < k; ++j) top += ll(j) * (mep.A[static_cast<size_t>(j)] * vv);
    F.head(rows) = top;
    F(rows) = cv.dot(vv) - 1.0;
    F(rows + 1) = cl.dot(ll) - 1.0;
    return F;
  };

  Eigen::VectorXd F = eval_F(v, lambda);
  for (int it = 0; it < opt.max_newton_iters; ++it) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(rows + 2, dim);
    for (int j = 0; j < k; ++j) {
      J.topLeftCorner(rows, dimv) += lambda(j) * mep.A[static_cast<size_t>(j)];
      J.block(0, dimv + j, rows, 1) = mep.A[static_cast<size_t>(j)] * v;
    }
    J.block(rows, 0, 1, dimv) = cv.transpose();
    J.block(rows + 1, dimv, 1, k) = cl.transpose();
    Eigen::VectorXd step = J.colPivHouseholderQr().solve(-F);

    // damped update: halve until the residual norm decreases
    double alpha = 1.0;
    Eigen::VectorXd vn, ln, Fn;
    bool ok = false;
    for (int h = 0; h < 25; ++h) {
      vn = v + alpha * step.head(dimv);
      ln = lambda + alpha * step.tail(k);
      Fn = eval_F(vn, ln);
      if (Fn.norm() <= (1.0 - 1e-4 * alpha) * F.norm() || F.norm() < 1e-15) {
        ok = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!ok) break;
    v = vn;
    lambda = ln;
    F = Fn;
    if (v.norm() < 1e-300 || lambda.norm() < 1e-300) return out;
    const double res = mep_residual(mep, v, lambda);
    if (res < 1e-14) break;
  }
  const double res = mep_residual(mep, v, lambda);
  if (res <= opt.accept_residual) {
    out.converged = true;
    out.v = v;
    out.lambda = lambda;
    out.residual = res;
  }
  return out;
}

} // namespace

JointSystem solve_newton(const RectMEP& mep, const InnerProductFamily& fam,
                         const std::vector<std::pair<Polynomial, Eigen::VectorXd>>& seeds,
                         const SolveOptions& opt) {
  const int k = mep.k, n = mep.n, dimv = n + 1;
  const long N = binomial(n + k - 1, k - 1);
  std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ull);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto draw = [&](int d) {
    Eigen::VectorXd c(d);
    for (int i = 0; i < d; ++i) c(i) = gauss(rng);
    return c.normalized().eval();
  };
  // Fixed random affine normalizations, drawn once per run.
  Eigen::VectorXd cv = draw(dimv), cl = draw(k);

  struct Hit {
    Eigen::VectorXd v, lambda;
    double residual;
  };
  std::vector<Hit> hits;
  for (const auto& [pv, pl] : seeds) {
    Eigen::VectorXd v0 = poly_to_vec(pv, dimv);
    NewtonResult r = newton_solve_one(mep, v0, pl, cv, cl, opt);
    for (int retry = 0; retry < 3 && !r.converged; ++retry)
      r = newton_solve_one(mep, v0, pl, draw(dimv), draw(k), opt);
    if (r.converged) hits.push_back({r.v, r.lambda, r.residual});
  }

  // Deduplicate by lambda-ray angle.
  std::vector<Hit> kept;
  for (const auto& h : hits) {
    bool dup = false;
    for (auto& g : kept) {
      if (ray_angle(h.lambda, g.lambda) < opt.dedup_angle) {
        dup = true;
        if (h.residual < g.residual) g = h;
        break;
      }
    }
    if (!dup) kept.push_back(h);
  }
  if (static_cast<long>(kept.size()) < N)
    throw IncompleteSystem("solve_newton: " + std::to_string(kept.size()) + " of " +
                           std::to_string(N) + " distinct pairs found");
  if (static_cast<long>(kept.size()) > N)
    throw Error("solve_newton: more distinct pairs than the predicted count");

  std::vector<Eigenpair> members;
  for (const auto& h : kept) {
    Eigen::VectorXd v = h.v;
    if (std::abs(v(dimv - 1)) < 1e-12 * v.norm())
      throw ConvergenceFailure("solve_newton: eigenvector of degree < n");
    v /= v(dimv - 1);
    Eigenpair p;
    p.vector = vec_to_poly(v);
    p.lambda = normalize_lambda(h.lambda);
    p.residual = mep_residual(mep, v, p.lambda);
    members.push_back(std::move(p));
  }
  return assemble(fam, std::move(members), n);
}

JointSystem solve_joint_system(const InnerProductFamily& fam, int n, const SolveOptions& opt) {
  RectMEP mep = build(fam, n);
  if (fam.k() == 2) return solve_k2(mep, fam);
  return solve_newton(mep, fam, enumerate_seeds(fam, n), opt);
}

JointSystem system_from_vectors(const InnerProductFamily& fam, int n,
                                const std::vector<Polynomial>& vectors) {
  RectMEP mep = build(fam, n);
  std::vector<Eigenpair> members;
  for (const Polynomial& p : vectors) {
    if (p.degree() != n) throw ConfigError("system_from_vectors: vector of wrong degree");
    Eigenpair pair;
    pair.vector = p.monic();
    pair.lambda = eigenvalue_formula(fam, pair.vector);
    pair.residual = mep_residual(mep, poly_to_vec(pair.vector, n + 1), pair.lambda);
    members.push_back(std::move(pair));
  }
  return assemble(fam, std::move(members), n);
}

BandedTemplate appendix_b_build(int n, int k) {
  if (n < 0 || k < 2) throw ConfigError("appendix_b_build: need n >= 0, k >= 2");
  BandedTemplate t;
  t.n = n;
  t.k = k;
  const int rows = n + k - 1, cols = n + 1;
  for (int i = 1; i <= k; ++i) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
    for (int j = 0; j < rows; ++j) {
      const int c = j + 1 - i;
      if (c >= 0 && c < cols) A(j, c) = 1.0;
    }
    if (i == k) A(0, cols - 1) = 1.0; // wrap entry
    t.A.push_back(std::move(A));
  }
  return t;
}

BandedTemplate symmetrize_columns(const BandedTemplate& t) {
  BandedTemplate s = t;
  for (auto& A : s.A) A = A.rowwise().reverse().eval();
  return s;
}

ClosedFormPair appendix_b_closed_form(int n, int k, const std::vector<int>& choice) {
  const int kappa = k - 1, order = n + kappa;
  if (static_cast<int>(choice.size()) != kappa)
    throw ConfigError("appendix_b_closed_form: choice must have k-1 elements");
  {
    std::vector<int> sorted = choice;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw DuplicateRoots("appendix_b_closed_form: repeated root of unity");
    for (int c : sorted)
      if (c < 0 || c >= order) throw ConfigError("appendix_b_closed_form: choice index out of range");
  }
  using C = std::complex<double>;
  std::vector<C> zeta(static_cast<size_t>(kappa));
  for (int i = 0; i < kappa; ++i) {
    const double th = 2.0 * M_PI * choice[static_cast<size_t>(i)] / order;
    zeta[static_cast<size_t>(i)] = {std::cos(th), std::sin(th)};
  }

  // lambda_j = coefficient of x^{k-j} in prod (x - zeta_i); lambda_1 = 1.
  std::vector<C> poly{1.0};
  for (const C& z : zeta) {
    poly.push_back(0.0);
    for (size_t i = poly.size() - 1; i > 0; --i) poly[i] = poly[i - 1] - z * poly[i];
    poly[0] *= -z;
  }
  Eigen::VectorXcd lambda(k);
  for (int j = 1; j <= k; ++j) lambda(j - 1) = poly[static_cast<size_t>(k - j)];

  // Cofactors p_i of the conjugate-Vandermonde block (rows zbar^0..zbar^{kappa-2}).
  Eigen::VectorXcd p(kappa);
  if (kappa == 1) {
    p(0) = 1.0;
  } else {
    Eigen::MatrixXcd V(kappa - 1, kappa);
    for (int m = 0; m < kappa - 1; ++m)
      for (int i = 0; i < kappa; ++i)
        V(m, i) = std::pow(std::conj(zeta[static_cast<size_t>(i)]), m);
    for (int i = 0; i < kappa; ++i) {
      Eigen::MatrixXcd sub(kappa - 1, kappa - 1);
      int col = 0;
      for (int c = 0; c < kappa; ++c) {
        if (c == i) continue;
        sub.col(col++) = V.col(c);
      }
      const double sgn = ((kappa - 1 + i) % 2 == 0) ? 1.0 : -1.0; // expansion along the last row
      p(i) = sgn * sub.determinant();
    }
  }

  Eigen::VectorXcd v(n + 1);
  for (int j = 0; j <= n; ++j) {
    C s = 0.0;
    for (int i = 0; i < kappa; ++i) s += p(i) * std::pow(zeta[static_cast<size_t>(i)], j + 1);
    v(j) = s;
  }

  ClosedFormPair out;
  out.lambda = lambda;
  out.vector = v;
  out.choice = choice;

  BandedTemplate t = appendix_b_build(n, k);
  Eigen::VectorXcd r = Eigen::VectorXcd::Zero(n + k - 1);
  double amax = 0.0;
  for (int i = 0; i < k; ++i) {
    r += lambda(i) * (t.A[static_cast<size_t>(i)] * v);
    amax = std::max(amax, t.A[static_cast<size_t>(i)].norm());
  }
  out.residual = r.norm() / (lambda.norm() * v.norm() * amax);

  // Realify: conjugation-closed choices give real lambda and a vector
  // collinear with a real one.
  const bool lambda_real = lambda.imag().cwiseAbs().maxCoeff() < 1e-9 * lambda.norm();
  int imax = 0;
  double best = -1.0;
  for (int j = 0; j <= n; ++j)
    if (std::abs(v(j)) > best) {
      best = std::abs(v(j));
      imax = j;
    }
  Eigen::VectorXcd u = v / v(imax);
  const bool vector_real = u.imag().cwiseAbs().maxCoeff() < 1e-9 * u.norm();
  if (lambda_real && vector_real) {
    out.real = true;
    out.lambda_real = normalize_lambda(lambda.real());
    Eigen::VectorXd vr = u.real();
    if (std::abs(vr(n)) > 1e-12 * vr.norm()) vr /= vr(n); // monic when degree is full
    out.vector_real = vr;
  }
  return out;
}

std::vector<ClosedFormPair> appendix_b_enumerate(int n, int k) {
  const int kappa = k - 1, order = n + kappa;
  std::vector<ClosedFormPair> out;
  std::vector<int> choice(static_cast<size_t>(kappa));
  auto rec = [&](auto&& self, int pos, int start) -> void {
    if (pos == kappa) {
      out.push_back(appendix_b_closed_form(n, k, choice));
      return;
    }
    for (int c = start; c < order; ++c) {
      choice[static_cast<size_t>(pos)] = c;
      self(self, pos + 1, c + 1);
    }
  };
  rec(rec, 0, 0);
  return out;
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd> m_matrix_minors(const InnerProductFamily& fam,
                                                            const Polynomial& u,
                                                            const Polynomial& v) {
  const int k = fam.k();
  Eigen::MatrixXd M(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 1; j <= k; ++j) M(i, j - 1) = fam.ip(j, u, v, i);
  Eigen::VectorXd minors(k);
  for (int j = 1; j <= k; ++j) {
    Eigen::MatrixXd sub(k - 1, k - 1);
    int col = 0;
    for (int c = 0; c < k; ++c) {
      if (c == j - 1) continue;
      sub.col(col++) = M.col(c).head(k - 1);
    }
    minors(j - 1) = sub.determinant();
  }
  return {M, minors};
}

std::vector<int> root_signature(const InnerProductFamily& fam, const Polynomial& v) {
  const int k = fam.k();
  std::vector<int> sig(static_cast<size_t>(k), 0);
  if (v.degree() < 1) return sig;
  // zone boundaries: midpoints of the gaps between consecutive intervals
  std::vector<double> cuts;
  for (int j = 1; j < k; ++j) {
    const double hi = fam.table(j).measure().upper();
    const double lo = fam.table(j + 1).measure().lower();
    cuts.push_back(0.5 * (hi + lo));
  }
  for (const PolyRoot& r : v.roots()) {
    if (r.im != 0.0) continue;
    int zone = 0;
    while (zone < k - 1 && r.re > cuts[static_cast<size_t>(zone)]) ++zone;
    sig[static_cast<size_t>(zone)] += r.multiplicity;
  }
  return sig;
}

void canonical_sort(std::vector<Eigenpair>& members) {
  std::sort(members.begin(), members.end(), [](const Eigenpair& a, const Eigenpair& b) {
    if (a.signature != b.signature) return a.signature < b.signature;
    return a.vector.coeffs() < b.vector.coeffs();
  });
}

} // namespace jop

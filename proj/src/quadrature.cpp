#include "jop/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace jop {

QuadRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offsq) {
  const int q = static_cast<int>(diag.size());
  Eigen::VectorXd sub(q > 1 ? q - 1 : 0);
  for (int i = 1; i < q; ++i) sub(i - 1) = std::sqrt(offsq(i));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw std::runtime_error("golub_welsch: eigensolver failed");
  QuadRule r;
  r.nodes = es.eigenvalues();
  r.weights.resize(q);
  const double mu0 = offsq(0);
  for (int i = 0; i < q; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    r.weights(i) = mu0 * v0 * v0;
  }
  return r;
}

QuadRule gauss_jacobi(int q, double alpha, double beta) {
  if (q < 1) throw std::invalid_argument("gauss_jacobi: q must be >= 1");
  if (alpha <= -1.0 || beta <= -1.0) throw std::invalid_argument("gauss_jacobi: exponents must be > -1");
  const double ab = alpha + beta;
  Eigen::VectorXd a(q), b(q);
  a(0) = (beta - alpha) / (ab + 2.0);
  // mu0 = 2^(a+b+1) B(a+1, b+1)
  b(0) = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                  std::lgamma(ab + 2.0));
  for (int n = 1; n < q; ++n) {
    const double nab = 2.0 * n + ab;
    a(n) = (beta * beta - alpha * alpha) / (nab * (nab + 2.0));
    if (n == 1)
      b(n) = 4.0 * (alpha + 1.0) * (beta + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
    else
      b(n) = 4.0 * n * (n + alpha) * (n + beta) * (n + ab) / (nab * nab * (nab + 1.0) * (nab - 1.0));
  }
  return golub_welsch(a, b);
}

QuadRule gauss_legendre(int q) { return gauss_jacobi(q, 0.0, 0.0); }

QuadRule gauss_laguerre(int q, double alpha) {
  if (q < 1) throw std::invalid_argument("gauss_laguerre: q must be >= 1");
  if (alpha <= -1.0) throw std::invalid_argument("gauss_laguerre: exponent must be > -1");
  Eigen::VectorXd a(q), b(q);
  for (int n = 0; n < q; ++n) a(n) = 2.0 * n + alpha + 1.0;
  b(0) = std::exp(std::lgamma(alpha + 1.0));
  for (int n = 1; n < q; ++n) b(n) = n * (n + alpha);
  return golub_welsch(a, b);
}

QuadRule gauss_hermite(int q) {
  if (q < 1) throw std::invalid_argument("gauss_hermite: q must be >= 1");
  Eigen::VectorXd a = Eigen::VectorXd::Zero(q), b(q);
  b(0) = std::sqrt(M_PI);
  for (int n = 1; n < q; ++n) b(n) = 0.5 * n;
  return golub_welsch(a, b);
}

} // namespace jop

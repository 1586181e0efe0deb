#pragma once

#include <Eigen/Dense>

namespace jop {

/// Nodes and weights of a positive quadrature rule. The meaning of the nodes
/// (reference interval or mapped coordinates) is up to the producer.
struct QuadRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

/// Gauss rule from a three-term recurrence (Golub-Welsch): `diag` holds the
/// recurrence alphas, `offsq` the betas (offsq[0] = mu0, the weight's total
/// mass; offsq[i>=1] enter as sqrt on the off-diagonal).
QuadRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offsq);

/// q-point Gauss-Jacobi rule on (-1, 1) for the weight (1-x)^alpha (1+x)^beta,
/// alpha, beta > -1.
QuadRule gauss_jacobi(int q, double alpha, double beta);

/// q-point Gauss-Legendre rule on (-1, 1).
QuadRule gauss_legendre(int q);

/// q-point generalized Gauss-Laguerre rule on (0, inf) for x^alpha e^{-x}.
QuadRule gauss_laguerre(int q, double alpha);

/// q-point Gauss-Hermite rule on (-inf, inf) for e^{-x^2}.
QuadRule gauss_hermite(int q);

} // namespace jop

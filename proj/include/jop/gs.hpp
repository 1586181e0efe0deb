#pragma once

#include <Eigen/Dense>
#include <vector>

#include "jop/mep.hpp"

namespace jop {

/// Degree-by-degree record of the rank 1 Gram-Schmidt run: the per-degree
/// joint systems and, for each degree n >= 1, the matrix of scale-normalized
/// rank-one forms against the degree n-1 system.
struct GSLedger {
  std::vector<JointSystem> systems;        // index = degree
  std::vector<Eigen::MatrixXd> residuals;  // residuals[n-1]: candidates x previous
  double max_residual = 0.0;               // over all degrees and entries
  double max_refine_shift = 0.0;           // largest coefficient move in gs_refine
};

/// Matrix of rank_one_form(candidate, E_{n-1,alpha}), Cauchy-Schwarz
/// normalized. `previous` must hold C(n+k-2, k-1) members.
Eigen::MatrixXd gs_residuals(const InnerProductFamily& fam,
                             const std::vector<Polynomial>& candidates,
                             const JointSystem& previous);

/// Gauss-Newton refinement of a monic degree-n candidate solving the
/// homogeneous system rank_one_form(v, E_{n-1,alpha}) = 0. The candidate must
/// lie in the Newton basin (e.g. a solver output or a root-distribution
/// seed).
Polynomial gs_refine(const InnerProductFamily& fam, const Polynomial& candidate,
                     const JointSystem& previous, int max_iters = 50);

/// Run the degree-by-degree construction up to n_max. Candidates come from
/// the multiparameter solver and are certified against the Gram-Schmidt
/// equations.
GSLedger gs_drive(const InnerProductFamily& fam, int n_max, const SolveOptions& opt = {});

/// The three-dimensional counterexample with Gram entries
/// <e1,e1> = <e3,e3> = 1, <e2,e2> = lambda, <e1,e3> = -eps^2, others 0,
/// on the basis e1 = x1 x2, e2 = x1 + x2, e3 = 1.
struct ToyReport {
  double epsilon = 0.0;
  double lambda = 0.0;
  int rank_one_count = 0;                  // directions in the complement of e3
  std::vector<Eigen::Vector3d> directions; // coordinates in (e1, e2, e3)
  double mutual_inner = 0.0;               // normalized, when two directions exist
  double criterion = 0.0;                  // 1 - eps^4 - lambda eps^2
  bool orthogonal = false;
};

ToyReport toy_example(double epsilon, double lambda);

} // namespace jop

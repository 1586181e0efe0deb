#pragma once

#include <Eigen/Dense>
#include <limits>
#include <string>
#include <vector>

#include "jop/poly.hpp"
#include "jop/quadrature.hpp"

namespace jop {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// One factor |x - location|^exponent of a weight, exponent > -1.
struct SingularFactor {
  double location = 0.0;
  double exponent = 0.0;
};

/// A weighted interval (I, w) with
///   w(x) = prod_i |x - e_i|^{q_i} * exp(c x) * [exp(-x^2/2)] * smooth(x).
///
/// Singular locations must sit at an endpoint of the interval or outside its
/// closure; unbounded ends require the exponential or Gaussian factor so that
/// all moments exist. Immutable after construction.
class IntervalMeasure {
public:
  IntervalMeasure(double lower, double upper, std::vector<SingularFactor> singular = {},
                  double exp_linear = 0.0, bool exp_gauss = false,
                  Polynomial smooth = Polynomial::one());

  double lower() const { return lower_; }
  double upper() const { return upper_; }
  const std::vector<SingularFactor>& singular_factors() const { return singular_; }
  double exp_linear() const { return exp_linear_; }
  bool exp_gauss() const { return exp_gauss_; }
  const Polynomial& smooth_factor() const { return smooth_; }

  bool bounded() const { return std::isfinite(lower_) && std::isfinite(upper_); }
  /// Weight value at an interior point.
  double weight(double x) const;
  /// Sum of singular exponents attached to the given endpoint value.
  double endpoint_exponent(double endpoint) const;
  /// Key identifying the measure for the moment cache.
  std::string cache_key() const;

private:
  void validate() const;
  double lower_, upper_;
  std::vector<SingularFactor> singular_;
  double exp_linear_;
  bool exp_gauss_;
  Polynomial smooth_;
};

/// Moments m(s) = int x^s w(x) dx for s = 0..S, with a certified relative
/// accuracy obtained by doubling the quadrature order until stable.
class MomentTable {
public:
  MomentTable(IntervalMeasure measure, std::vector<double> moments, double certified_rel_err);

  const IntervalMeasure& measure() const { return measure_; }
  int max_order() const { return static_cast<int>(m_.size()) - 1; }
  double operator()(int s) const;
  const std::vector<double>& values() const { return m_; }
  double certified_rel_err() const { return cert_; }

private:
  IntervalMeasure measure_;
  std::vector<double> m_;
  double cert_;
};

/// Compute the moment table of a measure up to order S.
/// Throws NonIntegrable on invalid measures and ConvergenceFailure when the
/// doubling cap is reached with relative changes above 1e-9.
MomentTable moments(const IntervalMeasure& measure, int count);

/// Same as moments(), backed by a process-wide synchronized insert-once cache.
MomentTable cached_moments(const IntervalMeasure& measure, int count);

/// <p, q> = sum_{a,b} p_a q_b m(a+b). Throws InsufficientMoments if
/// deg p + deg q exceeds the table order.
double inner_product(const MomentTable& mt, const Polynomial& p, const Polynomial& q);

/// Hankel matrix with entry (i, s) = m(i + s), i = 0..rows-1, s = 0..cols-1.
Eigen::MatrixXd gram_matrix(const MomentTable& mt, int rows, int cols);

/// Quadrature rule in x-coordinates with the full weight folded into the
/// weights: sum_i W_i f(x_i) ~ int f w dx for smooth f. Used by the direct
/// multi-dimensional oracle; `q` controls the base order.
QuadRule measure_rule(const IntervalMeasure& measure, int q);

} // namespace jop

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "jop/errors.hpp"

namespace jop {

/// One root of a real polynomial, with its cluster multiplicity.
struct PolyRoot {
  double re = 0.0;
  double im = 0.0;
  int multiplicity = 1;
};

/// Dense univariate real polynomial in the monomial basis.
///
/// Coefficient s is the coefficient of x^s. The representation is canonical:
/// trailing zero coefficients are trimmed, and the zero polynomial is stored
/// as an empty coefficient vector (degree() == -1).
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);
  /// Constant polynomial.
  explicit Polynomial(double c);

  static Polynomial zero() { return Polynomial{}; }
  static Polynomial one() { return Polynomial{1.0}; }
  /// c * x^deg
  static Polynomial monomial(int deg, double c = 1.0);
  /// scale * prod_i (x - roots[i]), expanded.
  static Polynomial from_roots(std::span<const double> roots, double scale = 1.0);

  const std::vector<double>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  /// Coefficient of x^i (0 beyond the stored degree).
  double coeff(int i) const;
  double leading_coeff() const { return c_.empty() ? 0.0 : c_.back(); }

  /// Horner evaluation.
  double operator()(double x) const;
  std::complex<double> operator()(std::complex<double> x) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const { return scaled(-1.0); }
  Polynomial scaled(double s) const;
  Polynomial differentiate() const;
  /// Divide by the leading coefficient. Throws ZeroPolynomial on the zero polynomial.
  Polynomial monic() const;
  /// Euclidean division: *this = q * d + r with deg r < deg d.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;

  double l2_norm() const;
  double linf_norm() const;

  /// All complex roots via companion-matrix eigenvalues plus Newton polish,
  /// clustered into multiplicities. Throws ZeroPolynomial on the zero
  /// polynomial; a constant has no roots.
  std::vector<PolyRoot> roots() const;
  /// Real roots only (|Im| below the clustering tolerance), each repeated by
  /// multiplicity.
  std::vector<double> real_roots() const;

  bool operator==(const Polynomial& o) const { return c_ == o.c_; }

private:
  void trim();
  std::vector<double> c_;
};

inline Polynomial operator*(double s, const Polynomial& p) { return p.scaled(s); }

} // namespace jop

#include "jop/poly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace jop {

namespace {
// Clustering tolerance for root multiplicities, absolute, applied after the
// Newton polish. Companion eigenvalues at the degrees used here (<= ~40) are
// accurate well past this.
constexpr double kRootClusterTol = 1e-7;
} // namespace

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(double c) : c_{c} { trim(); }

Polynomial Polynomial::monomial(int deg, double c) {
  std::vector<double> v(static_cast<size_t>(deg) + 1, 0.0);
  v.back() = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::from_roots(std::span<const double> roots, double scale) {
  std::vector<double> c{scale};
  for (double r : roots) {
    // multiply by (x - r)
    c.push_back(0.0);
    for (size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - r * c[i];
    c[0] *= -r;
  }
  return Polynomial(std::move(c));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double Polynomial::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0.0;
  return c_[static_cast<size_t>(i)];
}

double Polynomial::operator()(double x) const {
  double v = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
  return v;
}

std::complex<double> Polynomial::operator()(std::complex<double> x) const {
  std::complex<double> v = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
  return v;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return zero();
  std::vector<double> r(c_.size() + o.c_.size() - 1, 0.0);
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::scaled(double s) const {
  std::vector<double> r = c_;
  for (double& v : r) v *= s;
  return Polynomial(std::move(r));
}

Polynomial Polynomial::differentiate() const {
  if (c_.size() <= 1) return zero();
  std::vector<double> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = static_cast<double>(i) * c_[i];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) throw ZeroPolynomial("cannot normalize the zero polynomial");
  return scaled(1.0 / c_.back());
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
  if (d.is_zero()) throw ZeroPolynomial("division by the zero polynomial");
  if (degree() < d.degree()) return {zero(), *this};
  std::vector<double> rem = c_;
  std::vector<double> quot(static_cast<size_t>(degree() - d.degree()) + 1, 0.0);
  const double lead = d.c_.back();
  for (int i = degree(); i >= d.degree(); --i) {
    double f = rem[static_cast<size_t>(i)] / lead;
    quot[static_cast<size_t>(i - d.degree())] = f;
    for (int j = 0; j <= d.degree(); ++j)
      rem[static_cast<size_t>(i - d.degree() + j)] -= f * d.c_[static_cast<size_t>(j)];
  }
  rem.resize(static_cast<size_t>(std::max(d.degree(), 0)));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

double Polynomial::l2_norm() const {
  double s = 0.0;
  for (double v : c_) s += v * v;
  return std::sqrt(s);
}

double Polynomial::linf_norm() const {
  double s = 0.0;
  for (double v : c_) s = std::max(s, std::abs(v));
  return s;
}

std::vector<PolyRoot> Polynomial::roots() const {
  if (is_zero()) throw ZeroPolynomial("roots of the zero polynomial");
  const int n = degree();
  if (n == 0) return {};

  // Companion matrix of the monic normalization.
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  const double lead = c_.back();
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c_[static_cast<size_t>(i)] / lead;
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
  std::vector<std::complex<double>> zs(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) zs[static_cast<size_t>(i)] = es.eigenvalues()(i);

  // Newton polish on p/p' (simple-rooted), which also converges quadratically
  // at multiple roots so the eigenvalue cloud collapses into clusters.
  const Polynomial dp = differentiate();
  const Polynomial ddp = dp.differentiate();
  for (auto& z : zs) {
    for (int it = 0; it < 12; ++it) {
      const std::complex<double> f = (*this)(z);
      const std::complex<double> df = dp(z);
      const std::complex<double> denom = df * df - f * ddp(z);
      std::complex<double> step;
      if (std::abs(denom) > 1e-30 * (1.0 + std::abs(df) * std::abs(df)))
        step = f * df / denom;
      else if (std::abs(df) > 1e-30)
        step = f / df;
      else
        break;
      z -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
    }
    if (std::abs(z.imag()) < kRootClusterTol) z = {z.real(), 0.0};
  }

  std::sort(zs.begin(), zs.end(), [](auto a, auto b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });

  std::vector<PolyRoot> out;
  size_t i = 0;
  while (i < zs.size()) {
    size_t j = i + 1;
    std::complex<double> sum = zs[i];
    while (j < zs.size() && std::abs(zs[j] - zs[j - 1]) < kRootClusterTol) {
      sum += zs[j];
      ++j;
    }
    std::complex<double> mean = sum / static_cast<double>(j - i);
    if (std::abs(mean.imag()) < kRootClusterTol) mean = {mean.real(), 0.0};
    out.push_back({mean.real(), mean.imag(), static_cast<int>(j - i)});
    i = j;
  }
  return out;
}

std::vector<double> Polynomial::real_roots() const {
  std::vector<double> out;
  for (const PolyRoot& r : roots())
    if (r.im == 0.0)
      for (int m = 0; m < r.multiplicity; ++m) out.push_back(r.re);
  return out;
}

} // namespace jop

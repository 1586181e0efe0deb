#include "jop/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "jop/errors.hpp"

namespace jop {

namespace {

constexpr double kCertTarget = 1e-13;  // doubling stops below this change
constexpr double kCertHardFail = 1e-9; // beyond this at the cap -> failure
constexpr int kMaxOrder = 1 << 11;
// Truncation point for Gaussian tails; exp(-18^2/2) ~ 1e-70 dominates any
// polynomial growth at the orders used here.
constexpr double kGaussCut = 18.0;

bool near(double a, double b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(b)); }

} // namespace

IntervalMeasure::IntervalMeasure(double lower, double upper, std::vector<SingularFactor> singular,
                                 double exp_linear, bool exp_gauss, Polynomial smooth)
    : lower_(lower), upper_(upper), singular_(std::move(singular)), exp_linear_(exp_linear),
      exp_gauss_(exp_gauss), smooth_(std::move(smooth)) {
  validate();
}

void IntervalMeasure::validate() const {
  if (!(lower_ < upper_)) throw NonIntegrable("measure: requires lower < upper");
  if (std::isnan(lower_) || std::isnan(upper_)) throw NonIntegrable("measure: NaN endpoint");
  for (const auto& f : singular_) {
    if (!(f.exponent > -1.0))
      throw NonIntegrable("measure: singular exponent must be > -1 for integrability");
    if (!std::isfinite(f.location)) throw NonIntegrable("measure: singular location must be finite");
    const bool at_lo = std::isfinite(lower_) && near(f.location, lower_);
    const bool at_hi = std::isfinite(upper_) && near(f.location, upper_);
    const bool outside = f.location < lower_ || f.location > upper_;
    if (!at_lo && !at_hi && !outside)
      throw NonIntegrable("measure: singular location interior to the interval");
  }
  if (upper_ == kInf && !(exp_gauss_ || exp_linear_ < 0.0))
    throw NonIntegrable("measure: unbounded above needs exp_linear < 0 or the Gaussian factor");
  if (lower_ == -kInf && !(exp_gauss_ || exp_linear_ > 0.0))
    throw NonIntegrable("measure: unbounded below needs exp_linear > 0 or the Gaussian factor");
  if (smooth_.is_zero()) throw NonIntegrable("measure: smooth factor is identically zero");
  // Positivity of the smooth factor on the open interval: no interior real
  // roots, positive at a sample point.
  if (smooth_.degree() >= 1) {
    for (const PolyRoot& r : smooth_.roots()) {
      if (r.im != 0.0) continue;
      if (r.re > lower_ + 1e-12 && r.re < upper_ - 1e-12)
        throw NonIntegrable("measure: smooth factor vanishes inside the interval");
    }
  }
  double sample;
  if (bounded())
    sample = 0.5 * (lower_ + upper_);
  else if (std::isfinite(lower_))
    sample = lower_ + 1.0;
  else if (std::isfinite(upper_))
    sample = upper_ - 1.0;
  else
    sample = 0.0;
  if (!(smooth_(sample) > 0.0)) throw NonIntegrable("measure: smooth factor not positive");
}

double IntervalMeasure::weight(double x) const {
  double w = smooth_(x);
  for (const auto& f : singular_) w *= std::pow(std::abs(x - f.location), f.exponent);
  if (exp_linear_ != 0.0) w *= std::exp(exp_linear_ * x);
  if (exp_gauss_) w *= std::exp(-0.5 * x * x);
  return w;
}

double IntervalMeasure::endpoint_exponent(double endpoint) const {
  if (!std::isfinite(endpoint)) return 0.0;
  double s = 0.0;
  for (const auto& f : singular_)
    if (near(f.location, endpoint)) s += f.exponent;
  return s;
}

std::string IntervalMeasure::cache_key() const {
  std::ostringstream os;
  os.precision(17);
  os << lower_ << '|' << upper_ << '|' << exp_linear_ << '|' << exp_gauss_;
  for (const auto& f : singular_) os << '|' << f.location << '^' << f.exponent;
  os << "|s";
  for (double c : smooth_.coeffs()) os << ',' << c;
  return os.str();
}

MomentTable::MomentTable(IntervalMeasure measure, std::vector<double> moments,
                         double certified_rel_err)
    : measure_(std::move(measure)), m_(std::move(moments)), cert_(certified_rel_err) {
  if (m_.empty() || !(m_[0] > 0.0)) throw NonIntegrable("moments: m(0) must be positive");
  if (measure_.lower() >= 0.0) {
    for (size_t s = 0; s < m_.size(); ++s)
      if (!(m_[s] > 0.0)) throw ConvergenceFailure("moments: positivity violated on (0, inf) support");
  } else if (measure_.upper() <= 0.0) {
    for (size_t s = 0; s < m_.size(); ++s)
      if (!((s % 2 == 0) ? m_[s] > 0.0 : m_[s] < 0.0))
        throw ConvergenceFailure("moments: sign pattern violated on (-inf, 0) support");
  }
  // Hankel positive-definiteness up to the table size (moment-problem
  // positivity); equilibrated to keep the check meaningful at Hilbert-like
  // conditioning.
  const int t = (max_order()) / 2;
  Eigen::MatrixXd H(t + 1, t + 1);
  for (int i = 0; i <= t; ++i)
    for (int j = 0; j <= t; ++j) H(i, j) = m_[static_cast<size_t>(i + j)];
  Eigen::VectorXd d(t + 1);
  for (int i = 0; i <= t; ++i) d(i) = 1.0 / std::sqrt(H(i, i) > 0.0 ? H(i, i) : 1.0);
  Eigen::MatrixXd Heq = d.asDiagonal() * H * d.asDiagonal();
  Eigen::LDLT<Eigen::MatrixXd> ldlt(Heq);
  if (ldlt.info() != Eigen::Success || ldlt.vectorD().minCoeff() < -1e-10)
    throw ConvergenceFailure("moments: Hankel matrix not positive definite");
}

double MomentTable::operator()(int s) const {
  if (s < 0 || s > max_order()) throw InsufficientMoments("moment order out of table range");
  return m_[static_cast<size_t>(s)];
}

namespace {

struct MomentPass {
  std::vector<double> m;    // signed moments
  std::vector<double> absm; // sum W_i |x_i|^s, the certification scale
};

// Accumulate sum W_i x_i^s for s = 0..S from explicit nodes.
MomentPass accumulate(const Eigen::VectorXd& x, const Eigen::VectorXd& W, int S) {
  MomentPass out;
  out.m.assign(static_cast<size_t>(S) + 1, 0.0);
  out.absm.assign(static_cast<size_t>(S) + 1, 0.0);
  for (int i = 0; i < x.size(); ++i) {
    double p = W(i), ap = std::abs(W(i));
    for (int s = 0; s <= S; ++s) {
      out.m[static_cast<size_t>(s)] += p;
      out.absm[static_cast<size_t>(s)] += ap;
      p *= x(i);
      ap *= std::abs(x(i));
    }
  }
  return out;
}

// Weight factors not absorbed analytically by a rule: singular factors away
// from the two given endpoint values, exponentials per flags, smooth factor.
double rest_weight(const IntervalMeasure& mu, double x, double skip_lo, double skip_hi,
                   bool skip_exp_linear, bool skip_gauss) {
  double w = mu.smooth_factor()(x);
  for (const auto& f : mu.singular_factors()) {
    if (std::isfinite(skip_lo) && near(f.location, skip_lo)) continue;
    if (std::isfinite(skip_hi) && near(f.location, skip_hi)) continue;
    w *= std::pow(std::abs(x - f.location), f.exponent);
  }
  if (!skip_exp_linear && mu.exp_linear() != 0.0) w *= std::exp(mu.exp_linear() * x);
  if (!skip_gauss && mu.exp_gauss()) w *= std::exp(-0.5 * x * x);
  return w;
}

// Gauss-Jacobi rule on (lo, hi) absorbing the endpoint singular factors; all
// other factors are evaluated at the (interior) nodes. Also used for
// truncated Gaussian ranges, where `gauss_okay_endpoint` marks the cut as a
// plain endpoint with exponent zero.
QuadRule bounded_rule(const IntervalMeasure& mu, double lo, double hi, int q) {
  const double alpha = mu.endpoint_exponent(hi);
  const double beta = mu.endpoint_exponent(lo);
  QuadRule gj = gauss_jacobi(q, alpha, beta);
  const double half = 0.5 * (hi - lo), mid = 0.5 * (lo + hi);
  const double jac = std::pow(half, alpha + beta + 1.0);
  QuadRule r;
  r.nodes.resize(q);
  r.weights.resize(q);
  for (int i = 0; i < q; ++i) {
    const double x = mid + half * gj.nodes(i);
    r.nodes(i) = x;
    r.weights(i) = gj.weights(i) * jac * rest_weight(mu, x, lo, hi, false, false);
  }
  return r;
}

// Generalized Gauss-Laguerre rule for a semi-infinite interval with an
// exponential factor; the finite-endpoint singularity is absorbed.
QuadRule laguerre_rule(const IntervalMeasure& mu, int q) {
  const bool up = (mu.upper() == kInf);
  const double e = up ? mu.lower() : mu.upper();
  const double rate = up ? -mu.exp_linear() : mu.exp_linear(); // > 0
  const double a = mu.endpoint_exponent(e);
  QuadRule gl = gauss_laguerre(q, a);
  const double scale = std::exp(mu.exp_linear() * e) * std::pow(rate, -(a + 1.0));
  QuadRule r;
  r.nodes.resize(q);
  r.weights.resize(q);
  for (int i = 0; i < q; ++i) {
    const double x = up ? e + gl.nodes(i) / rate : e - gl.nodes(i) / rate;
    r.nodes(i) = x;
    r.weights(i) = gl.weights(i) * scale * rest_weight(mu, x, e, kInf, true, false);
  }
  return r;
}

// Hermite rule for a doubly infinite Gaussian measure, completing the square
// when a linear exponential factor is present. Exact for polynomial parts.
QuadRule hermite_rule(const IntervalMeasure& mu, int q) {
  const double c = mu.exp_linear();
  QuadRule gh = gauss_hermite(q);
  const double scale = std::sqrt(2.0) * std::exp(0.5 * c * c);
  QuadRule r;
  r.nodes.resize(q);
  r.weights.resize(q);
  for (int i = 0; i < q; ++i) {
    const double x = c + std::sqrt(2.0) * gh.nodes(i);
    r.nodes(i) = x;
    r.weights(i) = gh.weights(i) * scale * rest_weight(mu, x, kInf, kInf, true, true);
  }
  return r;
}

bool gaussian_halfline_at_origin(const IntervalMeasure& mu) {
  if (!mu.exp_gauss() || mu.exp_linear() != 0.0) return false;
  const bool up = (mu.lower() == 0.0 && mu.upper() == kInf);
  const bool down = (mu.lower() == -kInf && mu.upper() == 0.0);
  if (!up && !down) return false;
  for (const auto& f : mu.singular_factors())
    if (!near(f.location, 0.0)) return false;
  return true;
}

// Exact moments for (0, inf) or (-inf, 0) with weight |x|^{a-1} e^{-x^2/2}
// times a polynomial, via the x = sqrt(2u) reduction split by parity:
//   int_0^inf x^p |x|^{a-1} e^{-x^2/2} dx
//     = 2^{(p+a)/2 - 1} * GaussLaguerre((p+a)/2 - 1)-exact in u.
MomentPass gaussian_origin_moments(const IntervalMeasure& mu, int S, int q) {
  const double a = mu.endpoint_exponent(0.0) + 1.0; // total |x|^{a-1}
  const bool down = (mu.upper() == 0.0);
  const auto& smooth = mu.smooth_factor().coeffs();
  const int pmax = S + std::max(mu.smooth_factor().degree(), 0);
  // G(p) = int_0^inf x^p x^{a-1} e^{-x^2/2} dx, one Laguerre rule per parity.
  QuadRule even = gauss_laguerre(q, 0.5 * a - 1.0);
  QuadRule odd = gauss_laguerre(q, 0.5 * (a + 1.0) - 1.0);
  std::vector<double> G(static_cast<size_t>(pmax) + 1, 0.0);
  for (int p = 0; p <= pmax; ++p) {
    const QuadRule& rule = (p % 2 == 0) ? even : odd;
    const int m = p / 2;
    const double pref = std::pow(2.0, 0.5 * (p + a) - 1.0);
    double s = 0.0;
    for (int i = 0; i < rule.size(); ++i) s += rule.weights(i) * std::pow(rule.nodes(i), m);
    G[static_cast<size_t>(p)] = pref * s;
  }
  MomentPass out;
  out.m.assign(static_cast<size_t>(S) + 1, 0.0);
  out.absm.assign(static_cast<size_t>(S) + 1, 0.0);
  for (int s = 0; s <= S; ++s) {
    double v = 0.0, av = 0.0;
    for (size_t t = 0; t < smooth.size(); ++t) {
      // on (-inf,0): x^s smooth(x) mirrored through x -> -x
      const double sgn = down ? ((s + t) % 2 == 0 ? 1.0 : -1.0) : 1.0;
      const double term = smooth[t] * G[static_cast<size_t>(s) + t];
      v += sgn * term;
      av += std::abs(term);
    }
    out.m[static_cast<size_t>(s)] = v;
    out.absm[static_cast<size_t>(s)] = av;
  }
  return out;
}

MomentPass moments_at_order(const IntervalMeasure& mu, int S, int q) {
  if (mu.bounded()) {
    QuadRule r = bounded_rule(mu, mu.lower(), mu.upper(), q);
    return accumulate(r.nodes, r.weights, S);
  }
  if (gaussian_halfline_at_origin(mu)) return gaussian_origin_moments(mu, S, q);
  if (mu.exp_gauss()) {
    if (std::isfinite(mu.lower())) {
      QuadRule r = bounded_rule(mu, mu.lower(), std::max(mu.lower() + 1.0, kGaussCut), q);
      return accumulate(r.nodes, r.weights, S);
    }
    if (std::isfinite(mu.upper())) {
      QuadRule r = bounded_rule(mu, std::min(mu.upper() - 1.0, -kGaussCut), mu.upper(), q);
      return accumulate(r.nodes, r.weights, S);
    }
    QuadRule r = hermite_rule(mu, q);
    return accumulate(r.nodes, r.weights, S);
  }
  QuadRule r = laguerre_rule(mu, q);
  return accumulate(r.nodes, r.weights, S);
}

} // namespace

MomentTable moments(const IntervalMeasure& measure, int count) {
  if (count < 0) throw NonIntegrable("moments: count must be >= 0");
  const int S = count;
  int q = std::max(8, S / 2 + 4);
  MomentPass prev = moments_at_order(measure, S, q);
  double best_change = kInf;
  std::vector<double> best = prev.m;
  while (2 * q <= kMaxOrder) {
    q *= 2;
    MomentPass next = moments_at_order(measure, S, q);
    double change = 0.0;
    for (int s = 0; s <= S; ++s) {
      const double scale = std::max(next.absm[static_cast<size_t>(s)], 1e-300);
      change = std::max(change,
                        std::abs(next.m[static_cast<size_t>(s)] - prev.m[static_cast<size_t>(s)]) / scale);
    }
    if (change < best_change) {
      best_change = change;
      best = next.m;
    }
    if (change < kCertTarget)
      return MomentTable(measure, next.m, std::max(change, 1e-15));
    prev = std::move(next);
  }
  if (best_change <= kCertHardFail) return MomentTable(measure, best, best_change);
  throw ConvergenceFailure("moments: quadrature did not certify below 1e-9");
}

namespace {
std::mutex g_cache_mutex;
std::map<std::string, MomentTable> g_cache; // insert-once per (measure, sufficient order)
} // namespace

MomentTable cached_moments(const IntervalMeasure& measure, int count) {
  const std::string key = measure.cache_key();
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_cache.find(key);
    if (it != g_cache.end() && it->second.max_order() >= count) return it->second;
  }
  MomentTable fresh = moments(measure, count);
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto it = g_cache.find(key);
  if (it != g_cache.end()) {
    if (it->second.max_order() >= count) return it->second;
    it->second = fresh;
    return it->second;
  }
  return g_cache.emplace(key, std::move(fresh)).first->second;
}

double inner_product(const MomentTable& mt, const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) return 0.0;
  const Polynomial c = p * q;
  if (c.degree() > mt.max_order())
    throw InsufficientMoments("inner_product: table does not cover deg p + deg q");
  double s = 0.0;
  for (int i = 0; i <= c.degree(); ++i) s += c.coeff(i) * mt(i);
  return s;
}

Eigen::MatrixXd gram_matrix(const MomentTable& mt, int rows, int cols) {
  if (rows < 1 || cols < 1) throw InsufficientMoments("gram_matrix: empty shape");
  if (rows + cols - 2 > mt.max_order())
    throw InsufficientMoments("gram_matrix: table does not cover rows + cols - 2");
  Eigen::MatrixXd G(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int s = 0; s < cols; ++s) G(i, s) = mt(i + s);
  return G;
}

QuadRule measure_rule(const IntervalMeasure& measure, int q) {
  if (measure.bounded()) return bounded_rule(measure, measure.lower(), measure.upper(), q);
  if (measure.exp_gauss()) {
    if (std::isfinite(measure.lower()))
      return bounded_rule(measure, measure.lower(), std::max(measure.lower() + 1.0, kGaussCut), q);
    if (std::isfinite(measure.upper()))
      return bounded_rule(measure, std::min(measure.upper() - 1.0, -kGaussCut), measure.upper(), q);
    return hermite_rule(measure, q);
  }
  return laguerre_rule(measure, q);
}

} // namespace jop

#include "subbergman/analytic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "subbergman/errors.hpp"

namespace subbergman {
namespace {

bool is_finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

void require_open_disk(Complex z, const char* what) {
  if (!(std::abs(z) < 1.0)) {
    std::ostringstream os;
    os << what << ": point " << z << " is not inside the open unit disk";
    throw DomainError(os.str());
  }
}

void require_closed_disk(Complex z, const char* what) {
  if (!(std::abs(z) <= 1.0 + 1e-12)) {
    std::ostringstream os;
    os << what << ": point " << z << " is outside the closed unit disk";
    throw DomainError(os.str());
  }
}

Complex normalize_unimodular(Complex xi) {
  const double m = std::abs(xi);
  if (!is_finite(xi) || m == 0.0) throw DomainError("unimodular constant must be finite and nonzero");
  if (std::abs(m - 1.0) > 1e-6) {
    std::ostringstream os;
    os << "unimodular constant " << xi << " has modulus " << m << "; normalizing";
    warn(os.str());
  }
  return xi / m;
}

// Synthetic long division of num by den, producing coefficients 0..degree.
std::vector<Complex> long_divide(const PowerSeriesPoly& num, const PowerSeriesPoly& den, int degree) {
  const Complex d0 = den.coeff(0);
  if (d0 == 0.0) throw DomainError("series_expand: denominator vanishes at the origin");
  std::vector<Complex> q(static_cast<size_t>(degree) + 1);
  for (int n = 0; n <= degree; ++n) {
    Complex acc = num.coeff(n);
    const int kmax = std::min(n, den.degree());
    for (int k = 1; k <= kmax; ++k) acc -= den.coeff(k) * q[n - k];
    q[n] = acc / d0;
  }
  return q;
}

}  // namespace

// ---------------------------------------------------------------------------
// PowerSeriesPoly

PowerSeriesPoly::PowerSeriesPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_)
    if (!is_finite(c)) throw DomainError("PowerSeriesPoly: non-finite coefficient");
  trim();
}

PowerSeriesPoly::PowerSeriesPoly(std::initializer_list<Complex> coeffs)
    : PowerSeriesPoly(std::vector<Complex>(coeffs)) {}

PowerSeriesPoly PowerSeriesPoly::constant(Complex c) { return PowerSeriesPoly({c}); }

PowerSeriesPoly PowerSeriesPoly::monomial(int n, Complex c) {
  if (n < 0) throw DomainError("monomial: negative exponent");
  std::vector<Complex> v(static_cast<size_t>(n) + 1);
  v[n] = c;
  return PowerSeriesPoly(std::move(v));
}

void PowerSeriesPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

Complex PowerSeriesPoly::coeff(int n) const {
  return (n >= 0 && n <= degree()) ? coeffs_[n] : Complex{};
}

Complex PowerSeriesPoly::operator()(Complex z) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

PowerSeriesPoly PowerSeriesPoly::derivative() const {
  if (degree() < 1) return {};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (size_t n = 1; n < coeffs_.size(); ++n) d[n - 1] = static_cast<double>(n) * coeffs_[n];
  return PowerSeriesPoly(std::move(d));
}

PowerSeriesPoly PowerSeriesPoly::truncated(int max_degree) const {
  if (max_degree < 0) return {};
  if (max_degree >= degree()) return *this;
  return PowerSeriesPoly(std::vector<Complex>(coeffs_.begin(), coeffs_.begin() + max_degree + 1));
}

PowerSeriesPoly operator+(const PowerSeriesPoly& p, const PowerSeriesPoly& q) {
  std::vector<Complex> r(static_cast<size_t>(std::max(p.degree(), q.degree()) + 1));
  for (size_t n = 0; n < r.size(); ++n) r[n] = p.coeff(int(n)) + q.coeff(int(n));
  return PowerSeriesPoly(std::move(r));
}

PowerSeriesPoly operator-(const PowerSeriesPoly& p, const PowerSeriesPoly& q) { return p + (-1.0) * q; }

PowerSeriesPoly operator*(const PowerSeriesPoly& p, const PowerSeriesPoly& q) {
  if (p.is_zero() || q.is_zero()) return {};
  return multiply_truncated(p, q, p.degree() + q.degree());
}

PowerSeriesPoly operator*(Complex c, const PowerSeriesPoly& p) {
  std::vector<Complex> r(p.coeffs_.begin(), p.coeffs_.end());
  for (auto& x : r) x *= c;
  return PowerSeriesPoly(std::move(r));
}

Complex eval_poly(const PowerSeriesPoly& p, Complex z) { return p(z); }

PowerSeriesPoly antiderivative(const PowerSeriesPoly& p, Complex c0) {
  std::vector<Complex> r(static_cast<size_t>(p.degree()) + 2);
  r[0] = c0;
  for (int n = 0; n <= p.degree(); ++n) r[n + 1] = p.coeff(n) / static_cast<double>(n + 1);
  return PowerSeriesPoly(std::move(r));
}

PowerSeriesPoly multiply_truncated(const PowerSeriesPoly& p, const PowerSeriesPoly& q, int max_degree) {
  if (p.is_zero() || q.is_zero() || max_degree < 0) return {};
  const int deg = std::min(max_degree, p.degree() + q.degree());
  std::vector<Complex> r(static_cast<size_t>(deg) + 1);
  for (int i = 0; i <= std::min(p.degree(), deg); ++i) {
    const Complex pi = p.coeff(i);
    if (pi == 0.0) continue;
    for (int j = 0; j <= std::min(q.degree(), deg - i); ++j) r[i + j] += pi * q.coeff(j);
  }
  return PowerSeriesPoly(std::move(r));
}

std::vector<Complex> polynomial_roots(const PowerSeriesPoly& p) {
  const int n = p.degree();
  if (n < 1) throw DomainError("polynomial_roots: degree must be at least 1");
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  const Complex lead = p.coeff(n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p.coeff(i) / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

// ---------------------------------------------------------------------------
// MoebiusMap

MoebiusMap::MoebiusMap(Complex xi, Complex a) : xi_(normalize_unimodular(xi)), a_(a) {
  if (!is_finite(a) || !(std::abs(a) < 1.0)) throw DomainError("MoebiusMap: |a| must be < 1");
}

Complex MoebiusMap::operator()(Complex z) const {
  require_closed_disk(z, "MoebiusMap");
  return xi_ * (a_ - z) / (1.0 - std::conj(a_) * z);
}

Complex MoebiusMap::derivative(Complex z) const {
  require_open_disk(z, "MoebiusMap::derivative");
  const Complex d = 1.0 - std::conj(a_) * z;
  return xi_ * (std::norm(a_) - 1.0) / (d * d);
}

PowerSeriesPoly MoebiusMap::numerator() const { return PowerSeriesPoly({xi_ * a_, -xi_}); }
PowerSeriesPoly MoebiusMap::denominator() const { return PowerSeriesPoly({1.0, -std::conj(a_)}); }

// ---------------------------------------------------------------------------
// BlaschkeProduct

BlaschkeProduct::BlaschkeProduct(Complex xi, std::vector<Complex> zeros, ZeroPolicy policy)
    : xi_(normalize_unimodular(xi)), zeros_(std::move(zeros)) {
  if (zeros_.empty()) throw DomainError("BlaschkeProduct: at least one zero is required");
  for (const auto& a : zeros_)
    if (!is_finite(a) || !(std::abs(a) < 1.0)) throw DomainError("BlaschkeProduct: zeros must lie in the open disk");
  if (policy == ZeroPolicy::distinct && !has_distinct_zeros())
    throw DomainError("BlaschkeProduct: zeros are not pairwise distinct");
}

double BlaschkeProduct::min_zero_separation() const {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < zeros_.size(); ++i)
    for (size_t j = i + 1; j < zeros_.size(); ++j) best = std::min(best, std::abs(zeros_[i] - zeros_[j]));
  return best;
}

bool BlaschkeProduct::has_distinct_zeros() const { return min_zero_separation() > kMinZeroSeparation; }

Complex BlaschkeProduct::factor(int k, Complex z) const {
  const Complex a = zeros_.at(k);
  if (a == 0.0) return z;
  return (std::abs(a) / a) * (a - z) / (1.0 - std::conj(a) * z);
}

Complex BlaschkeProduct::operator()(Complex z) const {
  require_closed_disk(z, "BlaschkeProduct");
  Complex v = xi_;
  for (int k = 0; k < order(); ++k) v *= factor(k, z);
  return v;
}

Complex BlaschkeProduct::derivative(Complex z) const {
  require_open_disk(z, "BlaschkeProduct::derivative");
  Complex total{};
  for (int k = 0; k < order(); ++k) {
    const Complex a = zeros_[k];
    Complex dk;
    if (a == 0.0) {
      dk = 1.0;
    } else {
      const Complex d = 1.0 - std::conj(a) * z;
      dk = (std::abs(a) / a) * (std::norm(a) - 1.0) / (d * d);
    }
    for (int j = 0; j < order(); ++j)
      if (j != k) dk *= factor(j, z);
    total += dk;
  }
  return xi_ * total;
}

BlaschkeProduct to_blaschke(const MoebiusMap& m) {
  const Complex a = m.a();
  if (a == 0.0) return BlaschkeProduct(-m.xi(), {Complex{}});
  return BlaschkeProduct(m.xi() * a / std::abs(a), {a});
}

Complex eval_map(const MoebiusMap& phi, Complex z) { return phi(z); }
Complex eval_map(const BlaschkeProduct& phi, Complex z) { return phi(z); }
Complex eval_map(const AnalyticMap& phi, Complex z) {
  return std::visit([z](const auto& m) { return m(z); }, phi);
}

Complex derivative_at(const MoebiusMap& phi, Complex z) { return phi.derivative(z); }
Complex derivative_at(const BlaschkeProduct& phi, Complex z) { return phi.derivative(z); }
Complex derivative_at(const AnalyticMap& phi, Complex z) {
  return std::visit([z](const auto& m) { return m.derivative(z); }, phi);
}
Complex derivative_at(const PowerSeriesPoly& p, Complex z) { return p.derivative()(z); }

// ---------------------------------------------------------------------------
// RationalFn

RationalFn::RationalFn(PowerSeriesPoly numerator, PowerSeriesPoly denominator, double domain_radius)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)), domain_radius_(domain_radius) {
  if (!(domain_radius > 0.0 && domain_radius <= 1.0)) throw DomainError("RationalFn: domain_radius must lie in (0, 1]");
  if (denominator_.is_zero()) throw DomainError("RationalFn: zero denominator");
  if (denominator_.degree() >= 1) {
    for (const auto& root : polynomial_roots(denominator_)) pole_modulus_ = std::min(pole_modulus_, std::abs(root));
    if (!(pole_modulus_ > domain_radius_)) {
      std::ostringstream os;
      os << "RationalFn: denominator vanishes at modulus " << pole_modulus_ << " <= domain radius " << domain_radius_;
      throw DomainError(os.str());
    }
  }
}

Complex RationalFn::operator()(Complex z) const { return numerator_(z) / denominator_(z); }

// ---------------------------------------------------------------------------
// Series expansion

double SeriesExpansion::tail_bound(double radius) const {
  const double q = decay_ratio * radius;
  if (q >= 1.0) return std::numeric_limits<double>::infinity();
  if (q == 0.0) return 0.0;
  return std::abs(series.coeff(requested_degree)) * std::pow(radius, requested_degree) * q / (1.0 - q);
}

SeriesExpansion series_expand(const RationalFn& r, int degree) {
  if (degree < 0) throw DomainError("series_expand: negative degree");
  SeriesExpansion out;
  out.series = PowerSeriesPoly(long_divide(r.numerator(), r.denominator(), degree));
  out.requested_degree = degree;
  out.decay_ratio = std::isinf(r.pole_modulus()) ? 0.0 : 1.0 / r.pole_modulus();
  return out;
}

SeriesExpansion series_expand(const MoebiusMap& m, int degree) {
  return series_expand(RationalFn(m.numerator(), m.denominator(), 1.0), degree);
}

SeriesExpansion series_expand(const BlaschkeProduct& b, int degree) {
  if (degree < 0) throw DomainError("series_expand: negative degree");
  PowerSeriesPoly acc = PowerSeriesPoly::constant(b.xi());
  double ratio = 0.0;
  for (const auto& a : b.zeros()) {
    PowerSeriesPoly f;
    if (a == 0.0) {
      f = PowerSeriesPoly::monomial(1);
    } else {
      const MoebiusMap m(std::abs(a) / a, a);
      f = series_expand(m, degree).series;
      ratio = std::max(ratio, std::abs(a));
    }
    acc = multiply_truncated(acc, f, degree);
  }
  return SeriesExpansion{std::move(acc), degree, ratio};
}

SeriesExpansion series_expand(const AnalyticMap& phi, int degree) {
  return std::visit([degree](const auto& m) { return series_expand(m, degree); }, phi);
}

}  // namespace subbergman

#pragma once

// Analytic functions on the unit disk: truncated power series, disk
// automorphisms, finite Blaschke products and rational quotients.

#include <complex>
#include <initializer_list>
#include <limits>
#include <span>
#include <variant>
#include <vector>

namespace subbergman {

using Complex = std::complex<double>;

/// Dense polynomial / truncated Taylor series, coefficient n multiplies z^n.
/// Trailing exact zeros are trimmed, so degree() == -1 encodes the zero function.
class PowerSeriesPoly {
 public:
  PowerSeriesPoly() = default;
  explicit PowerSeriesPoly(std::vector<Complex> coeffs);
  PowerSeriesPoly(std::initializer_list<Complex> coeffs);

  static PowerSeriesPoly constant(Complex c);
  static PowerSeriesPoly monomial(int n, Complex c = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const Complex> coeffs() const { return coeffs_; }
  // Zero beyond the degree.
  Complex coeff(int n) const;

  Complex operator()(Complex z) const;
  PowerSeriesPoly derivative() const;
  PowerSeriesPoly truncated(int max_degree) const;

  friend PowerSeriesPoly operator+(const PowerSeriesPoly& p, const PowerSeriesPoly& q);
  friend PowerSeriesPoly operator-(const PowerSeriesPoly& p, const PowerSeriesPoly& q);
  friend PowerSeriesPoly operator*(const PowerSeriesPoly& p, const PowerSeriesPoly& q);
  friend PowerSeriesPoly operator*(Complex c, const PowerSeriesPoly& p);
  friend bool operator==(const PowerSeriesPoly&, const PowerSeriesPoly&) = default;

 private:
  void trim();
  std::vector<Complex> coeffs_;
};

/// Horner evaluation of sum coeffs[n] z^n.
Complex eval_poly(const PowerSeriesPoly& p, Complex z);

/// F with F' = p and F(0) = c0.
PowerSeriesPoly antiderivative(const PowerSeriesPoly& p, Complex c0 = 0.0);

/// Product truncated to max_degree.
PowerSeriesPoly multiply_truncated(const PowerSeriesPoly& p, const PowerSeriesPoly& q, int max_degree);

/// Roots of p via the companion matrix. p must have degree >= 1.
std::vector<Complex> polynomial_roots(const PowerSeriesPoly& p);

/// Disk automorphism z -> xi (a - z) / (1 - conj(a) z), |xi| = 1, |a| < 1.
class MoebiusMap {
 public:
  // xi is normalized to modulus one; a warning is issued if it was off by more than 1e-6.
  MoebiusMap(Complex xi, Complex a);

  Complex xi() const { return xi_; }
  Complex a() const { return a_; }

  // Defined on the closed disk.
  Complex operator()(Complex z) const;
  // Requires |z| < 1.
  Complex derivative(Complex z) const;

  PowerSeriesPoly numerator() const;
  PowerSeriesPoly denominator() const;

 private:
  Complex xi_;
  Complex a_;
};

enum class ZeroPolicy { distinct, allow_repeated };

/// Finite Blaschke product xi * prod_k b_{a_k}(z) with the standard factors
/// b_0(z) = z and b_a(z) = (|a| / a) (a - z) / (1 - conj(a) z).
class BlaschkeProduct {
 public:
  static constexpr double kMinZeroSeparation = 1e-9;

  // With ZeroPolicy::distinct the zeros must be pairwise separated by more than 1e-9.
  BlaschkeProduct(Complex xi, std::vector<Complex> zeros, ZeroPolicy policy = ZeroPolicy::distinct);

  Complex xi() const { return xi_; }
  std::span<const Complex> zeros() const { return zeros_; }
  int order() const { return static_cast<int>(zeros_.size()); }
  bool has_distinct_zeros() const;
  double min_zero_separation() const;

  Complex operator()(Complex z) const;
  // Product rule over the factors; requires |z| < 1.
  Complex derivative(Complex z) const;
  Complex factor(int k, Complex z) const;

 private:
  Complex xi_;
  std::vector<Complex> zeros_;
};

/// The same function as m, written as a degree-one Blaschke product.
BlaschkeProduct to_blaschke(const MoebiusMap& m);

using AnalyticMap = std::variant<MoebiusMap, BlaschkeProduct>;

Complex eval_map(const MoebiusMap& phi, Complex z);
Complex eval_map(const BlaschkeProduct& phi, Complex z);
Complex eval_map(const AnalyticMap& phi, Complex z);

Complex derivative_at(const MoebiusMap& phi, Complex z);
Complex derivative_at(const BlaschkeProduct& phi, Complex z);
Complex derivative_at(const AnalyticMap& phi, Complex z);
Complex derivative_at(const PowerSeriesPoly& p, Complex z);

/// numerator / denominator with the denominator zero-free on the closed disk
/// of radius domain_radius (checked on construction by root finding).
class RationalFn {
 public:
  RationalFn(PowerSeriesPoly numerator, PowerSeriesPoly denominator, double domain_radius = 1.0);

  const PowerSeriesPoly& numerator() const { return numerator_; }
  const PowerSeriesPoly& denominator() const { return denominator_; }
  double domain_radius() const { return domain_radius_; }
  // Smallest modulus of a denominator root; infinity for constant denominators.
  double pole_modulus() const { return pole_modulus_; }

  Complex operator()(Complex z) const;

 private:
  PowerSeriesPoly numerator_;
  PowerSeriesPoly denominator_;
  double domain_radius_;
  double pole_modulus_ = std::numeric_limits<double>::infinity();
};

/// Taylor coefficients about 0 together with the geometric decay ratio of
/// the coefficients (reciprocal of the nearest pole modulus).
struct SeriesExpansion {
  PowerSeriesPoly series;
  int requested_degree = 0;
  double decay_ratio = 0.0;

  // Geometric-tail estimate of |f(z) - series(z)| on |z| <= radius:
  // |a_D| r^D q / (1 - q) with q = decay_ratio * r. Infinite when q >= 1.
  double tail_bound(double radius) const;
};

SeriesExpansion series_expand(const RationalFn& r, int degree);
SeriesExpansion series_expand(const MoebiusMap& m, int degree);
SeriesExpansion series_expand(const BlaschkeProduct& b, int degree);
SeriesExpansion series_expand(const AnalyticMap& phi, int degree);

}  // namespace subbergman

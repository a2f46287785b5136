#pragma once

// Weighted Bergman spaces A^2_alpha on the unit disk.
//
// All norms are taken with respect to the probability measure
//   dA_alpha = ((alpha + 1) / pi) (1 - |z|^2)^alpha dA,
// for which 1 / (1 - z conj(w))^(alpha + 2) is the reproducing kernel and
//   ||z^n||^2 = n! Gamma(alpha + 2) / Gamma(n + alpha + 2).

#include <Eigen/Dense>

#include <span>
#include <variant>
#include <vector>

#include "subbergman/analytic.hpp"

namespace subbergman {

/// Closed-form ||z^n||^2 in A^2_alpha, via log-Gamma. Valid for any n >= 0.
double monomial_norm_squared(double alpha, long long n);

class BergmanSpaceModel {
 public:
  BergmanSpaceModel(double alpha, int truncation);

  double alpha() const { return alpha_; }
  int truncation() const { return truncation_; }

  // Both require 0 <= n <= truncation.
  double monomial_norm(int n) const;
  double monomial_norm_squared(int n) const;
  std::span<const double> norms() const { return norms_; }

  // Coordinates of f in the orthonormal basis e_n = z^n / ||z^n||, n < size.
  // Coefficients of f beyond size - 1 are dropped.
  Eigen::VectorXcd to_orthonormal(const PowerSeriesPoly& f, int size) const;
  PowerSeriesPoly from_orthonormal(const Eigen::VectorXcd& coords) const;

  // Closed-form inner product sum f_n conj(g_n) ||z^n||^2.
  Complex inner_product(const PowerSeriesPoly& f, const PowerSeriesPoly& g) const;
  double norm(const PowerSeriesPoly& f) const;

 private:
  double alpha_;
  int truncation_;
  std::vector<double> norms_;
};

/// Tensor rule on the disk: Gauss-Jacobi in t = r^2 with weight (1 - t)^alpha,
/// times the uniform rule in angle. Weights are normalized to total mass one.
struct QuadratureRule {
  double alpha = 0.0;
  int exactness_degree = 0;
  std::vector<double> radial_nodes;    // t in (0, 1)
  std::vector<double> radial_weights;  // sum to 1
  int angular_nodes = 0;
};

/// Gauss-Jacobi nodes/weights for int_0^1 h(t) (1 - t)^alpha dt, weights
/// normalized to sum to one (Golub-Welsch).
void gauss_jacobi_unit_interval(double alpha, int count, std::vector<double>& nodes, std::vector<double>& weights);

/// Rule exact for z^n conj(z)^m with n + m <= exactness_degree.
QuadratureRule make_quadrature_rule(double alpha, int exactness_degree);

/// Numerical inner product against dA_alpha.
/// Throws DomainError when deg f + deg g exceeds the rule's exactness degree.
Complex inner_product_quadrature(const PowerSeriesPoly& f, const PowerSeriesPoly& g, const QuadratureRule& rule);
/// Builds a rule of exactness 2 * space.truncation().
Complex inner_product_quadrature(const PowerSeriesPoly& f, const PowerSeriesPoly& g, const BergmanSpaceModel& space);

/// (1 - z conj(w))^(-s), principal branch. s = alpha + 2 is the A^2_alpha kernel, s = 1 the Hardy kernel.
struct GeneralizedBergman {
  double s;
};

/// (1 - phi(z) conj(phi(w))) / (1 - z conj(w))^(2 + alpha), the kernel of the range of the defect operator.
struct SubBergman {
  double alpha;
  AnalyticMap phi;
};

class KernelSpec {
 public:
  using Variant = std::variant<GeneralizedBergman, SubBergman>;

  explicit KernelSpec(Variant v);

  static KernelSpec generalized(double s) { return KernelSpec(GeneralizedBergman{s}); }
  static KernelSpec hardy() { return generalized(1.0); }
  static KernelSpec bergman(double alpha) { return generalized(alpha + 2.0); }
  static KernelSpec sub_bergman(double alpha, AnalyticMap phi) { return KernelSpec(SubBergman{alpha, std::move(phi)}); }

  const Variant& variant() const { return v_; }

 private:
  Variant v_;
};

/// Requires |z| < 1 and |w| < 1.
Complex kernel_eval(const KernelSpec& k, Complex z, Complex w);

struct KernelSeriesValue {
  Complex value;
  double tail_bound;  // geometric bound on the omitted terms
};

/// sum_{n < terms} c_n (z conj(w))^n with c_0 = 1, c_{n+1} = c_n (n + s) / (n + 1).
KernelSeriesValue kernel_series_oracle(double s, Complex z, Complex w, int terms);

}  // namespace subbergman

#pragma once

// Truncated Toeplitz and defect operators on A^2_alpha, written in the
// orthonormal monomial basis e_n = z^n / ||z^n||_alpha, and the closed-form
// expressions for T_{conj B} f and (I - T_phi T_phi^*) f they are checked against.

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "subbergman/analytic.hpp"
#include "subbergman/bergman.hpp"

namespace subbergman {

enum class OperatorKind { toeplitz, adjoint, defect, defect_sqrt, other };

struct OperatorMatrix {
  Eigen::MatrixXcd entries;
  double alpha = 0.0;
  OperatorKind kind = OperatorKind::other;

  int size() const { return static_cast<int>(entries.rows()); }
  // Applies the matrix to f (in monomial coefficients) and returns monomial coefficients.
  PowerSeriesPoly apply(const PowerSeriesPoly& f) const;
};

inline constexpr int kDefaultBuffer = 50;
inline constexpr double kEigenClamp = 1e-8;

/// Multiplication by `symbol` on span{e_0..e_N}: entry (m, n) = b_{m-n} ||z^m|| / ||z^n||.
/// Throws DomainError if N exceeds the space truncation.
OperatorMatrix toeplitz_matrix(const BergmanSpaceModel& space, const PowerSeriesPoly& symbol, int N);

/// Conjugate transpose.
OperatorMatrix adjoint(const OperatorMatrix& m);

/// I - T_phi T_phi^* computed at size N + buffer + 1 and restricted to the leading (N+1) block.
/// The symbol is expanded to degree N + buffer. Throws ContractViolation when the
/// result has an eigenvalue below -1e-8.
OperatorMatrix defect_matrix(const BergmanSpaceModel& space, const AnalyticMap& phi, int N, int buffer = kDefaultBuffer);
OperatorMatrix defect_matrix(const BergmanSpaceModel& space, const PowerSeriesPoly& symbol, int N,
                             int buffer = kDefaultBuffer);

/// Hermitian square root by eigendecomposition. Eigenvalues in [-1e-8, 0) are
/// clamped to zero; anything lower throws ContractViolation.
OperatorMatrix defect_sqrt(const OperatorMatrix& m);

/// Smallest and largest eigenvalue of the Hermitian part of m.
std::pair<double, double> hermitian_spectrum_bounds(const Eigen::MatrixXcd& m);

/// Spectral norm.
double operator_norm(const Eigen::MatrixXcd& m);

/// Callable evaluating a closed-form expression that has removable
/// singularities at a known set of points. Within guard_radius of such a point
/// the value is obtained by trigonometric interpolation of the raw expression
/// on the circle of radius guard_radius around it (the truncated Taylor series
/// about the singular point).
class ClosedFormEvaluator {
 public:
  static constexpr double kGuardRadius = 0.05;
  static constexpr int kGuardNodes = 16;

  ClosedFormEvaluator(std::function<Complex(Complex)> raw, std::vector<Complex> removable_points);

  Complex operator()(Complex z) const;
  Complex raw(Complex z) const { return raw_(z); }
  const std::vector<Complex>& removable_points() const { return points_; }

 private:
  Complex guarded(Complex z, Complex center) const;

  std::function<Complex(Complex)> raw_;
  std::vector<Complex> points_;
};

/// T_{conj B} f = f/B - F B'/B^2 + sum_k F(a_k) / (B'(a_k) (z - a_k)^2),
/// F = antiderivative(f, antiderivative_offset). The identity holds in the
/// unweighted Bergman space, so space.alpha() must be 0.
/// Throws DomainError for zeros closer than 1e-9 or alpha != 0.
ClosedFormEvaluator toeplitz_conj_blaschke_explicit(const PowerSeriesPoly& f, const BlaschkeProduct& B,
                                                    const BergmanSpaceModel& space,
                                                    Complex antiderivative_offset = 0.0);

/// Matrix route for T_{conj B} f: adjoint(toeplitz_matrix(B)) applied to f on n_work + 1 basis vectors.
PowerSeriesPoly toeplitz_conj_matrix(const PowerSeriesPoly& f, const BlaschkeProduct& B, const BergmanSpaceModel& space,
                                     int n_work);

/// (I - T_phi T_phi^*) f for f = gamma/psi expanded to `degree`, via
///   F phi'/phi - F(a) phi / (phi'(a) (z - a)^2),   F = antiderivative(f, offset).
/// Requires space.alpha() == 0; psi must be zero-free on |z| <= domain_radius.
ClosedFormEvaluator defect_action_explicit(const PowerSeriesPoly& gamma, const PowerSeriesPoly& psi,
                                           const MoebiusMap& phi, const BergmanSpaceModel& space, int degree,
                                           double domain_radius = 1.0, Complex antiderivative_offset = 0.0);

/// Matrix-side (I - T_phi T_phi^*) f.
struct DefectApplication {
  PowerSeriesPoly input;
  PowerSeriesPoly output;  // monomial coefficients 0..n_trust
  int n_work = 0;
  int n_trust = 0;
  double r_max = 0.7;
  double tail_bound = 0.0;  // geometric estimate of the dropped output tail on |z| <= r_max
};

DefectApplication apply_defect(const BergmanSpaceModel& space, const AnalyticMap& phi, const PowerSeriesPoly& f, int N,
                               int buffer = kDefaultBuffer, double r_max = 0.7);

struct RangeMappingReport {
  double alpha_in = 0.0;
  double alpha_out = 0.0;
  int n = 0;
  int buffer = 0;
  std::vector<int> degrees;
  std::vector<double> ratios;
  double max_ratio = 0.0;
  double min_ratio = 0.0;
  bool all_finite = true;
};

/// ||D f||_{A^2_{alpha-1}} / ||f||_{A^2_alpha} for each sample, D = (I - T_phi T_phi^*)^{1/2} on A^2_alpha.
/// Throws DomainError when alpha <= 0 (the target norm does not exist).
RangeMappingReport range_mapping_report(const BergmanSpaceModel& space_in, const AnalyticMap& phi,
                                        const std::vector<PowerSeriesPoly>& samples, int N = 200,
                                        int buffer = kDefaultBuffer);

}  // namespace subbergman

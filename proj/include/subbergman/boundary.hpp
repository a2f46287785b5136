#pragma once

// Boundary-value probes, Smirnov quotients, cyclicity residuals and the
// rank-one factorization check for the rescaled sub-Bergman kernel.

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "subbergman/analytic.hpp"
#include "subbergman/bergman.hpp"
#include "subbergman/operators.hpp"

namespace subbergman {

using Evaluator = std::function<Complex(Complex)>;

/// gamma / psi with both polynomials bounded on the disk; sup norms are sampled on the circle.
struct SmirnovQuotient {
  PowerSeriesPoly numerator;
  PowerSeriesPoly denominator;
  double numerator_sup = 0.0;
  double denominator_sup = 0.0;

  static SmirnovQuotient make(PowerSeriesPoly gamma, PowerSeriesPoly psi, int boundary_samples = 1024);
  Complex operator()(Complex z) const { return numerator(z) / denominator(z); }
};

enum class ConvergenceVerdict { converges, no_convergence_detected };

const char* to_string(ConvergenceVerdict v);

inline constexpr double kConvergenceTolerance = 1e-3;
inline constexpr int kMaxProbeDepth = 40;

struct RadialProbeReport {
  double theta = 0.0;
  std::vector<double> radii;     // r_k = 1 - 2^-k, k = 1..depth (moduli of the probe points)
  std::vector<Complex> points;
  std::vector<Complex> values;
  std::vector<double> oscillation;  // oscillation[K-1] = max_{k,l >= K} |v_k - v_l|
  double tail_oscillation = 0.0;    // oscillation at K = depth - 5
  ConvergenceVerdict verdict = ConvergenceVerdict::no_convergence_detected;
};

/// Evaluates f at r_k e^{i theta}. CONVERGES iff the oscillation over the last
/// six radii is below 1e-3. Throws DomainError if depth is outside 6..40 or f
/// fails (throws or returns a non-finite value) on the ray.
RadialProbeReport radial_probe(const Evaluator& f, double theta, int depth = 30);

struct StolzProbeReport {
  double theta = 0.0;
  double aperture = 0.0;
  // Radius, then the rays (1 - t_k e^{+i beta/2}) xi and (1 - t_k e^{-i beta/2}) xi.
  std::array<RadialProbeReport, 3> paths;
  Complex limit_estimate;
  double spread = 0.0;  // max distance between the three final values
  ConvergenceVerdict verdict = ConvergenceVerdict::no_convergence_detected;
};

/// Requires 0 < aperture <= 1.2.
StolzProbeReport stolz_probe(const Evaluator& f, double theta, double aperture, int depth = 30);

/// sum_{n < terms} z^(2^n); |z| < 1, terms <= 30.
Complex gap_series_eval(int terms, Complex z);

/// ||sum_{n < terms} z^(2^n)||^2 in A^2_alpha from the closed-form monomial norms.
double gap_series_norm_squared(int terms, double alpha = 0.0);

/// phi'(a) (z - a)^2 phi(z) K^{alpha-1, phi}(z, w) / K^{alpha-2}(z, w),
/// with K^{alpha-2}(z, w) = (1 - z conj(w))^(-alpha).
Complex doublestar_ratio(double alpha, const MoebiusMap& phi, Complex z, Complex w);

/// The explicit product (1-|a|^2)/((1-conj(a) z)(1-a conj(w))) * (a-z)/(1-conj(a) z) * (z-a)^2,
/// the closed-form rescaled kernel divided by K^{alpha-2}. Equals doublestar_ratio
/// up to the constant factor -xi^2 / (1 - |a|^2).
Complex doublestar_display_ratio(const MoebiusMap& phi, Complex z, Complex w);

struct FactorizationTuple {
  Complex z1, z2, w1, w2;
};

struct FactorizationReport {
  double alpha = 0.0;
  std::vector<FactorizationTuple> tuples;
  std::vector<double> defects;  // |R(z1,w1) R(z2,w2) - R(z1,w2) R(z2,w1)|
  double max_defect = 0.0;
  // max |R - c * display| with c = -xi^2 / (1 - |a|^2), over all tuple points
  double max_display_mismatch = 0.0;
};

inline constexpr double kDoublestarMargin = 0.05;

/// Requires alpha > 0 and every point at distance >= 0.05 from a.
FactorizationReport doublestar_factorization_check(double alpha, const MoebiusMap& phi,
                                                   const std::vector<FactorizationTuple>& tuples);

/// Seeded tuples in |z| <= radius keeping the 0.05 margin from `avoid`.
std::vector<FactorizationTuple> sample_factorization_tuples(std::uint64_t seed, int count, Complex avoid,
                                                            double radius = 0.9);

struct CyclicityReport {
  std::vector<int> degrees;
  std::vector<double> residuals;
  int n_work = 0;
  int excluded_components = 0;
  double eigen_cutoff = kEigenClamp;
  bool inconclusive = false;
};

/// For each d: min over polynomials p of degree <= d of ||1 - psi p|| in the
/// H^alpha(phi) norm <M^+ g, g>^{1/2}, M = I - T_phi T_phi^* on the working basis
/// of size space.truncation() + 1. Eigencomponents below 1e-8 are excluded.
/// Requires ascending degrees with deg psi + max degree <= truncation - buffer.
CyclicityReport cyclicity_residual_probe(const PowerSeriesPoly& psi, const BergmanSpaceModel& space,
                                         const AnalyticMap& phi, const std::vector<int>& degrees,
                                         int buffer = kDefaultBuffer);

}  // namespace subbergman

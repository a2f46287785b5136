#include "subbergman/boundary.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "subbergman/errors.hpp"

namespace subbergman {
namespace {

Complex checked_eval(const Evaluator& f, Complex z) {
  Complex v;
  try {
    v = f(z);
  } catch (const std::exception& e) {
    std::ostringstream os;
    os << "probe evaluator failed at " << z << ": " << e.what();
    throw DomainError(os.str());
  }
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    std::ostringstream os;
    os << "probe evaluator returned a non-finite value at " << z;
    throw DomainError(os.str());
  }
  return v;
}

// Probe along z_k = (1 - 2^-k direction) xi.
RadialProbeReport probe_path(const Evaluator& f, double theta, Complex direction, int depth) {
  if (depth < 6 || depth > kMaxProbeDepth) throw DomainError("probe: depth must lie in 6..40");
  const Complex xi = std::polar(1.0, theta);
  RadialProbeReport r;
  r.theta = theta;
  for (int k = 1; k <= depth; ++k) {
    const Complex z = (1.0 - std::ldexp(1.0, -k) * direction) * xi;
    r.points.push_back(z);
    r.radii.push_back(std::abs(z));
    r.values.push_back(checked_eval(f, z));
  }
  // oscillation[K-1] = max over k, l >= K; filled from the tail forward.
  r.oscillation.assign(depth, 0.0);
  double running = 0.0;
  for (int k = depth - 1; k >= 0; --k) {
    for (int l = k + 1; l < depth; ++l) running = std::max(running, std::abs(r.values[k] - r.values[l]));
    r.oscillation[k] = running;
  }
  r.tail_oscillation = r.oscillation[depth - 6];
  r.verdict = r.tail_oscillation < kConvergenceTolerance ? ConvergenceVerdict::converges
                                                         : ConvergenceVerdict::no_convergence_detected;
  return r;
}

}  // namespace

SmirnovQuotient SmirnovQuotient::make(PowerSeriesPoly gamma, PowerSeriesPoly psi, int boundary_samples) {
  if (psi.is_zero()) throw DomainError("SmirnovQuotient: denominator is identically zero");
  SmirnovQuotient q{std::move(gamma), std::move(psi), 0.0, 0.0};
  for (int j = 0; j < boundary_samples; ++j) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * j / boundary_samples);
    q.numerator_sup = std::max(q.numerator_sup, std::abs(q.numerator(z)));
    q.denominator_sup = std::max(q.denominator_sup, std::abs(q.denominator(z)));
  }
  return q;
}

const char* to_string(ConvergenceVerdict v) {
  return v == ConvergenceVerdict::converges ? "CONVERGES" : "NO_CONVERGENCE_DETECTED";
}

RadialProbeReport radial_probe(const Evaluator& f, double theta, int depth) {
  return probe_path(f, theta, 1.0, depth);
}

StolzProbeReport stolz_probe(const Evaluator& f, double theta, double aperture, int depth) {
  if (!(aperture > 0.0 && aperture <= 1.2)) throw DomainError("stolz_probe: aperture must lie in (0, 1.2]");
  StolzProbeReport s;
  s.theta = theta;
  s.aperture = aperture;
  const double half = aperture / 2.0;
  s.paths[0] = probe_path(f, theta, 1.0, depth);
  s.paths[1] = probe_path(f, theta, std::polar(1.0, half), depth);
  s.paths[2] = probe_path(f, theta, std::polar(1.0, -half), depth);
  const Complex v0 = s.paths[0].values.back(), v1 = s.paths[1].values.back(), v2 = s.paths[2].values.back();
  s.spread = std::max({std::abs(v0 - v1), std::abs(v0 - v2), std::abs(v1 - v2)});
  s.limit_estimate = v0;
  const bool each = std::all_of(s.paths.begin(), s.paths.end(),
                                [](const auto& p) { return p.verdict == ConvergenceVerdict::converges; });
  s.verdict = each && s.spread < kConvergenceTolerance ? ConvergenceVerdict::converges
                                                       : ConvergenceVerdict::no_convergence_detected;
  return s;
}

Complex gap_series_eval(int terms, Complex z) {
  if (terms < 0 || terms > 30) throw DomainError("gap_series_eval: terms must lie in 0..30");
  if (!(std::abs(z) < 1.0)) throw DomainError("gap_series_eval: |z| must be < 1");
  Complex sum{}, power = z;
  for (int n = 0; n < terms; ++n) {
    sum += power;
    power *= power;
  }
  return sum;
}

double gap_series_norm_squared(int terms, double alpha) {
  if (terms < 0 || terms > 62) throw DomainError("gap_series_norm_squared: terms out of range");
  double total = 0.0;
  for (int n = 0; n < terms; ++n) total += monomial_norm_squared(alpha, 1LL << n);
  return total;
}

// ---------------------------------------------------------------------------
// Rescaled kernel factorization

Complex doublestar_ratio(double alpha, const MoebiusMap& phi, Complex z, Complex w) {
  const Complex a = phi.a();
  const auto shifted = KernelSpec::sub_bergman(alpha - 1.0, phi);
  const auto lowered = KernelSpec::generalized(alpha);
  const Complex d = z - a;
  return phi.derivative(a) * d * d * phi(z) * kernel_eval(shifted, z, w) / kernel_eval(lowered, z, w);
}

Complex doublestar_display_ratio(const MoebiusMap& phi, Complex z, Complex w) {
  const Complex a = phi.a();
  const Complex ca = std::conj(a);
  const Complex d = z - a;
  return (1.0 - std::norm(a)) / ((1.0 - ca * z) * (1.0 - a * std::conj(w))) * (a - z) / (1.0 - ca * z) * d * d;
}

FactorizationReport doublestar_factorization_check(double alpha, const MoebiusMap& phi,
                                                   const std::vector<FactorizationTuple>& tuples) {
  if (!(alpha > 0.0)) throw DomainError("doublestar_factorization_check: alpha must be positive");
  const Complex a = phi.a();
  const Complex scale = -phi.xi() * phi.xi() / (1.0 - std::norm(a));
  FactorizationReport report;
  report.alpha = alpha;
  report.tuples = tuples;
  for (const auto& t : tuples) {
    for (Complex p : {t.z1, t.z2, t.w1, t.w2})
      if (std::abs(p - a) < kDoublestarMargin) {
        std::ostringstream os;
        os << "doublestar_factorization_check: point " << p << " within 0.05 of a = " << a;
        throw DomainError(os.str());
      }
    auto R = [&](Complex z, Complex w) {
      const Complex r = doublestar_ratio(alpha, phi, z, w);
      report.max_display_mismatch =
          std::max(report.max_display_mismatch, std::abs(r - scale * doublestar_display_ratio(phi, z, w)));
      return r;
    };
    const double defect = std::abs(R(t.z1, t.w1) * R(t.z2, t.w2) - R(t.z1, t.w2) * R(t.z2, t.w1));
    report.defects.push_back(defect);
    report.max_defect = std::max(report.max_defect, defect);
  }
  return report;
}

std::vector<FactorizationTuple> sample_factorization_tuples(std::uint64_t seed, int count, Complex avoid,
                                                            double radius) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x5eedu};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&] {
    for (;;) {
      const Complex z = std::polar(radius * std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng));
      if (std::abs(z - avoid) >= kDoublestarMargin) return z;
    }
  };
  std::vector<FactorizationTuple> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    FactorizationTuple t;
    t.z1 = draw();
    t.z2 = draw();
    t.w1 = draw();
    t.w2 = draw();
    out.push_back(t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cyclicity

CyclicityReport cyclicity_residual_probe(const PowerSeriesPoly& psi, const BergmanSpaceModel& space,
                                         const AnalyticMap& phi, const std::vector<int>& degrees, int buffer) {
  if (psi.is_zero()) throw DomainError("cyclicity_residual_probe: psi is identically zero");
  if (!std::is_sorted(degrees.begin(), degrees.end()) || (!degrees.empty() && degrees.front() < 0))
    throw DomainError("cyclicity_residual_probe: degrees must be non-negative and ascending");
  const int n_work = space.truncation();
  if (!degrees.empty() && psi.degree() + degrees.back() > n_work - buffer)
    throw DomainError("cyclicity_residual_probe: deg psi + max degree exceeds truncation - buffer");

  CyclicityReport report;
  report.degrees = degrees;
  report.n_work = n_work;

  // The leading block of I - T T^* only involves the leading block of T.
  const auto m = defect_matrix(space, phi, n_work, 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m.entries);
  const auto& ev = solver.eigenvalues();
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] >= kEigenClamp)
      kept.push_back(i);
    else
      ++report.excluded_components;
  }
  Eigen::MatrixXcd whiten(static_cast<Eigen::Index>(kept.size()), ev.size());
  for (size_t r = 0; r < kept.size(); ++r)
    whiten.row(r) = solver.eigenvectors().col(kept[r]).adjoint() / std::sqrt(ev[kept[r]]);

  const Eigen::VectorXcd one = space.to_orthonormal(PowerSeriesPoly::constant(1.0), n_work + 1);
  Eigen::VectorXcd kept_part(static_cast<Eigen::Index>(kept.size()));
  for (size_t r = 0; r < kept.size(); ++r) kept_part[r] = solver.eigenvectors().col(kept[r]).dot(one);
  if (kept.empty() || kept_part.norm() < 1e-6 * one.norm()) {
    report.inconclusive = true;
    report.residuals.assign(degrees.size(), std::numeric_limits<double>::quiet_NaN());
    return report;
  }

  const Eigen::VectorXcd target = whiten * one;
  const int max_degree = degrees.empty() ? -1 : degrees.back();
  Eigen::MatrixXcd columns(n_work + 1, max_degree + 1);
  for (int j = 0; j <= max_degree; ++j)
    columns.col(j) = space.to_orthonormal(psi * PowerSeriesPoly::monomial(j), n_work + 1);
  const Eigen::MatrixXcd design = whiten * columns;

  double best = std::numeric_limits<double>::infinity();
  for (int d : degrees) {
    const Eigen::MatrixXcd a = design.leftCols(d + 1);
    const Eigen::VectorXcd c = a.completeOrthogonalDecomposition().solve(target);
    // Polynomials of degree <= d contain those of smaller degree.
    best = std::min(best, (target - a * c).norm());
    report.residuals.push_back(best);
  }
  return report;
}

}  // namespace subbergman

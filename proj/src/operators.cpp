#include "subbergman/operators.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "subbergman/errors.hpp"

namespace subbergman {
namespace {

// A model of the same space with at least `size` basis vectors.
const BergmanSpaceModel& ensure_truncation(const BergmanSpaceModel& space, int size,
                                           std::optional<BergmanSpaceModel>& storage) {
  if (space.truncation() >= size) return space;
  storage.emplace(space.alpha(), size);
  return *storage;
}

void require_unweighted(const BergmanSpaceModel& space, const char* what) {
  if (space.alpha() != 0.0) {
    std::ostringstream os;
    os << what << ": the closed form is an identity of the unweighted Bergman space (alpha = 0), got alpha = "
       << space.alpha();
    throw DomainError(os.str());
  }
}

Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

PowerSeriesPoly OperatorMatrix::apply(const PowerSeriesPoly& f) const {
  // Without the model at hand, rebuild norms from the stored weight.
  BergmanSpaceModel space(alpha, std::max(size() - 1, 1));
  const Eigen::VectorXcd y = entries * space.to_orthonormal(f.truncated(size() - 1), size());
  return space.from_orthonormal(y);
}

OperatorMatrix toeplitz_matrix(const BergmanSpaceModel& space, const PowerSeriesPoly& symbol, int N) {
  if (N < 0 || N > space.truncation()) {
    std::ostringstream os;
    os << "toeplitz_matrix: N = " << N << " exceeds the space truncation " << space.truncation();
    throw DomainError(os.str());
  }
  const auto norms = space.norms();
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(N + 1, N + 1);
  for (int n = 0; n <= N; ++n)
    for (int m = n; m <= std::min(N, n + symbol.degree()); ++m) t(m, n) = symbol.coeff(m - n) * (norms[m] / norms[n]);
  return {std::move(t), space.alpha(), OperatorKind::toeplitz};
}

OperatorMatrix adjoint(const OperatorMatrix& m) {
  OperatorKind kind = OperatorKind::other;
  if (m.kind == OperatorKind::toeplitz) kind = OperatorKind::adjoint;
  if (m.kind == OperatorKind::adjoint) kind = OperatorKind::toeplitz;
  if (m.kind == OperatorKind::defect || m.kind == OperatorKind::defect_sqrt) kind = m.kind;
  return {m.entries.adjoint(), m.alpha, kind};
}

std::pair<double, double> hermitian_spectrum_bounds(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

double operator_norm(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
}

OperatorMatrix defect_matrix(const BergmanSpaceModel& space, const PowerSeriesPoly& symbol, int N, int buffer) {
  if (N < 0 || buffer < 0) throw DomainError("defect_matrix: N and buffer must be non-negative");
  const int n_work = N + buffer;
  std::optional<BergmanSpaceModel> storage;
  const auto& work = ensure_truncation(space, n_work, storage);
  const auto t = toeplitz_matrix(work, symbol.truncated(n_work), n_work).entries;
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(n_work + 1, n_work + 1) - t * t.adjoint();
  Eigen::MatrixXcd m = hermitian_part(full.topLeftCorner(N + 1, N + 1));
  const auto [lo, hi] = hermitian_spectrum_bounds(m);
  if (lo < -kEigenClamp) {
    std::ostringstream os;
    os << "defect_matrix: eigenvalue " << lo << " below -1e-8; the symbol is not a contraction";
    throw ContractViolation(os.str());
  }
  (void)hi;
  return {std::move(m), space.alpha(), OperatorKind::defect};
}

OperatorMatrix defect_matrix(const BergmanSpaceModel& space, const AnalyticMap& phi, int N, int buffer) {
  return defect_matrix(space, series_expand(phi, N + buffer).series, N, buffer);
}

OperatorMatrix defect_sqrt(const OperatorMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian_part(m.entries));
  Eigen::VectorXd ev = solver.eigenvalues();
  if (ev.size() && ev.minCoeff() < -kEigenClamp) {
    std::ostringstream os;
    os << "defect_sqrt: eigenvalue " << ev.minCoeff() << " below -1e-8";
    throw ContractViolation(os.str());
  }
  for (auto& v : ev) v = v > 0.0 ? std::sqrt(v) : 0.0;
  const auto& vecs = solver.eigenvectors();
  Eigen::MatrixXcd root = vecs * ev.cast<Complex>().asDiagonal() * vecs.adjoint();
  return {hermitian_part(root), m.alpha, OperatorKind::defect_sqrt};
}

// ---------------------------------------------------------------------------
// Closed forms

ClosedFormEvaluator::ClosedFormEvaluator(std::function<Complex(Complex)> raw, std::vector<Complex> removable_points)
    : raw_(std::move(raw)), points_(std::move(removable_points)) {}

Complex ClosedFormEvaluator::operator()(Complex z) const {
  for (const auto& c : points_)
    if (std::abs(z - c) < kGuardRadius) return guarded(z, c);
  return raw_(z);
}

Complex ClosedFormEvaluator::guarded(Complex z, Complex center) const {
  // Samples on |zeta - center| = rho give Taylor coefficients by a discrete Fourier transform.
  constexpr int k = kGuardNodes;
  constexpr double rho = kGuardRadius;
  std::array<Complex, k> samples;
  for (int j = 0; j < k; ++j) samples[j] = raw_(center + std::polar(rho, 2.0 * std::numbers::pi * j / k));
  const Complex u = (z - center) / rho;
  Complex acc{}, upow = 1.0;
  for (int n = 0; n < k; ++n) {
    Complex cn{};
    for (int j = 0; j < k; ++j) cn += samples[j] * std::polar(1.0, -2.0 * std::numbers::pi * j * n / k);
    acc += (cn / static_cast<double>(k)) * upow;
    upow *= u;
  }
  return acc;
}

ClosedFormEvaluator toeplitz_conj_blaschke_explicit(const PowerSeriesPoly& f, const BlaschkeProduct& B,
                                                    const BergmanSpaceModel& space, Complex antiderivative_offset) {
  require_unweighted(space, "toeplitz_conj_blaschke_explicit");
  if (!B.has_distinct_zeros()) throw DomainError("toeplitz_conj_blaschke_explicit: zeros of B are not distinct");
  if (f.is_zero() && antiderivative_offset == 0.0) return ClosedFormEvaluator([](Complex) { return Complex{}; }, {});

  PowerSeriesPoly F = antiderivative(f, antiderivative_offset);
  std::vector<Complex> zeros(B.zeros().begin(), B.zeros().end());
  std::vector<Complex> residues;
  residues.reserve(zeros.size());
  for (const auto& a : zeros) residues.push_back(F(a) / B.derivative(a));

  auto raw = [f, F, B, zeros, residues](Complex z) {
    const Complex b = B(z);
    Complex v = f(z) / b - F(z) * B.derivative(z) / (b * b);
    for (size_t k = 0; k < zeros.size(); ++k) {
      const Complex d = z - zeros[k];
      v += residues[k] / (d * d);
    }
    return v;
  };
  return ClosedFormEvaluator(std::move(raw), std::move(zeros));
}

PowerSeriesPoly toeplitz_conj_matrix(const PowerSeriesPoly& f, const BlaschkeProduct& B, const BergmanSpaceModel& space,
                                     int n_work) {
  if (f.degree() > n_work) throw DomainError("toeplitz_conj_matrix: deg f exceeds n_work");
  std::optional<BergmanSpaceModel> storage;
  const auto& work = ensure_truncation(space, n_work, storage);
  const auto t = toeplitz_matrix(work, series_expand(B, n_work).series, n_work);
  const Eigen::VectorXcd y = t.entries.adjoint() * work.to_orthonormal(f, n_work + 1);
  return work.from_orthonormal(y);
}

ClosedFormEvaluator defect_action_explicit(const PowerSeriesPoly& gamma, const PowerSeriesPoly& psi,
                                           const MoebiusMap& phi, const BergmanSpaceModel& space, int degree,
                                           double domain_radius, Complex antiderivative_offset) {
  require_unweighted(space, "defect_action_explicit");
  const RationalFn quotient(gamma, psi, domain_radius);
  const PowerSeriesPoly f = series_expand(quotient, degree).series;
  if (f.is_zero() && antiderivative_offset == 0.0) return ClosedFormEvaluator([](Complex) { return Complex{}; }, {});

  const PowerSeriesPoly F = antiderivative(f, antiderivative_offset);
  const Complex a = phi.a();
  const Complex Fa = F(a);
  const Complex dphi_a = phi.derivative(a);
  auto raw = [F, phi, a, Fa, dphi_a](Complex z) {
    const Complex p = phi(z);
    const Complex d = z - a;
    return F(z) * phi.derivative(z) / p - Fa * p / (dphi_a * d * d);
  };
  return ClosedFormEvaluator(std::move(raw), {a});
}

DefectApplication apply_defect(const BergmanSpaceModel& space, const AnalyticMap& phi, const PowerSeriesPoly& f, int N,
                               int buffer, double r_max) {
  const auto m = defect_matrix(space, phi, N, buffer);
  std::optional<BergmanSpaceModel> storage;
  const auto& work = ensure_truncation(space, N, storage);
  DefectApplication out;
  out.input = f;
  out.n_work = N + buffer;
  out.n_trust = N;
  out.r_max = r_max;
  out.output = work.from_orthonormal(m.entries * work.to_orthonormal(f.truncated(N), N + 1));

  const double last = std::abs(out.output.coeff(N));
  const double prev = std::abs(out.output.coeff(N - 1));
  if (last == 0.0) {
    out.tail_bound = 0.0;
  } else {
    const double q = (prev > 0.0 ? last / prev : 1.0) * r_max;
    out.tail_bound = q < 1.0 ? last * std::pow(r_max, N) * q / (1.0 - q) : std::numeric_limits<double>::infinity();
  }
  return out;
}

RangeMappingReport range_mapping_report(const BergmanSpaceModel& space_in, const AnalyticMap& phi,
                                        const std::vector<PowerSeriesPoly>& samples, int N, int buffer) {
  if (!(space_in.alpha() > 0.0))
    throw DomainError("range_mapping_report: alpha must be positive so that A^2_{alpha-1} has a norm");
  std::optional<BergmanSpaceModel> storage;
  const auto& in = ensure_truncation(space_in, N, storage);
  const BergmanSpaceModel out_space(in.alpha() - 1.0, N);
  const auto root = defect_sqrt(defect_matrix(in, phi, N, buffer));

  RangeMappingReport report;
  report.alpha_in = in.alpha();
  report.alpha_out = out_space.alpha();
  report.n = N;
  report.buffer = buffer;
  report.max_ratio = 0.0;
  report.min_ratio = std::numeric_limits<double>::infinity();
  for (const auto& f : samples) {
    if (f.degree() > N) throw DomainError("range_mapping_report: sample degree exceeds N");
    const Eigen::VectorXcd x = in.to_orthonormal(f, N + 1);
    const double denom = x.norm();
    if (denom == 0.0) throw DomainError("range_mapping_report: zero sample");
    const PowerSeriesPoly image = in.from_orthonormal(root.entries * x);
    const double ratio = out_space.norm(image) / denom;
    report.degrees.push_back(f.degree());
    report.ratios.push_back(ratio);
    report.all_finite = report.all_finite && std::isfinite(ratio);
    report.max_ratio = std::max(report.max_ratio, ratio);
    report.min_ratio = std::min(report.min_ratio, ratio);
  }
  return report;
}

}  // namespace subbergman

#include "subbergman/pick.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>

#include "subbergman/errors.hpp"
#include "subbergman/parallel.hpp"

namespace subbergman {

KernelFn as_kernel_fn(const KernelSpec& k) {
  return [k](Complex z, Complex w) { return kernel_eval(k, z, w); };
}

void PickInstance::validate() const {
  if (!kernel) throw DomainError("PickInstance: missing kernel");
  if (points.empty()) throw DomainError("PickInstance: no points");
  if (targets.size() != points.size()) throw DomainError("PickInstance: need one target per point");
  const auto r = targets.front().rows();
  for (const auto& w : targets)
    if (w.rows() != r || w.cols() != r || r == 0) throw DomainError("PickInstance: targets must all be r x r");
  for (size_t i = 0; i < points.size(); ++i) {
    if (!(std::abs(points[i]) <= 0.9)) throw DomainError("PickInstance: points must satisfy |z| <= 0.9");
    for (size_t j = i + 1; j < points.size(); ++j)
      if (std::abs(points[i] - points[j]) < 1e-8) throw DomainError("PickInstance: points are not distinct");
  }
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::psd:
      return "PSD";
    case Verdict::not_psd:
      return "NOT_PSD";
    case Verdict::inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

Verdict classify(double min_eigenvalue, double tol) {
  if (min_eigenvalue >= -tol) return Verdict::psd;
  if (min_eigenvalue < -10.0 * tol) return Verdict::not_psd;
  return Verdict::inconclusive;
}

double min_hermitian_eigenvalue(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Eigen::MatrixXcd pick_matrix(const PickInstance& instance) {
  instance.validate();
  const int n = static_cast<int>(instance.points.size());
  const int r = instance.block_size();
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(r, r);
  Eigen::MatrixXcd m(n * r, n * r);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.block(i * r, j * r, r, r) = instance.kernel(instance.points[i], instance.points[j]) *
                                     (eye - instance.targets[i] * instance.targets[j].adjoint());
  return m;
}

PickTestReport pick_test(const PickInstance& instance, double tol) {
  PickTestReport report;
  report.tolerance = tol;
  report.min_eigenvalue = min_hermitian_eigenvalue(pick_matrix(instance));
  report.verdict = classify(report.min_eigenvalue, tol);
  if (report.verdict == Verdict::not_psd) report.witness = instance.points;
  return report;
}

KernelFn normalized_kernel(KernelFn k, Complex z0) {
  const Complex k00 = k(z0, z0);
  if (std::abs(k00) == 0.0) throw DomainError("normalized_kernel: k(z0, z0) vanishes");
  return [k = std::move(k), z0, k00](Complex z, Complex w) {
    const Complex kz = k(z, z0), kw = k(z0, w);
    if (std::abs(kz) < 1e-14 || std::abs(kw) < 1e-14) {
      std::ostringstream os;
      os << "normalized_kernel: normalizer vanishes at probe point " << (std::abs(kz) < 1e-14 ? z : w);
      throw DomainError(os.str());
    }
    return k(z, w) * k00 / (kz * kw);
  };
}

Eigen::MatrixXcd oneminus_matrix(const KernelFn& k, const std::vector<Complex>& points, Complex z0) {
  const auto kn = normalized_kernel(k, z0);
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXcd f(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const Complex v = kn(points[i], points[j]);
      if (v == 0.0) throw DomainError("oneminus_matrix: normalized kernel vanishes on a pair of points");
      f(i, j) = 1.0 - 1.0 / v;
    }
  return f;
}

PickTestReport cnp_oneminus_test(const KernelFn& k, const std::vector<Complex>& points, Complex z0, double tol) {
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j)
      if (std::abs(points[i] - points[j]) < 1e-8) throw DomainError("cnp_oneminus_test: points are not distinct");
  PickTestReport report;
  report.tolerance = tol;
  report.min_eigenvalue = min_hermitian_eigenvalue(oneminus_matrix(k, points, z0));
  report.verdict = classify(report.min_eigenvalue, tol);
  if (report.verdict == Verdict::not_psd) report.witness = points;
  return report;
}

std::vector<Complex> sample_disk_points(std::uint64_t seed, std::uint64_t trial, int n, double radius) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double r = radius * std::sqrt(unit(rng));
    const double theta = 2.0 * std::numbers::pi * unit(rng);
    pts.push_back(std::polar(r, theta));
  }
  return pts;
}

std::optional<WitnessResult> cnp_witness_search(const KernelFn& k, int n_points, int trials, std::uint64_t seed,
                                                double tol, double radius, Complex z0) {
  if (n_points < 2) throw DomainError("cnp_witness_search: need at least two points");
  if (trials < 0) throw DomainError("cnp_witness_search: negative trial count");

  std::mutex mutex;
  std::optional<WitnessResult> best;
  std::atomic<std::uint64_t> best_trial{std::numeric_limits<std::uint64_t>::max()};
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    // Later trials cannot displace an earlier witness.
    if (t > best_trial.load()) return;
    auto pts = sample_disk_points(seed, t, n_points, radius);
    const double lambda = min_hermitian_eigenvalue(oneminus_matrix(k, pts, z0));
    if (lambda < -10.0 * tol) {
      std::lock_guard lock(mutex);
      if (!best || t < best->trial) {
        best = WitnessResult{t, std::move(pts), lambda};
        best_trial = t;
      }
    }
  });
  return best;
}

}  // namespace subbergman

#pragma once

// Numerical complete Nevanlinna-Pick diagnostics.

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "subbergman/bergman.hpp"

namespace subbergman {

using KernelFn = std::function<Complex(Complex, Complex)>;

KernelFn as_kernel_fn(const KernelSpec& k);

/// Kernel with points z_1..z_n (pairwise >= 1e-8 apart, |z_i| <= 0.9) and r x r targets W_1..W_n.
struct PickInstance {
  KernelFn kernel;
  std::vector<Complex> points;
  std::vector<Eigen::MatrixXcd> targets;

  int block_size() const { return targets.empty() ? 0 : static_cast<int>(targets.front().rows()); }
  // Throws DomainError on invariant violations.
  void validate() const;
};

enum class Verdict { psd, not_psd, inconclusive };

const char* to_string(Verdict v);

inline constexpr double kPickTolerance = 1e-10;

struct PickTestReport {
  double min_eigenvalue = 0.0;
  Verdict verdict = Verdict::inconclusive;
  double tolerance = kPickTolerance;
  std::vector<Complex> witness;  // filled for NOT_PSD
};

/// PSD when lambda >= -tol, NOT_PSD when lambda < -10 tol, INCONCLUSIVE in between.
Verdict classify(double min_eigenvalue, double tol);

/// Minimum eigenvalue of the Hermitian part.
double min_hermitian_eigenvalue(const Eigen::MatrixXcd& m);

/// Block (i, j) = K(z_i, z_j) (I_r - W_i W_j^*).
Eigen::MatrixXcd pick_matrix(const PickInstance& instance);

/// Verdict on pick_matrix(instance).
PickTestReport pick_test(const PickInstance& instance, double tol = kPickTolerance);

/// k(z, w) k(z0, z0) / (k(z, z0) k(z0, w)). The returned evaluator throws
/// DomainError when a normalizing factor vanishes at a probe point.
KernelFn normalized_kernel(KernelFn k, Complex z0 = 0.0);

/// F_ij = 1 - 1 / knorm(z_i, z_j) for the kernel normalized at z0.
Eigen::MatrixXcd oneminus_matrix(const KernelFn& k, const std::vector<Complex>& points, Complex z0 = 0.0);

PickTestReport cnp_oneminus_test(const KernelFn& k, const std::vector<Complex>& points, Complex z0 = 0.0,
                                 double tol = kPickTolerance);

/// n points drawn uniformly from the disk of the given radius; depends only on (seed, trial).
std::vector<Complex> sample_disk_points(std::uint64_t seed, std::uint64_t trial, int n, double radius);

struct WitnessResult {
  std::uint64_t trial = 0;
  std::vector<Complex> points;
  double min_eigenvalue = 0.0;
};

/// First trial (by index) whose F-matrix has an eigenvalue below -10 tol.
/// Trials run in parallel; the answer does not depend on scheduling.
std::optional<WitnessResult> cnp_witness_search(const KernelFn& k, int n_points, int trials, std::uint64_t seed,
                                                double tol = kPickTolerance, double radius = 0.8, Complex z0 = 0.0);

}  // namespace subbergman

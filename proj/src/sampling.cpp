#include "subbergman/sampling.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace subbergman {
namespace {

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t index, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), stream};
  return std::mt19937_64(seq);
}

}  // namespace

std::vector<Complex> spiral_points(int count, double radius) {
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Complex> pts;
  pts.reserve(count);
  for (int k = 0; k < count; ++k)
    pts.push_back(std::polar(radius * std::sqrt((k + 0.5) / count), golden_angle * k));
  return pts;
}

std::vector<double> uniform_angles(int count, double offset) {
  std::vector<double> out;
  out.reserve(count);
  for (int j = 0; j < count; ++j) out.push_back(2.0 * std::numbers::pi * (j + offset) / count);
  return out;
}

ToeplitzCase random_toeplitz_case(std::uint64_t seed, std::uint64_t index, int max_degree, int max_zeros, double zero_radius,
                            double min_separation, int point_count, double point_radius) {
  auto rng = make_rng(seed, index, 0x1e44au);
  std::uniform_real_distribution<double> unit(0.0, 1.0), sym(-1.0, 1.0);
  auto disk = [&](double r) { return std::polar(r * std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng)); };

  const int degree = std::uniform_int_distribution<int>(0, max_degree)(rng);
  std::vector<Complex> coeffs(static_cast<size_t>(degree) + 1);
  for (auto& c : coeffs) c = {sym(rng), sym(rng)};
  if (coeffs.back() == 0.0) coeffs.back() = 1.0;

  const int order = std::uniform_int_distribution<int>(1, max_zeros)(rng);
  std::vector<Complex> zeros;
  while (static_cast<int>(zeros.size()) < order) {
    const Complex a = disk(zero_radius);
    bool ok = true;
    for (const auto& b : zeros) ok = ok && std::abs(a - b) >= min_separation;
    if (ok) zeros.push_back(a);
  }
  const Complex xi = std::polar(1.0, 2.0 * std::numbers::pi * unit(rng));

  std::vector<Complex> points;
  while (static_cast<int>(points.size()) < point_count) {
    const Complex z = disk(point_radius);
    bool ok = true;
    for (const auto& a : zeros) ok = ok && std::abs(z - a) >= 0.05;
    if (ok) points.push_back(z);
  }
  return {PowerSeriesPoly(std::move(coeffs)), BlaschkeProduct(xi, std::move(zeros)), std::move(points)};
}

PowerSeriesPoly random_polynomial(std::uint64_t seed, std::uint64_t index, int max_degree) {
  auto rng = make_rng(seed, index, 0x9017u);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int degree = std::uniform_int_distribution<int>(0, max_degree)(rng);
  std::vector<Complex> coeffs(static_cast<size_t>(degree) + 1);
  for (auto& c : coeffs) c = {normal(rng), normal(rng)};
  return PowerSeriesPoly(std::move(coeffs));
}

}  // namespace subbergman

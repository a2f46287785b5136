#pragma once

// Deterministic point sets and seeded random test cases shared by the
// verification commands and the acceptance suite.

#include <cstdint>
#include <vector>

#include "subbergman/analytic.hpp"

namespace subbergman {

/// count points on a Fibonacci spiral filling |z| <= radius.
std::vector<Complex> spiral_points(int count, double radius);

/// count equispaced angles 2 pi (j + offset) / count; the default offset is
/// irrational so no angle is a dyadic rational multiple of 2 pi.
std::vector<double> uniform_angles(int count, double offset = 0.6180339887498949);

struct ToeplitzCase {
  PowerSeriesPoly f;
  BlaschkeProduct blaschke;
  std::vector<Complex> points;
};

/// Case `index` of the seeded family: deg f <= max_degree with coefficients in the unit
/// square, 1..max_zeros zeros in |a| <= zero_radius pairwise >= min_separation apart,
/// and point_count points in |z| <= point_radius at distance >= 0.05 from every zero.
ToeplitzCase random_toeplitz_case(std::uint64_t seed, std::uint64_t index, int max_degree = 20, int max_zeros = 3,
                            double zero_radius = 0.6, double min_separation = 0.1, int point_count = 200,
                            double point_radius = 0.7);

/// Polynomial with a degree uniform in 0..max_degree and standard complex normal coefficients.
PowerSeriesPoly random_polynomial(std::uint64_t seed, std::uint64_t index, int max_degree);

}  // namespace subbergman

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "subbergman/boundary.hpp"
#include "subbergman/errors.hpp"
#include "subbergman/sampling.hpp"

using namespace subbergman;

TEST_CASE("radial probe converges for a bounded quotient") {
  const auto q = SmirnovQuotient::make(PowerSeriesPoly{1.0, -1.0}, PowerSeriesPoly{1.0, -0.5});
  for (double th : uniform_angles(16)) {
    const auto r = radial_probe([&](Complex z) { return q(z); }, th, 30);
    CHECK(r.verdict == ConvergenceVerdict::converges);
    const Complex e = std::polar(1.0, th);
    CHECK(std::abs(r.values.back() - (1.0 - e) / (1.0 - 0.5 * e)) < 1e-8);
    for (size_t k = 1; k < r.oscillation.size(); ++k) CHECK(r.oscillation[k] <= r.oscillation[k - 1]);
    CHECK(r.radii.front() == 0.5);
  }
}

TEST_CASE("Smirnov quotient sup norms") {
  const auto q = SmirnovQuotient::make(PowerSeriesPoly{1.0, -1.0}, PowerSeriesPoly{2.0, 1.0});
  CHECK(std::abs(q.numerator_sup - 2.0) < 1e-12);
  CHECK(std::abs(q.denominator_sup - 3.0) < 1e-12);
  CHECK_THROWS_AS(SmirnovQuotient::make(PowerSeriesPoly{1.0}, PowerSeriesPoly{}), DomainError);
}

TEST_CASE("probe preconditions") {
  auto f = [](Complex z) { return z; };
  CHECK_THROWS_AS(radial_probe(f, 0.0, 5), DomainError);
  CHECK_THROWS_AS(radial_probe(f, 0.0, 41), DomainError);
  CHECK_THROWS_AS(radial_probe([](Complex) { return Complex(std::numeric_limits<double>::quiet_NaN()); }, 0.0),
                  DomainError);
  CHECK_THROWS_AS(radial_probe([](Complex) -> Complex { throw std::runtime_error("boom"); }, 0.0), DomainError);
  CHECK_THROWS_AS(stolz_probe(f, 0.0, 1.5), DomainError);
}

TEST_CASE("Stolz probe finds one limit for a continuous function") {
  const auto s = stolz_probe([](Complex z) { return 1.0 / (2.0 - z); }, 0.4, 1.0);
  CHECK(s.verdict == ConvergenceVerdict::converges);
  CHECK(s.spread < 1e-6);
}

TEST_CASE("Stolz probe separates path-dependent limits") {
  // The direction of approach: 1 along the radius, e^{+-i beta/2} along the rays.
  auto f = [](Complex z) { return (1.0 - z) / std::abs(1.0 - z); };
  const auto s = stolz_probe(f, 0.0, 1.0);
  for (const auto& p : s.paths) CHECK(p.verdict == ConvergenceVerdict::converges);
  CHECK(s.verdict == ConvergenceVerdict::no_convergence_detected);
  CHECK(std::abs(s.spread - std::abs(std::polar(1.0, 0.5) - std::polar(1.0, -0.5))) < 1e-6);
}

TEST_CASE("gap series: bounded norm, wild radial behaviour") {
  double expected = 0.0;
  for (int n = 0; n < 26; ++n) expected += 1.0 / (std::ldexp(1.0, n) + 1.0);
  CHECK(std::abs(gap_series_norm_squared(26) - expected) < 1e-14);
  CHECK(gap_series_norm_squared(26) <= 2.0);
  int wild = 0;
  for (double th : uniform_angles(64)) {
    const auto r = radial_probe([](Complex z) { return gap_series_eval(26, z); }, th, 30);
    wild += r.tail_oscillation > 0.5;
  }
  CHECK(wild >= 32);
  CHECK_THROWS_AS(gap_series_eval(31, 0.1), DomainError);
  CHECK(std::abs(gap_series_eval(3, 0.5) - (0.5 + 0.25 + 0.0625)) < 1e-16);
}

TEST_CASE("rescaled kernel at a = 0 is z cubed; the display carries the opposite sign") {
  const MoebiusMap phi(1.0, 0.0);
  for (const auto& z : spiral_points(20, 0.8)) {
    const Complex w{0.1, -0.3};
    CHECK(std::abs(doublestar_ratio(1.0, phi, z, w) - z * z * z) < 1e-14);
    CHECK(std::abs(doublestar_display_ratio(phi, z, w) + z * z * z) < 1e-14);
  }
}

TEST_CASE("rescaled kernel factors as a rank-one product") {
  for (double alpha : {0.5, 2.0}) {
    const MoebiusMap phi(std::polar(1.0, 0.3), {0.3, 0.2});
    const auto r = doublestar_factorization_check(alpha, phi, sample_factorization_tuples(1, 50, phi.a()));
    CHECK(r.max_defect < 1e-9);
    CHECK(r.max_display_mismatch < 1e-10);
  }
  const MoebiusMap phi(1.0, 0.3);
  CHECK_THROWS_AS(doublestar_factorization_check(0.0, phi, {}), DomainError);
  CHECK_THROWS_AS(doublestar_factorization_check(1.0, phi, {{0.31, 0.0, 0.0, 0.0}}), DomainError);
}

TEST_CASE("cyclicity residuals") {
  const BergmanSpaceModel space(0.0, 120);
  const AnalyticMap phi = MoebiusMap(1.0, 0.3);
  const auto one = cyclicity_residual_probe(PowerSeriesPoly{1.0}, space, phi, {0, 3});
  CHECK(one.residuals[0] < 1e-12);

  std::vector<int> degrees{0, 2, 4, 8, 16};
  const auto lin = cyclicity_residual_probe(PowerSeriesPoly{1.0, -0.5}, space, phi, degrees);
  for (size_t i = 1; i < lin.residuals.size(); ++i) CHECK(lin.residuals[i] < lin.residuals[i - 1]);
  CHECK(lin.n_work == 120);

  const auto z = cyclicity_residual_probe(PowerSeriesPoly{0.0, 1.0}, space, AnalyticMap(MoebiusMap(1.0, 0.0)), {0, 10});
  CHECK(z.residuals.back() > 1.0 - 1e-6);

  CHECK_THROWS_AS(cyclicity_residual_probe(PowerSeriesPoly{1.0}, space, phi, {3, 1}), DomainError);
  CHECK_THROWS_AS(cyclicity_residual_probe(PowerSeriesPoly{1.0}, space, phi, {100}), DomainError);
  CHECK_THROWS_AS(cyclicity_residual_probe(PowerSeriesPoly{}, space, phi, {0}), DomainError);
}

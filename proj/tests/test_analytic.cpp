#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "subbergman/analytic.hpp"
#include "subbergman/errors.hpp"

using namespace subbergman;
using Catch::Matchers::WithinAbs;

namespace {

Complex central_difference(const auto& f, Complex z, double h = 1e-6) { return (f(z + h) - f(z - h)) / (2.0 * h); }

const std::vector<Complex> probe_points{{0.1, 0.2}, {-0.4, 0.3}, {0.55, -0.1}, {0.0, -0.65}, {0.0, 0.0}};

}  // namespace

TEST_CASE("polynomials trim trailing zeros and keep the zero function at degree -1") {
  PowerSeriesPoly p{1.0, 2.0, 0.0, 0.0};
  CHECK(p.degree() == 1);
  CHECK(PowerSeriesPoly{0.0, 0.0}.is_zero());
  CHECK((p - p).degree() == -1);
  CHECK(p.coeff(7) == Complex(0.0));
}

TEST_CASE("Horner evaluation agrees with the naive power sum") {
  const PowerSeriesPoly p{{1.0, -1.0}, 0.5, {0.0, 2.0}, -0.25, {0.3, 0.3}};
  for (const auto& z : probe_points) {
    Complex naive{}, power = 1.0;
    for (int n = 0; n <= p.degree(); ++n, power *= z) naive += p.coeff(n) * power;
    CHECK(std::abs(p(z) - naive) < 1e-15);
    CHECK(std::abs(eval_poly(p, z) - naive) < 1e-15);
  }
}

TEST_CASE("polynomial arithmetic is pointwise") {
  const PowerSeriesPoly p{1.0, 2.0, 3.0}, q{{0.0, 1.0}, -1.0};
  for (const auto& z : probe_points) {
    CHECK(std::abs((p * q)(z) - p(z) * q(z)) < 1e-14);
    CHECK(std::abs((p + q)(z) - (p(z) + q(z))) < 1e-15);
    CHECK(std::abs((Complex(0.0, 2.0) * p)(z) - Complex(0.0, 2.0) * p(z)) < 1e-14);
  }
  CHECK(multiply_truncated(p, q, 1) == (p * q).truncated(1));
}

TEST_CASE("antiderivative inverts derivative and honours the constant") {
  const PowerSeriesPoly p{{0.2, -0.1}, 3.0, 0.0, {1.0, 1.0}};
  const auto F = antiderivative(p, {1.0, -3.0});
  CHECK(F.coeff(0) == Complex(1.0, -3.0));
  CHECK(F.derivative() == p);
  for (const auto& z : probe_points) CHECK(std::abs(central_difference(F, z) - p(z)) < 1e-8);
}

TEST_CASE("companion-matrix roots") {
  const Complex r1{0.5, 0.0}, r2{0.0, -2.0};
  const auto roots = polynomial_roots(PowerSeriesPoly{r1 * r2, -(r1 + r2), 1.0});
  REQUIRE(roots.size() == 2);
  for (const auto& r : roots) CHECK(std::min(std::abs(r - r1), std::abs(r - r2)) < 1e-12);
  CHECK_THROWS_AS(polynomial_roots(PowerSeriesPoly{3.0}), DomainError);
}

TEST_CASE("Moebius maps are disk automorphisms") {
  const MoebiusMap phi({0.6, 0.8}, {0.3, -0.4});
  CHECK(std::abs(phi(phi.a())) < 1e-15);
  for (int k = 0; k < 32; ++k) {
    const Complex e = std::polar(1.0, 2.0 * std::numbers::pi * k / 32.0 + 0.1);
    CHECK_THAT(std::abs(phi(e)), WithinAbs(1.0, 1e-14));
  }
  for (const auto& z : probe_points)
    CHECK(std::abs(phi.derivative(z) - central_difference([&](Complex u) { return phi(u); }, z)) < 1e-8);
}

TEST_CASE("Moebius Taylor coefficients match xi a and xi (|a|^2 - 1) conj(a)^(n-1)") {
  const Complex xi = std::polar(1.0, 0.7), a{0.45, 0.2};
  const auto s = series_expand(MoebiusMap(xi, a), 40);
  CHECK(std::abs(s.series.coeff(0) - xi * a) < 1e-15);
  for (int n = 1; n <= 40; ++n)
    CHECK(std::abs(s.series.coeff(n) - xi * (std::norm(a) - 1.0) * std::pow(std::conj(a), n - 1)) < 1e-14);
}

TEST_CASE("xi off the circle is normalized") {
  const MoebiusMap phi({2.0, 0.0}, 0.1);
  CHECK_THAT(std::abs(phi.xi()), WithinAbs(1.0, 1e-15));
}

TEST_CASE("Blaschke products vanish at their zeros and are inner") {
  const BlaschkeProduct b(std::polar(1.0, 1.3), {{0.2, 0.1}, {-0.5, 0.0}, {0.0, 0.6}});
  for (const auto& a : b.zeros()) CHECK(std::abs(b(a)) < 1e-15);
  for (int k = 0; k < 32; ++k) CHECK_THAT(std::abs(b(std::polar(1.0, 0.2 * k))), WithinAbs(1.0, 1e-13));
  for (const auto& z : probe_points)
    CHECK(std::abs(b.derivative(z) - central_difference([&](Complex u) { return b(u); }, z)) < 1e-8);
}

TEST_CASE("Blaschke factor convention") {
  const BlaschkeProduct b(1.0, {0.0, 0.5});
  CHECK(std::abs(b.derivative(0.0) - 0.5) < 1e-15);
  const BlaschkeProduct sq(1.0, {0.0, 0.0}, ZeroPolicy::allow_repeated);
  for (const auto& z : probe_points) CHECK(std::abs(sq(z) - z * z) < 1e-15);
  CHECK_THROWS_AS(BlaschkeProduct(1.0, {0.3, 0.3}), DomainError);
  CHECK_THROWS_AS(BlaschkeProduct(1.0, {1.0}), DomainError);
}

TEST_CASE("to_blaschke preserves the function") {
  for (Complex a : {Complex(0.0), Complex(0.3, -0.2), Complex(0.0, 0.7)}) {
    const MoebiusMap m(std::polar(1.0, -0.4), a);
    const auto b = to_blaschke(m);
    for (const auto& z : probe_points) CHECK(std::abs(m(z) - b(z)) < 1e-14);
  }
}

TEST_CASE("Blaschke series reproduces the product inside the disk") {
  const BlaschkeProduct b(1.0, {{0.3, 0.3}, -0.4});
  const auto s = series_expand(b, 80);
  for (const auto& z : probe_points) CHECK(std::abs(s.series(z) - b(z)) < 1e-12);
}

TEST_CASE("rational functions: pole checks and geometric tails") {
  CHECK_THROWS_AS(RationalFn(PowerSeriesPoly{1.0}, PowerSeriesPoly{1.0, -2.0}), DomainError);
  const RationalFn r(PowerSeriesPoly{1.0}, PowerSeriesPoly{1.0, -0.5});
  CHECK_THAT(r.pole_modulus(), WithinAbs(2.0, 1e-12));
  const auto s = series_expand(r, 30);
  for (int n = 0; n <= 30; ++n) CHECK(std::abs(s.series.coeff(n) - std::pow(0.5, n)) < 1e-15);
  CHECK_THAT(s.decay_ratio, WithinAbs(0.5, 1e-12));
  const double radius = 0.9;
  const double actual = std::abs(s.series(radius) - r(radius));
  CHECK(s.tail_bound(radius) >= actual * 0.999);
  CHECK(std::isinf(s.tail_bound(2.5)));
}

TEST_CASE("analytic map variant dispatch") {
  const AnalyticMap m = MoebiusMap(1.0, 0.5);
  const AnalyticMap b = BlaschkeProduct(1.0, {0.5});
  for (const auto& z : probe_points) {
    CHECK(std::abs(eval_map(m, z) - eval_map(b, z)) < 1e-15);
    CHECK(std::abs(derivative_at(m, z) - derivative_at(b, z)) < 1e-13);
  }
}

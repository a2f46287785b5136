#include <catch_amalgamated.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <random>

#include "subbergman/bergman.hpp"
#include "subbergman/errors.hpp"

using namespace subbergman;
using Catch::Matchers::WithinRel;

namespace {

// (alpha + 1) int_0^1 t^n (1 - t)^alpha dt, the radial part of ||z^n||^2.
double radial_moment(double alpha, int n) {
  auto f = [=](double t) { return std::pow(t, n) * std::pow(1.0 - t, alpha); };
  if (alpha < 0) {
    // The two-argument form gets 1 - t without cancellation near the singular end.
    auto g = [=](double t, double tc) { return std::pow(t, n) * std::pow(t > 0.5 ? tc : 1.0 - t, alpha); };
    boost::math::quadrature::tanh_sinh<double> ts;
    return (alpha + 1.0) * ts.integrate(g, 0.0, 1.0, 1e-14);
  }
  return (alpha + 1.0) * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 15, 1e-14);
}

PowerSeriesPoly random_poly(std::mt19937_64& rng, int degree) {
  std::normal_distribution<double> g;
  std::vector<Complex> c(degree + 1);
  for (auto& x : c) x = {g(rng), g(rng)};
  return PowerSeriesPoly(c);
}

}  // namespace

TEST_CASE("monomial norms: closed form against radial quadrature") {
  for (double alpha : {-0.5, 0.0, 0.5, 1.0, 2.5}) {
    for (int n : {0, 1, 2, 5, 13, 40}) {
      INFO("alpha " << alpha << " n " << n);
      CHECK_THAT(monomial_norm_squared(alpha, n), WithinRel(radial_moment(alpha, n), 1e-10));
    }
  }
}

TEST_CASE("monomial norms: elementary special cases") {
  for (int n = 0; n < 50; ++n) {
    CHECK_THAT(monomial_norm_squared(0.0, n), WithinRel(1.0 / (n + 1), 1e-13));
    CHECK_THAT(monomial_norm_squared(1.0, n), WithinRel(2.0 / ((n + 1.0) * (n + 2.0)), 1e-13));
  }
  CHECK(monomial_norm_squared(0.0, 1LL << 40) > 0.0);
}

TEST_CASE("space model range checks") {
  const BergmanSpaceModel space(0.0, 10);
  CHECK_THROWS_AS(space.monomial_norm(11), DomainError);
  CHECK_THROWS_AS(space.monomial_norm(-1), DomainError);
  CHECK_THROWS_AS(BergmanSpaceModel(-1.0, 10), DomainError);
}

TEST_CASE("orthonormal coordinates round-trip and preserve norms") {
  std::mt19937_64 rng(7);
  const BergmanSpaceModel space(1.5, 40);
  const auto f = random_poly(rng, 30);
  const auto x = space.to_orthonormal(f, 41);
  CHECK_THAT(x.norm(), WithinRel(space.norm(f), 1e-13));
  const auto back = space.from_orthonormal(x);
  for (int n = 0; n <= 30; ++n) CHECK(std::abs(back.coeff(n) - f.coeff(n)) < 1e-12 * std::abs(f.coeff(n)) + 1e-15);
}

TEST_CASE("Gauss-Jacobi rule integrates polynomial moments exactly") {
  for (double alpha : {-0.5, 0.0, 1.0, 3.0}) {
    std::vector<double> t, w;
    gauss_jacobi_unit_interval(alpha, 12, t, w);
    double total = 0.0;
    for (double x : w) total += x;
    CHECK_THAT(total, WithinRel(1.0, 1e-13));
    for (int k = 0; k < 24; ++k) {
      double q = 0.0;
      for (size_t i = 0; i < t.size(); ++i) q += w[i] * std::pow(t[i], k);
      CHECK_THAT(q, WithinRel(monomial_norm_squared(alpha, k), 1e-11));
    }
  }
}

TEST_CASE("quadrature inner product matches the closed form") {
  std::mt19937_64 rng(11);
  for (double alpha : {0.0, 0.5, 2.0}) {
    const BergmanSpaceModel space(alpha, 20);
    const auto f = random_poly(rng, 20), g = random_poly(rng, 17);
    const Complex q = inner_product_quadrature(f, g, space);
    CHECK(std::abs(q - space.inner_product(f, g)) < 1e-11 * std::abs(q));
  }
  const auto rule = make_quadrature_rule(0.0, 6);
  CHECK_THROWS_AS(inner_product_quadrature(PowerSeriesPoly::monomial(4), PowerSeriesPoly::monomial(4), rule),
                  DomainError);
}

TEST_CASE("kernel closed form agrees with its power series") {
  for (double s : {1.0, 2.0, 2.5, 4.0}) {
    const Complex z{0.3, -0.4}, w{-0.5, 0.1};
    const auto series = kernel_series_oracle(s, z, w, 300);
    CHECK(std::abs(kernel_eval(KernelSpec::generalized(s), z, w) - series.value) < 1e-13);
    CHECK(series.tail_bound < 1e-13);
  }
  CHECK(std::abs(kernel_eval(KernelSpec::bergman(0.0), 0.5, 0.5) - 16.0 / 9.0) < 1e-14);
  CHECK(std::abs(kernel_eval(KernelSpec::hardy(), 0.5, 0.5) - 4.0 / 3.0) < 1e-14);
  CHECK_THROWS_AS(kernel_eval(KernelSpec::hardy(), 1.0, 0.0), DomainError);
}

TEST_CASE("the kernel reproduces point evaluations") {
  std::mt19937_64 rng(3);
  const double alpha = 0.75;
  const int N = 200;
  const BergmanSpaceModel space(alpha, N);
  const auto f = random_poly(rng, 15);
  const Complex w{0.35, 0.4};
  std::vector<Complex> kw(N + 1);
  for (int n = 0; n <= N; ++n) kw[n] = std::pow(std::conj(w), n) / space.monomial_norm_squared(n);
  CHECK(std::abs(space.inner_product(f, PowerSeriesPoly(kw)) - f(w)) < 1e-12);
}

TEST_CASE("sub-Bergman kernel formula") {
  const MoebiusMap phi(1.0, {0.2, 0.3});
  const Complex z{0.1, 0.5}, w{-0.3, 0.2};
  const Complex expected = (1.0 - phi(z) * std::conj(phi(w))) / std::pow(1.0 - z * std::conj(w), 2.5);
  CHECK(std::abs(kernel_eval(KernelSpec::sub_bergman(0.5, phi), z, w) - expected) < 1e-14);
}

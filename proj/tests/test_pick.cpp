#include <catch_amalgamated.hpp>

#include <cstdlib>

#include "subbergman/errors.hpp"
#include "subbergman/pick.hpp"

using namespace subbergman;

TEST_CASE("verdict ladder") {
  CHECK(classify(0.0, 1e-10) == Verdict::psd);
  CHECK(classify(-1e-10, 1e-10) == Verdict::psd);
  CHECK(classify(-5e-10, 1e-10) == Verdict::inconclusive);
  CHECK(classify(-1.1e-9, 1e-10) == Verdict::not_psd);
  CHECK(std::string(to_string(Verdict::not_psd)) == "NOT_PSD");
}

TEST_CASE("Bergman kernel fails the one-minus test on a symmetric pair") {
  const auto k = as_kernel_fn(KernelSpec::bergman(0.0));
  const std::vector<Complex> pts{0.5, -0.5};
  const auto f = oneminus_matrix(k, pts);
  // F = [[1 - 0.75^2, 1 - 1.25^2], [1 - 1.25^2, 1 - 0.75^2]]
  CHECK(std::abs(f(0, 0) - 0.4375) < 1e-15);
  CHECK(std::abs(f(0, 1) + 0.5625) < 1e-15);
  CHECK(std::abs(f.determinant() + 0.125) < 1e-14);
  const auto r = cnp_oneminus_test(k, pts);
  CHECK(r.verdict == Verdict::not_psd);
  CHECK(r.witness == pts);
}

TEST_CASE("Szego kernel passes the one-minus test") {
  const auto k = as_kernel_fn(KernelSpec::hardy());
  for (std::uint64_t t = 0; t < 20; ++t) {
    const auto pts = sample_disk_points(5, t, 7, 0.85);
    CHECK(cnp_oneminus_test(k, pts).verdict == Verdict::psd);
  }
}

TEST_CASE("scalar Pick matrices for Szego: contractive data passes, expansive data fails") {
  const auto pts = sample_disk_points(8, 0, 5, 0.8);
  PickInstance good{as_kernel_fn(KernelSpec::hardy()), pts, {}}, bad = good;
  for (const auto& z : pts) {
    good.targets.push_back(Eigen::MatrixXcd::Constant(1, 1, 0.5 * z));
    bad.targets.push_back(Eigen::MatrixXcd::Constant(1, 1, 3.0 * z));
  }
  CHECK(pick_test(good).verdict == Verdict::psd);
  CHECK(pick_test(bad).verdict == Verdict::not_psd);
}

TEST_CASE("matrix targets produce block Pick matrices") {
  const std::vector<Complex> pts{0.1, {0.0, 0.3}};
  PickInstance inst{as_kernel_fn(KernelSpec::hardy()), pts, {}};
  inst.targets.push_back(Eigen::MatrixXcd::Identity(2, 2) * 0.5);
  inst.targets.push_back(Eigen::MatrixXcd::Zero(2, 2));
  const auto m = pick_matrix(inst);
  CHECK(m.rows() == 4);
  CHECK(std::abs(m(0, 0) - 0.75 / (1.0 - 0.01)) < 1e-14);
}

TEST_CASE("Pick instance invariants") {
  const auto k = as_kernel_fn(KernelSpec::hardy());
  CHECK_THROWS_AS(PickInstance({k, {0.95}, {}}).validate(), DomainError);
  CHECK_THROWS_AS(PickInstance({k, {0.2, 0.2 + 1e-10}, {}}).validate(), DomainError);
  PickInstance ragged{k, {0.1, 0.2}, {Eigen::MatrixXcd::Zero(1, 1), Eigen::MatrixXcd::Zero(2, 2)}};
  CHECK_THROWS_AS(ragged.validate(), DomainError);
}

TEST_CASE("normalized kernel equals one on the diagonal at the base point") {
  const auto kn = normalized_kernel(as_kernel_fn(KernelSpec::bergman(1.0)), {0.2, 0.1});
  CHECK(std::abs(kn({0.2, 0.1}, {-0.3, 0.4}) - 1.0) < 1e-14);
}

TEST_CASE("degree-one sub-Bergman kernels pass, degree two fails") {
  const auto one = as_kernel_fn(KernelSpec::sub_bergman(0.0, MoebiusMap(1.0, {0.0, 0.5})));
  for (std::uint64_t t = 0; t < 30; ++t)
    CHECK(cnp_oneminus_test(one, sample_disk_points(17, t, 6, 0.8)).min_eigenvalue >= -1e-10);
  const auto two = as_kernel_fn(KernelSpec::sub_bergman(0.0, BlaschkeProduct(1.0, {0.0, 0.4})));
  const auto w = cnp_witness_search(two, 2, 1000, 17);
  REQUIRE(w.has_value());
  CHECK(w->min_eigenvalue < -1e-9);
}

TEST_CASE("witness search is independent of the worker count") {
  const auto k = as_kernel_fn(KernelSpec::bergman(0.0));
  ::setenv("SUBBERGMAN_THREADS", "1", 1);
  const auto serial = cnp_witness_search(k, 3, 200, 42);
  ::setenv("SUBBERGMAN_THREADS", "4", 1);
  const auto threaded = cnp_witness_search(k, 3, 200, 42);
  ::unsetenv("SUBBERGMAN_THREADS");
  REQUIRE(serial.has_value());
  REQUIRE(threaded.has_value());
  CHECK(serial->trial == threaded->trial);
  CHECK(serial->points == threaded->points);
}

TEST_CASE("disk sampling is reproducible and stays in the disk") {
  const auto a = sample_disk_points(1, 3, 50, 0.8), b = sample_disk_points(1, 3, 50, 0.8);
  CHECK(a == b);
  CHECK(a != sample_disk_points(1, 4, 50, 0.8));
  for (const auto& z : a) CHECK(std::abs(z) <= 0.8);
}

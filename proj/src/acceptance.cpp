#include "subbergman/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include "subbergman/errors.hpp"
#include "subbergman/parallel.hpp"
#include "subbergman/sampling.hpp"

namespace subbergman {
namespace {

struct Outcome {
  bool passed = false;
  std::string summary;
  json payload;
};

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::uint64_t sub_seed(std::uint64_t seed, int id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(id), 0xacce97u};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (std::uint64_t{out[0]} << 32) | out[1];
}

std::vector<Complex> seeded_disk_points(std::uint64_t seed, int count, double radius) {
  return sample_disk_points(seed, 0, count, radius);
}

// 1. Kernel closed form against the monomial-norm series.
Outcome kernel_consistency(std::uint64_t seed) {
  constexpr int kTerms = 200;
  constexpr double kTol = 1e-9;
  const auto pts = seeded_disk_points(seed, 100, 0.6);
  json rows = json::array();
  double worst = 0.0;
  for (double alpha : {0.0, 0.5, 1.0, 2.0}) {
    const BergmanSpaceModel space(alpha, kTerms);
    const auto k = KernelSpec::bergman(alpha);
    double err = 0.0;
    for (int i = 0; i < 50; ++i) {
      const Complex z = pts[2 * i], w = pts[2 * i + 1];
      const Complex x = z * std::conj(w);
      Complex series{}, power = 1.0;
      for (int n = 0; n <= kTerms; ++n, power *= x) series += power / space.monomial_norm_squared(n);
      err = std::max(err, std::abs(kernel_eval(k, z, w) - series));
    }
    worst = std::max(worst, err);
    rows.push_back({{"alpha", alpha}, {"max_error", err}});
  }
  return {worst <= kTol, fmt("max |K - series| = %.2e (tol %.0e)", worst, kTol),
          {{"cases", rows}, {"max_error", worst}, {"N", kTerms}, {"tolerance", kTol}}};
}

// 2. The sub-Bergman kernel is <M K_w, K_z> with M = I - T T^*.
Outcome defect_kernel_identity(std::uint64_t) {
  constexpr int kN = 150, kBuffer = 50;
  constexpr double kTol = 1e-6;
  const auto grid = spiral_points(50, 0.6);
  json rows = json::array();
  double worst = 0.0;
  for (double alpha : {0.0, 1.0}) {
    const BergmanSpaceModel space(alpha, kN + kBuffer);
    for (Complex a : {Complex(0.0), Complex(0.4, 0.2)}) {
      const MoebiusMap phi(1.0, a);
      const auto m = defect_matrix(space, AnalyticMap(phi), kN, kBuffer);
      const auto k = KernelSpec::sub_bergman(alpha, phi);
      auto basis = [&](Complex z) {
        Eigen::VectorXcd v(kN + 1);
        Complex p = 1.0;
        for (int n = 0; n <= kN; ++n, p *= z) v[n] = p / space.monomial_norm(n);
        return v;
      };
      double err = 0.0;
      for (int i = 0; i < 25; ++i) {
        const Complex z = grid[2 * i], w = grid[2 * i + 1];
        const Complex viaMatrix = basis(z).transpose() * m.entries * basis(w).conjugate();
        err = std::max(err, std::abs(viaMatrix - kernel_eval(k, z, w)));
      }
      worst = std::max(worst, err);
      rows.push_back({{"alpha", alpha}, {"a", complex_to_json(a)}, {"max_error", err}});
    }
  }
  return {worst <= kTol, fmt("max kernel error = %.2e (tol %.0e)", worst, kTol),
          {{"cases", rows}, {"max_error", worst}, {"N", kN}, {"buffer", kBuffer}, {"tolerance", kTol}}};
}

constexpr int kToeplitzCases = 20;
constexpr int kToeplitzWork = 300;

double max_gap(const std::function<Complex(Complex)>& f, const std::function<Complex(Complex)>& g,
               const std::vector<Complex>& pts) {
  double e = 0.0;
  for (const auto& z : pts) e = std::max(e, std::abs(f(z) - g(z)));
  return e;
}

// 3. Explicit T_{conj B} against the matrix adjoint.
Outcome lemma_dual_path(std::uint64_t seed) {
  constexpr double kTol = 1e-8;
  const BergmanSpaceModel space(0.0, kToeplitzWork);
  json rows = json::array();
  double worst = 0.0;
  for (int i = 0; i < kToeplitzCases; ++i) {
    const auto c = random_toeplitz_case(seed, i);
    const auto ex = toeplitz_conj_blaschke_explicit(c.f, c.blaschke, space);
    const auto mx = toeplitz_conj_matrix(c.f, c.blaschke, space, kToeplitzWork);
    const double e = max_gap(ex, mx, c.points);
    worst = std::max(worst, e);
    rows.push_back({{"deg_f", c.f.degree()}, {"order", c.blaschke.order()}, {"max_error", e}});
  }

  // Fixed cases: T_{conj z} z^2 = (2/3) z, and T_{conj B} 1 = 0.5 for B = (0.5 - z)/(1 - 0.5 z).
  const auto pts = spiral_points(200, 0.7);
  const BlaschkeProduct bz(1.0, {0.0});
  const auto z2 = PowerSeriesPoly::monomial(2);
  const auto ex1 = toeplitz_conj_blaschke_explicit(z2, bz, space);
  const auto mx1 = toeplitz_conj_matrix(z2, bz, space, kToeplitzWork);
  auto two_thirds = [](Complex z) { return 2.0 * z / 3.0; };
  const double reg1 = std::max(max_gap(ex1, two_thirds, pts), max_gap(mx1, two_thirds, pts));

  const BlaschkeProduct bh(1.0, {0.5});
  const auto one = PowerSeriesPoly::constant(1.0);
  const auto ex2 = toeplitz_conj_blaschke_explicit(one, bh, space);
  const auto mx2 = toeplitz_conj_matrix(one, bh, space, kToeplitzWork);
  auto half = [](Complex) { return Complex(0.5); };
  const double reg2 = std::max(max_gap(ex2, half, pts), max_gap(mx2, half, pts));

  const bool ok = worst <= kTol && reg1 <= kTol && reg2 <= kTol;
  return {ok, fmt("random max = %.2e, z^2 case = %.2e, half case = %.2e (tol %.0e)", worst, reg1, reg2, kTol),
          {{"cases", rows},
           {"max_error", worst},
           {"regression_z2", reg1},
           {"regression_half", reg2},
           {"n_work", kToeplitzWork},
           {"tolerance", kTol}}};
}

// 4. The explicit formula does not depend on the antiderivative constant.
Outcome antiderivative_invariance(std::uint64_t seed) {
  constexpr double kTol = 1e-10;
  const BergmanSpaceModel space(0.0, kToeplitzWork);
  const std::array<Complex, 3> offsets{Complex(1.0), Complex(1.0, 1.0), Complex(0.0, -3.0)};
  json rows = json::array();
  double worst = 0.0;
  for (int i = 0; i < kToeplitzCases; ++i) {
    const auto c = random_toeplitz_case(seed, i);
    const auto base = toeplitz_conj_blaschke_explicit(c.f, c.blaschke, space);
    double e = 0.0;
    for (Complex off : offsets)
      e = std::max(e, max_gap(base, toeplitz_conj_blaschke_explicit(c.f, c.blaschke, space, off), c.points));
    worst = std::max(worst, e);
    rows.push_back(e);
  }
  return {worst <= kTol, fmt("max offset drift = %.2e (tol %.0e)", worst, kTol),
          {{"case_drift", rows}, {"max_drift", worst}, {"tolerance", kTol}}};
}

// 5. Explicit defect action against the matrix route.
Outcome star_dual_path(std::uint64_t) {
  constexpr int kDegree = 150, kN = 150, kBuffer = 50;
  constexpr double kTol = 1e-7, kClosedTol = 1e-10;
  const BergmanSpaceModel space(0.0, kN);
  const auto pts = spiral_points(100, 0.6);
  const std::array<std::pair<PowerSeriesPoly, PowerSeriesPoly>, 3> pairs{{
      {PowerSeriesPoly{1.0}, PowerSeriesPoly{1.0}},
      {PowerSeriesPoly{1.0}, PowerSeriesPoly{1.0, -0.5}},
      {PowerSeriesPoly{1.0, -1.0}, PowerSeriesPoly{1.0, -0.3}},
  }};
  json rows = json::array();
  double worst = 0.0, closed = 0.0;
  for (const auto& [gamma, psi] : pairs) {
    const auto f = series_expand(RationalFn(gamma, psi), kDegree).series;
    for (double a : {0.3, 0.5}) {
      const MoebiusMap phi(1.0, a);
      const auto ex = defect_action_explicit(gamma, psi, phi, space, kDegree);
      const auto mx = apply_defect(space, phi, f, kN, kBuffer);
      const double e = max_gap(ex, mx.output, pts);
      worst = std::max(worst, e);
      rows.push_back({{"gamma", gamma}, {"psi", psi}, {"a", a}, {"max_error", e}});
      if (gamma == psi && a == 0.5)
        closed = max_gap(ex, [](Complex z) { return 0.75 / (1.0 - 0.5 * z); }, pts);
    }
  }
  return {worst <= kTol && closed <= kClosedTol,
          fmt("max dual-path gap = %.2e (tol %.0e), closed form gap = %.2e (tol %.0e)", worst, kTol, closed,
              kClosedTol),
          {{"cases", rows},
           {"max_error", worst},
           {"closed_form_error", closed},
           {"degree", kDegree},
           {"N", kN},
           {"buffer", kBuffer},
           {"tolerance", kTol}}};
}

// 6. Bergman fails the CNP test, degree-one sub-Bergman passes, degree two fails.
Outcome cnp_dichotomy(std::uint64_t seed) {
  const auto bergman = as_kernel_fn(KernelSpec::bergman(0.0));
  const std::vector<Complex> pair{0.5, -0.5};
  const Complex det = oneminus_matrix(bergman, pair).determinant();
  const auto ra = cnp_oneminus_test(bergman, pair);
  const bool a_ok = std::abs(det - Complex(-0.125)) <= 1e-12 && ra.verdict == Verdict::not_psd;

  double worst = std::numeric_limits<double>::infinity();
  json rows = json::array();
  int set_index = 0;
  for (double alpha : {-0.5, 0.0}) {
    for (Complex a : {Complex(0.0), Complex(0.3), Complex(0.0, 0.5)}) {
      const auto k = as_kernel_fn(KernelSpec::sub_bergman(alpha, MoebiusMap(1.0, a)));
      double lam = std::numeric_limits<double>::infinity();
      for (int t = 0; t < 100; ++t, ++set_index) {
        const auto pts = sample_disk_points(seed, set_index, 6, 0.8);
        lam = std::min(lam, cnp_oneminus_test(k, pts).min_eigenvalue);
      }
      worst = std::min(worst, lam);
      rows.push_back({{"alpha", alpha}, {"a", complex_to_json(a)}, {"min_eigenvalue", lam}});
    }
  }
  const bool b_ok = worst >= -kPickTolerance;

  const auto blaschke = as_kernel_fn(KernelSpec::sub_bergman(0.0, BlaschkeProduct(1.0, {0.0, 0.4})));
  const auto witness = cnp_witness_search(blaschke, 2, 1000, sub_seed(seed, 60));
  const bool c_ok = witness.has_value();

  return {a_ok && b_ok && c_ok,
          fmt("det = %.15g (%s), worst degree-one min eig = %.2e, degree-two witness %s", det.real(),
              to_string(ra.verdict), worst, c_ok ? fmt("at trial %llu", (unsigned long long)witness->trial).c_str()
                                                 : "not found"),
          {{"bergman", {{"determinant", complex_to_json(det)}, {"report", ra}}},
           {"degree_one", rows},
           {"degree_one_min_eigenvalue", worst},
           {"degree_two_witness", witness ? json(*witness) : json(nullptr)},
           {"trials", 1000},
           {"tolerance", kPickTolerance}}};
}

// 7. Rank-one structure of the rescaled kernel.
Outcome doublestar(std::uint64_t seed) {
  constexpr double kTol = 1e-9, kDisplayTol = 1e-10;
  json rows = json::array();
  double worst = 0.0, mismatch = 0.0;
  int idx = 0;
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (Complex a : {Complex(0.0), Complex(0.3), Complex(0.0, 0.5)}) {
      const MoebiusMap phi(1.0, a);
      const auto r =
          doublestar_factorization_check(alpha, phi, sample_factorization_tuples(sub_seed(seed, 70 + idx++), 200, a));
      worst = std::max(worst, r.max_defect);
      mismatch = std::max(mismatch, r.max_display_mismatch);
      rows.push_back({{"alpha", alpha},
                      {"a", complex_to_json(a)},
                      {"max_defect", r.max_defect},
                      {"max_display_mismatch", r.max_display_mismatch}});
    }
  }
  // a = 0: the displayed rescaled kernel is -z^3.
  const MoebiusMap phi0(1.0, 0.0);
  double cube = 0.0;
  for (const auto& t : sample_factorization_tuples(sub_seed(seed, 79), 200, 0.0)) {
    for (auto [z, w] : {std::pair{t.z1, t.w1}, std::pair{t.z2, t.w2}}) {
      cube = std::max(cube, std::abs(doublestar_display_ratio(phi0, z, w) + z * z * z));
      cube = std::max(cube, std::abs(doublestar_ratio(1.0, phi0, z, w) - z * z * z));
    }
  }
  const bool ok = worst <= kTol && mismatch <= kDisplayTol && cube <= kDisplayTol;
  return {ok,
          fmt("max cross-ratio defect = %.2e (tol %.0e), display mismatch = %.2e, a=0 cube gap = %.2e", worst, kTol,
              mismatch, cube),
          {{"cases", rows},
           {"max_defect", worst},
           {"max_display_mismatch", mismatch},
           {"a0_cube_error", cube},
           {"tolerance", kTol}}};
}

// 8. Bounded quotients have radial limits; the gap series does not.
Outcome boundary_dichotomy(std::uint64_t) {
  constexpr int kDepth = 30, kAngles = 64, kGapTerms = 26;
  const auto thetas = uniform_angles(kAngles);
  const std::array<std::pair<PowerSeriesPoly, PowerSeriesPoly>, 5> quotients{{
      {PowerSeriesPoly{1.0, -1.0}, PowerSeriesPoly{1.0}},
      {PowerSeriesPoly{1.0}, PowerSeriesPoly{1.0, -0.5}},
      {PowerSeriesPoly{1.0, 0.0, 1.0}, PowerSeriesPoly{2.0, 1.0}},
      {PowerSeriesPoly{1.0, 0.0, 0.0, -1.0}, PowerSeriesPoly{1.0, 0.0, 0.3}},
      {PowerSeriesPoly{0.0, 1.0}, PowerSeriesPoly{3.0, -1.0, -1.0}},
  }};
  json qrows = json::array();
  int quotient_failures = 0;
  double worst_tail = 0.0;
  for (const auto& [g, p] : quotients) {
    const auto q = SmirnovQuotient::make(g, p);
    int conv = 0;
    double tail = 0.0;
    for (double th : thetas) {
      const auto r = radial_probe([&q](Complex z) { return q(z); }, th, kDepth);
      conv += r.verdict == ConvergenceVerdict::converges;
      tail = std::max(tail, r.tail_oscillation);
    }
    quotient_failures += kAngles - conv;
    worst_tail = std::max(worst_tail, tail);
    qrows.push_back({{"gamma", g}, {"psi", p}, {"converged", conv}, {"max_tail_oscillation", tail}});
  }

  int wild = 0;
  for (double th : thetas) {
    const auto r = radial_probe([](Complex z) { return gap_series_eval(kGapTerms, z); }, th, kDepth);
    wild += r.verdict == ConvergenceVerdict::no_convergence_detected && r.tail_oscillation > 0.5;
  }
  const double norm2 = gap_series_norm_squared(kGapTerms);
  const bool ok = quotient_failures == 0 && wild >= kAngles / 2 && norm2 <= 2.0;
  return {ok,
          fmt("quotients: %d non-converging angles (max tail %.2e); gap series: %d/%d wild, norm^2 = %.4f",
              quotient_failures, worst_tail, wild, kAngles, norm2),
          {{"quotients", qrows},
           {"gap_series", {{"terms", kGapTerms}, {"wild_angles", wild}, {"norm_squared", norm2}}},
           {"angles", kAngles},
           {"depth", kDepth},
           {"tolerance", kConvergenceTolerance}}};
}

// 9. Cyclicity residual sanity checks.
Outcome cyclicity_sanity(std::uint64_t) {
  constexpr int kWork = 200;
  const BergmanSpaceModel space(0.0, kWork);
  std::vector<int> upto30(31), upto40(41);
  for (int d = 0; d <= 40; ++d) {
    upto40[d] = d;
    if (d <= 30) upto30[d] = d;
  }
  const AnalyticMap phi_a(MoebiusMap(1.0, 0.3));
  const auto one = cyclicity_residual_probe(PowerSeriesPoly{1.0}, space, phi_a, {0, 5, 10});
  const double one_res = one.inconclusive ? 1.0 : *std::max_element(one.residuals.begin(), one.residuals.end());

  const auto zr = cyclicity_residual_probe(PowerSeriesPoly{0.0, 1.0}, space, AnalyticMap(MoebiusMap(1.0, 0.0)), upto40);
  const double z_min = zr.inconclusive ? 0.0 : *std::min_element(zr.residuals.begin(), zr.residuals.end());

  const auto lin = cyclicity_residual_probe(PowerSeriesPoly{1.0, -0.5}, space, phi_a, upto30);
  bool strictly = !lin.inconclusive;
  for (size_t i = 1; i < lin.residuals.size(); ++i) strictly = strictly && lin.residuals[i] < lin.residuals[i - 1];
  const double last = lin.residuals.empty() ? 1.0 : lin.residuals.back();

  const bool ok = one_res <= 1e-12 && z_min >= 1.0 - 1e-6 && strictly && last < 0.05;
  return {ok,
          fmt("psi=1: %.2e; psi=z: min %.8f; psi=1-z/2: %s, degree 30 -> %.2e", one_res, z_min,
              strictly ? "strictly decreasing" : "not strictly decreasing", last),
          {{"psi_one", one}, {"psi_z", zr}, {"psi_linear", lin}, {"n_work", kWork}}};
}

// 10. ||D f||_{A^2_0} / ||f||_{A^2_1} stays in a bounded band.
Outcome range_mapping(std::uint64_t seed) {
  constexpr int kSamples = 100, kMaxDegree = 50, kN = 200, kBuffer = 50;
  std::vector<PowerSeriesPoly> samples;
  for (int i = 0; i < kSamples; ++i) samples.push_back(random_polynomial(seed, i, kMaxDegree));
  const auto r = range_mapping_report(BergmanSpaceModel(1.0, kN), AnalyticMap(MoebiusMap(1.0, 0.4)), samples, kN,
                                      kBuffer);
  std::map<int, std::pair<double, int>> buckets;
  for (size_t i = 0; i < r.ratios.size(); ++i) {
    auto& b = buckets[std::min(r.degrees[i] / 10, 4)];
    b.first += r.ratios[i];
    ++b.second;
  }
  json brows = json::array();
  double hi = 0.0, lo = std::numeric_limits<double>::infinity();
  for (const auto& [k, v] : buckets) {
    const double mean = v.first / v.second;
    hi = std::max(hi, mean);
    lo = std::min(lo, mean);
    brows.push_back({{"bucket", fmt("%d-%d", 10 * k, k == 4 ? kMaxDegree : 10 * k + 9)}, {"count", v.second},
                     {"mean_ratio", mean}});
  }
  const double spread = hi / lo;
  const bool ok = r.all_finite && spread < 10.0;
  return {ok, fmt("ratios in [%.4f, %.4f], bucket spread %.3f (limit 10)", r.min_ratio, r.max_ratio, spread),
          {{"report", r}, {"buckets", brows}, {"bucket_spread", spread}}};
}

struct CriterionDef {
  const char* name;
  double budget;
  Outcome (*run)(std::uint64_t);
};

constexpr std::array<CriterionDef, 10> kCriteria{{
    {"kernel consistency", 1.0, kernel_consistency},
    {"defect-kernel identity", 30.0, defect_kernel_identity},
    {"Toeplitz adjoint dual path", 30.0, lemma_dual_path},
    {"antiderivative invariance", 30.0, antiderivative_invariance},
    {"defect action dual path", 10.0, star_dual_path},
    {"CNP dichotomy", 60.0, cnp_dichotomy},
    {"rescaled kernel factorization", 5.0, doublestar},
    {"boundary dichotomy", 10.0, boundary_dichotomy},
    {"cyclicity probe sanity", 60.0, cyclicity_sanity},
    {"range-mapping stability", 30.0, range_mapping},
}};

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  if (id < 1 || id > static_cast<int>(kCriteria.size()))
    throw DomainError("run_criterion: id must lie in 1..10 (11 needs run_acceptance)");
  const auto& def = kCriteria[id - 1];
  CriterionResult r;
  r.id = id;
  r.name = def.name;
  r.budget_seconds = def.budget;
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = def.run(sub_seed(seed, id));
  } catch (const std::exception& e) {
    o = {false, std::string("error: ") + e.what(), json{{"error", e.what()}}};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.correct = o.passed;
  r.within_budget = r.seconds <= r.budget_seconds;
  r.passed = r.correct && r.within_budget;
  r.summary = o.summary;
  r.payload = std::move(o.payload);
  return r;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  std::vector<CriterionResult> results(kCriterionCount);
  parallel_for(kCriteria.size(), [&](std::size_t i) { results[i] = run_criterion(static_cast<int>(i) + 1, seed); });

  CriterionResult& det = results.back();
  det.id = kCriterionCount;
  det.name = "determinism";
  det.budget_seconds = 0.0;
  const auto start = std::chrono::steady_clock::now();
  std::vector<CriterionResult> again(kCriteria.size());
  parallel_for(kCriteria.size(), [&](std::size_t i) { again[i] = run_criterion(static_cast<int>(i) + 1, seed); });
  json mismatched = json::array();
  for (size_t i = 0; i < kCriteria.size(); ++i)
    if (results[i].payload.dump() != again[i].payload.dump()) mismatched.push_back(i + 1);
  det.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  det.budget_seconds = det.seconds;
  det.correct = det.within_budget = det.passed = mismatched.empty();
  det.summary = mismatched.empty() ? "10/10 payloads byte-identical on re-run"
                                   : fmt("%zu payload(s) differ on re-run", mismatched.size());
  det.payload = {{"compared", static_cast<int>(kCriteria.size())}, {"mismatched", mismatched}};
  return results;
}

json acceptance_payload(const std::vector<CriterionResult>& results) {
  json out = json::array();
  int passed = 0;
  for (const auto& r : results) {
    passed += r.correct;
    out.push_back({{"id", r.id}, {"name", r.name}, {"correct", r.correct}, {"summary", r.summary}, {"result", r.payload}});
  }
  return {{"criteria", out}, {"correct", passed}, {"total", static_cast<int>(results.size())}};
}

}  // namespace subbergman

#include "subbergman/job.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <locale>
#include <sstream>

#include "subbergman/acceptance.hpp"
#include "subbergman/errors.hpp"
#include "subbergman/sampling.hpp"

#ifndef SUBBERGMAN_VERSION
#define SUBBERGMAN_VERSION "0.0.0"
#endif

namespace subbergman {
namespace {

constexpr std::array<std::pair<Command, const char*>, 10> kCommands{{
    {Command::kernel_eval, "kernel-eval"},
    {Command::defect_apply, "defect-apply"},
    {Command::verify_lemma, "verify-lemma"},
    {Command::verify_star, "verify-star"},
    {Command::pick_test, "pick-test"},
    {Command::witness_search, "witness-search"},
    {Command::boundary_probe, "boundary-probe"},
    {Command::cyclicity, "cyclicity"},
    {Command::doublestar_check, "doublestar-check"},
    {Command::acceptance, "acceptance"},
}};

// Parameter access ----------------------------------------------------------

double get_double(const json& p, const char* key, double fallback) {
  if (!p.contains(key)) return fallback;
  if (!p.at(key).is_number()) throw DomainError(std::string("parameter '") + key + "' must be a number");
  return p.at(key).get<double>();
}

double require_double(const json& p, const char* key) {
  if (!p.contains(key)) throw DomainError(std::string("missing parameter '") + key + "'");
  return get_double(p, key, 0.0);
}

int get_int(const json& p, const char* key, int fallback) {
  if (!p.contains(key)) return fallback;
  const auto& v = p.at(key);
  if (!v.is_number_integer()) throw DomainError(std::string("parameter '") + key + "' must be an integer");
  return v.get<int>();
}

Complex get_complex(const json& p, const char* key, Complex fallback) {
  return p.contains(key) ? complex_from_json(p.at(key)) : fallback;
}

Complex require_complex(const json& p, const char* key) {
  if (!p.contains(key)) throw DomainError(std::string("missing parameter '") + key + "'");
  return complex_from_json(p.at(key));
}

std::uint64_t require_seed(const json& p) {
  if (!p.contains("seed")) throw DomainError("randomized command requires 'seed'");
  const auto& v = p.at("seed");
  if (!v.is_number_integer() || v.get<long long>() < 0) throw DomainError("'seed' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

PowerSeriesPoly get_poly(const json& p, const char* key, PowerSeriesPoly fallback) {
  return p.contains(key) ? poly_from_json(p.at(key)) : fallback;
}

AnalyticMap parse_symbol(const json& p, ZeroPolicy policy) {
  const Complex xi = get_complex(p, "xi", 1.0);
  if (p.contains("zeros")) return BlaschkeProduct(xi, complex_list_from_json(p.at("zeros")), policy);
  return MoebiusMap(xi, get_complex(p, "a", 0.0));
}

MoebiusMap parse_moebius(const json& p) {
  if (p.contains("zeros")) throw DomainError("this command takes a Moebius symbol ('a', 'xi'), not 'zeros'");
  return MoebiusMap(get_complex(p, "xi", 1.0), get_complex(p, "a", 0.0));
}

json symbol_to_json(const AnalyticMap& phi) {
  if (const auto* m = std::get_if<MoebiusMap>(&phi))
    return json{{"type", "moebius"}, {"xi", complex_to_json(m->xi())}, {"a", complex_to_json(m->a())}};
  const auto& b = std::get<BlaschkeProduct>(phi);
  return json{{"type", "blaschke"},
              {"xi", complex_to_json(b.xi())},
              {"zeros", complex_list_to_json({b.zeros().begin(), b.zeros().end()})}};
}

KernelSpec parse_kernel(const json& p, ZeroPolicy policy) {
  std::string kind = p.value("kernel", std::string(p.contains("s") ? "generalized" : "bergman"));
  if (kind == "generalized") return KernelSpec::generalized(require_double(p, "s"));
  if (kind == "hardy") return KernelSpec::hardy();
  if (kind == "bergman") {
    if (p.contains("s") && !p.contains("alpha")) return KernelSpec::generalized(require_double(p, "s"));
    return KernelSpec::bergman(get_double(p, "alpha", 0.0));
  }
  if (kind == "sub-bergman") return KernelSpec::sub_bergman(get_double(p, "alpha", 0.0), parse_symbol(p, policy));
  throw DomainError("unknown kernel '" + kind + "' (generalized, hardy, bergman, sub-bergman)");
}

json kernel_to_json(const KernelSpec& k) {
  if (const auto* g = std::get_if<GeneralizedBergman>(&k.variant())) return json{{"type", "generalized"}, {"s", g->s}};
  const auto& sb = std::get<SubBergman>(k.variant());
  return json{{"type", "sub-bergman"}, {"alpha", sb.alpha}, {"phi", symbol_to_json(sb.phi)}};
}

std::vector<Complex> get_points(const json& p, const char* key, std::vector<Complex> fallback) {
  return p.contains(key) ? complex_list_from_json(p.at(key)) : std::move(fallback);
}

void add_point_rows(CsvTable& t, const std::vector<Complex>& z, const std::vector<Complex>& v) {
  t.header = {"z_re", "z_im", "value_re", "value_im"};
  for (size_t i = 0; i < z.size(); ++i) t.rows.push_back({z[i].real(), z[i].imag(), v[i].real(), v[i].imag()});
}

// Commands ------------------------------------------------------------------

void kernel_eval_cmd(const json& p, ReportEnvelope& env) {
  const auto k = parse_kernel(p, ZeroPolicy::allow_repeated);
  const Complex z = require_complex(p, "z"), w = require_complex(p, "w");
  env.payload = {{"kernel", kernel_to_json(k)},
                 {"z", complex_to_json(z)},
                 {"w", complex_to_json(w)},
                 {"value", complex_to_json(kernel_eval(k, z, w))}};
  if (const auto* g = std::get_if<GeneralizedBergman>(&k.variant()); g && p.contains("series_terms")) {
    const int terms = get_int(p, "series_terms", 200);
    const auto s = kernel_series_oracle(g->s, z, w, terms);
    env.payload["series"] = {{"terms", terms}, {"value", complex_to_json(s.value)}, {"tail_bound", s.tail_bound}};
    env.provenance["series_terms"] = terms;
  }
}

void defect_apply_cmd(const json& p, ReportEnvelope& env) {
  const double alpha = get_double(p, "alpha", 0.0);
  const int n = get_int(p, "N", 100), buffer = get_int(p, "buffer", kDefaultBuffer);
  const auto phi = parse_symbol(p, ZeroPolicy::distinct);
  const auto f = get_poly(p, "f", PowerSeriesPoly::constant(1.0));
  const auto app = apply_defect(BergmanSpaceModel(alpha, std::max(n, 1)), phi, f, n, buffer);
  const auto points = get_points(p, "points", spiral_points(16, app.r_max));
  std::vector<Complex> values;
  for (const auto& z : points) {
    if (std::abs(z) > app.r_max) throw DomainError("defect-apply: evaluation points must satisfy |z| <= 0.7");
    values.push_back(app.output(z));
  }
  env.payload = {{"alpha", alpha},
                 {"phi", symbol_to_json(phi)},
                 {"application", app},
                 {"points", complex_list_to_json(points)},
                 {"values", complex_list_to_json(values)}};
  env.provenance.update({{"N", n}, {"buffer", buffer}, {"n_work", app.n_work}, {"r_max", app.r_max}});
  add_point_rows(env.table, points, values);
}

json toeplitz_case_payload(const ToeplitzCase& c, const BergmanSpaceModel& space, int n_work, Complex offset,
                        double& max_error) {
  const auto explicit_form = toeplitz_conj_blaschke_explicit(c.f, c.blaschke, space, offset);
  const auto matrix_form = toeplitz_conj_matrix(c.f, c.blaschke, space, n_work);
  double err = 0.0;
  for (const auto& z : c.points) err = std::max(err, std::abs(explicit_form(z) - matrix_form(z)));
  max_error = std::max(max_error, err);
  return {{"f", c.f},
          {"blaschke", symbol_to_json(c.blaschke)},
          {"point_count", c.points.size()},
          {"max_error", err}};
}

void verify_lemma_cmd(const json& p, ReportEnvelope& env) {
  const double alpha = get_double(p, "alpha", 0.0);
  const int n_work = get_int(p, "n_work", 300);
  const double tol = get_double(p, "tol", 1e-8);
  const Complex offset = get_complex(p, "offset", 0.0);
  const BergmanSpaceModel space(alpha, n_work);
  std::vector<ToeplitzCase> cases;
  if (p.contains("f") || p.contains("zeros")) {
    const BlaschkeProduct b(get_complex(p, "xi", 1.0), complex_list_from_json(p.at("zeros")));
    std::vector<Complex> pts;
    for (const auto& z : get_points(p, "points", spiral_points(200, 0.7))) {
      bool ok = true;
      for (const auto& a : b.zeros()) ok = ok && std::abs(z - a) >= 0.05;
      if (ok) pts.push_back(z);
    }
    cases.push_back({get_poly(p, "f", PowerSeriesPoly::constant(1.0)), b, std::move(pts)});
  } else {
    const auto seed = require_seed(p);
    const int count = get_int(p, "cases", 20);
    for (int i = 0; i < count; ++i) cases.push_back(random_toeplitz_case(seed, i));
  }
  double max_error = 0.0;
  json out = json::array();
  for (const auto& c : cases) out.push_back(toeplitz_case_payload(c, space, n_work, offset, max_error));
  env.payload = {{"cases", out}, {"max_error", max_error}, {"tolerance", tol}, {"agree", max_error <= tol}};
  env.provenance.update({{"alpha", alpha}, {"n_work", n_work}, {"tolerance", tol},
                         {"guard_radius", ClosedFormEvaluator::kGuardRadius}});
}

void verify_star_cmd(const json& p, ReportEnvelope& env) {
  const MoebiusMap phi = parse_moebius(p);
  const auto gamma = get_poly(p, "gamma", PowerSeriesPoly::constant(1.0));
  const auto psi = get_poly(p, "psi", PowerSeriesPoly::constant(1.0));
  const int degree = get_int(p, "degree", 150), n = get_int(p, "N", 150), buffer = get_int(p, "buffer", kDefaultBuffer);
  const double tol = get_double(p, "tol", 1e-7);
  const double radius = get_double(p, "radius", 0.6);
  const BergmanSpaceModel space(0.0, std::max(degree, n));
  const auto explicit_form = defect_action_explicit(gamma, psi, phi, space, degree);
  const auto f = series_expand(RationalFn(gamma, psi, 1.0), degree).series;
  const auto matrix_form = apply_defect(space, phi, f, n, buffer);
  const auto points = get_points(p, "points", spiral_points(100, radius));

  std::vector<Complex> ev, mv;
  double max_diff = 0.0;
  for (const auto& z : points) {
    ev.push_back(explicit_form(z));
    mv.push_back(matrix_form.output(z));
    max_diff = std::max(max_diff, std::abs(ev.back() - mv.back()));
  }
  env.payload = {{"phi", symbol_to_json(phi)},
                 {"gamma", gamma},
                 {"psi", psi},
                 {"points", complex_list_to_json(points)},
                 {"explicit", complex_list_to_json(ev)},
                 {"matrix", complex_list_to_json(mv)},
                 {"reference_series", matrix_form.output.truncated(9)},
                 {"max_diff", max_diff},
                 {"tolerance", tol},
                 {"agree", max_diff <= tol}};
  // For f = 1 the image is (1 - |a|^2) / (1 - conj(a) z).
  if (gamma == psi) {
    double ref = 0.0;
    const Complex a = phi.a();
    for (size_t i = 0; i < points.size(); ++i)
      ref = std::max(ref, std::abs(ev[i] - (1.0 - std::norm(a)) / (1.0 - std::conj(a) * points[i])));
    env.payload["closed_form_max_diff"] = ref;
  }
  env.provenance.update({{"degree", degree}, {"N", n}, {"buffer", buffer}, {"tolerance", tol}, {"radius", radius}});
  add_point_rows(env.table, points, ev);
}

void pick_test_cmd(const json& p, ReportEnvelope& env) {
  const auto k = parse_kernel(p, ZeroPolicy::allow_repeated);
  const auto points = get_points(p, "points", {});
  if (points.empty()) throw DomainError("pick-test: 'points' is required");
  const double tol = get_double(p, "tol", kPickTolerance);
  const Complex z0 = get_complex(p, "z0", 0.0);
  env.payload["kernel"] = kernel_to_json(k);
  if (p.contains("targets")) {
    PickInstance inst{as_kernel_fn(k), points, {}};
    for (const auto& t : p.at("targets")) {
      if (t.is_array() && !t.empty() && t[0].is_array() && !(t[0].size() == 2 && t[0][0].is_number())) {
        const auto r = static_cast<Eigen::Index>(t.size());
        Eigen::MatrixXcd w(r, r);
        for (Eigen::Index i = 0; i < r; ++i) {
          const auto row = complex_list_from_json(t[i]);
          if (static_cast<Eigen::Index>(row.size()) != r) throw DomainError("pick-test: targets must be square");
          for (Eigen::Index j = 0; j < r; ++j) w(i, j) = row[j];
        }
        inst.targets.push_back(std::move(w));
      } else {
        inst.targets.push_back(Eigen::MatrixXcd::Constant(1, 1, complex_from_json(t)));
      }
    }
    const auto m = pick_matrix(inst);
    env.payload["mode"] = "pick-matrix";
    env.payload["matrix"] = matrix_to_json(m);
    env.payload["report"] = pick_test(inst, tol);
  } else {
    const auto f = oneminus_matrix(as_kernel_fn(k), points, z0);
    env.payload["mode"] = "oneminus";
    env.payload["z0"] = complex_to_json(z0);
    env.payload["matrix"] = matrix_to_json(f);
    env.payload["determinant"] = complex_to_json(f.determinant());
    env.payload["report"] = cnp_oneminus_test(as_kernel_fn(k), points, z0, tol);
  }
  env.provenance.update({{"tolerance", tol}, {"not_psd_threshold", -10.0 * tol}});
}

void witness_search_cmd(const json& p, ReportEnvelope& env) {
  const auto seed = require_seed(p);
  const auto k = parse_kernel(p, ZeroPolicy::allow_repeated);
  const int n_points = get_int(p, "n_points", 2), trials = get_int(p, "trials", 1000);
  const double tol = get_double(p, "tol", kPickTolerance), radius = get_double(p, "radius", 0.8);
  const auto w = cnp_witness_search(as_kernel_fn(k), n_points, trials, seed, tol, radius);
  env.payload = {{"kernel", kernel_to_json(k)}, {"n_points", n_points}, {"trials", trials}, {"seed", seed},
                 {"found", w.has_value()}, {"witness", w ? json(*w) : json(nullptr)}};
  env.provenance.update({{"tolerance", tol}, {"radius", radius}});
}

void boundary_probe_cmd(const json& p, ReportEnvelope& env) {
  const json fn = p.value("function", json{{"type", "quotient"}});
  const std::string type = fn.value("type", std::string("quotient"));
  Evaluator f;
  json fn_echo;
  if (type == "gap") {
    const int terms = fn.value("terms", 26);
    if (terms < 0 || terms > 30) throw DomainError("boundary-probe: gap terms must lie in 0..30");
    f = [terms](Complex z) { return gap_series_eval(terms, z); };
    fn_echo = {{"type", "gap"}, {"terms", terms}, {"a2_norm_squared", gap_series_norm_squared(terms)}};
  } else if (type == "quotient") {
    auto q = SmirnovQuotient::make(get_poly(fn, "gamma", PowerSeriesPoly::constant(1.0)),
                                   get_poly(fn, "psi", PowerSeriesPoly::constant(1.0)));
    fn_echo = {{"type", "quotient"}, {"gamma", q.numerator}, {"psi", q.denominator},
               {"gamma_sup", q.numerator_sup}, {"psi_sup", q.denominator_sup}};
    f = [q](Complex z) { return q(z); };
  } else {
    throw DomainError("boundary-probe: function type must be 'quotient' or 'gap'");
  }
  const int depth = get_int(p, "depth", 30);
  std::vector<double> thetas;
  if (p.contains("thetas")) {
    thetas = p.at("thetas").get<std::vector<double>>();
  } else {
    thetas = uniform_angles(get_int(p, "angles", 64));
  }
  const bool stolz = p.contains("aperture");
  const double aperture = get_double(p, "aperture", 1.0);
  json probes = json::array();
  int converged = 0;
  env.table.header = {"theta", "k", "z_re", "z_im", "value_re", "value_im"};
  for (double theta : thetas) {
    if (stolz) {
      const auto r = stolz_probe(f, theta, aperture, depth);
      converged += r.verdict == ConvergenceVerdict::converges;
      probes.push_back(r);
    } else {
      const auto r = radial_probe(f, theta, depth);
      converged += r.verdict == ConvergenceVerdict::converges;
      for (size_t k = 0; k < r.values.size(); ++k)
        env.table.rows.push_back({theta, double(k + 1), r.points[k].real(), r.points[k].imag(), r.values[k].real(),
                                  r.values[k].imag()});
      probes.push_back(r);
    }
  }
  env.payload = {{"function", fn_echo},
                 {"mode", stolz ? "stolz" : "radial"},
                 {"probes", probes},
                 {"converged", converged},
                 {"no_convergence_detected", static_cast<int>(thetas.size()) - converged}};
  env.provenance.update({{"depth", depth}, {"tolerance", kConvergenceTolerance}, {"tail_window", 6}});
  if (stolz) env.provenance["aperture"] = aperture;
}

void cyclicity_cmd(const json& p, ReportEnvelope& env) {
  const double alpha = get_double(p, "alpha", 0.0);
  const int n_work = get_int(p, "n_work", 200), buffer = get_int(p, "buffer", kDefaultBuffer);
  const auto psi = get_poly(p, "psi", PowerSeriesPoly({1.0, -0.5}));
  const auto phi = parse_symbol(p, ZeroPolicy::distinct);
  std::vector<int> degrees;
  if (p.contains("degrees")) {
    degrees = p.at("degrees").get<std::vector<int>>();
  } else {
    for (int d = 0; d <= 30; ++d) degrees.push_back(d);
  }
  const auto r = cyclicity_residual_probe(psi, BergmanSpaceModel(alpha, n_work), phi, degrees, buffer);
  env.payload = {{"alpha", alpha}, {"psi", psi}, {"phi", symbol_to_json(phi)}, {"report", r}};
  env.provenance.update({{"n_work", n_work}, {"buffer", buffer}, {"eigen_cutoff", r.eigen_cutoff},
                         {"excluded_components", r.excluded_components}});
  env.table.header = {"degree", "residual"};
  for (size_t i = 0; i < r.degrees.size(); ++i) env.table.rows.push_back({double(r.degrees[i]), r.residuals[i]});
}

void doublestar_cmd(const json& p, ReportEnvelope& env) {
  const auto seed = require_seed(p);
  const double alpha = get_double(p, "alpha", 1.0);
  const MoebiusMap phi = parse_moebius(p);
  const int count = get_int(p, "count", 200);
  const double tol = get_double(p, "tol", 1e-9);
  const auto report =
      doublestar_factorization_check(alpha, phi, sample_factorization_tuples(seed, count, phi.a()));
  env.payload = {{"phi", symbol_to_json(phi)},
                 {"report", report},
                 {"tolerance", tol},
                 {"rank_one", report.max_defect <= tol},
                 {"display_scale", complex_to_json(-phi.xi() * phi.xi() / (1.0 - std::norm(phi.a())))}};
  env.provenance.update({{"tolerance", tol}, {"margin", kDoublestarMargin}, {"count", count}});
}

void acceptance_cmd(const json& p, ReportEnvelope& env) {
  const auto seed = require_seed(p);
  const auto results = run_acceptance(seed);
  env.payload = acceptance_payload(results);
  env.provenance["seed"] = seed;
  json timings = json::object();
  for (const auto& r : results) timings[std::to_string(r.id)] = {{"seconds", r.seconds}, {"budget", r.budget_seconds}};
  env.provenance["criterion_timing"] = timings;
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& [c, n] : kCommands)
    if (name == n) return c;
  return std::nullopt;
}

const char* to_string(Command c) {
  for (const auto& [cc, n] : kCommands)
    if (cc == c) return n;
  return "unknown";
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [c, n] : kCommands) v.emplace_back(n);
    return v;
  }();
  return names;
}

bool is_randomized(Command c) {
  return c == Command::witness_search || c == Command::doublestar_check || c == Command::acceptance;
}

const char* tool_version() { return SUBBERGMAN_VERSION; }

JobSpec JobSpec::from_json(const json& j) {
  if (!j.is_object() || !j.contains("command") || !j.at("command").is_string())
    throw DomainError("job must be an object with a string 'command'");
  const auto name = j.at("command").get<std::string>();
  const auto c = parse_command(name);
  if (!c) throw DomainError("unknown command '" + name + "'");
  JobSpec spec;
  spec.command = *c;
  if (j.contains("parameters")) {
    if (!j.at("parameters").is_object()) throw DomainError("'parameters' must be an object");
    spec.parameters = j.at("parameters");
  }
  return spec;
}

json JobSpec::to_json() const { return json{{"command", subbergman::to_string(command)}, {"parameters", parameters}}; }

void JobSpec::validate() const {
  if (!parameters.is_object()) throw DomainError("'parameters' must be an object");
  if (is_randomized(command)) require_seed(parameters);
}

std::string CsvTable::to_string() const {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17);
  for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
  return os.str();
}

json ReportEnvelope::to_json() const {
  return json{{"tool", kToolName},
              {"version", tool_version()},
              {"job", job},
              {"payload", payload},
              {"provenance", provenance},
              {"timing", {{"wall_seconds", wall_seconds}}}};
}

ReportEnvelope run(const JobSpec& job) {
  job.validate();
  const auto start = std::chrono::steady_clock::now();
  ReportEnvelope env;
  env.job = job.to_json();
  env.provenance = json::object();
  const json& p = job.parameters;
  try {
    switch (job.command) {
      case Command::kernel_eval:
        kernel_eval_cmd(p, env);
        break;
      case Command::defect_apply:
        defect_apply_cmd(p, env);
        break;
      case Command::verify_lemma:
        verify_lemma_cmd(p, env);
        break;
      case Command::verify_star:
        verify_star_cmd(p, env);
        break;
      case Command::pick_test:
        pick_test_cmd(p, env);
        break;
      case Command::witness_search:
        witness_search_cmd(p, env);
        break;
      case Command::boundary_probe:
        boundary_probe_cmd(p, env);
        break;
      case Command::cyclicity:
        cyclicity_cmd(p, env);
        break;
      case Command::doublestar_check:
        doublestar_cmd(p, env);
        break;
      case Command::acceptance:
        acceptance_cmd(p, env);
        break;
    }
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed parameters: ") + e.what());
  }
  env.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return env;
}

}  // namespace subbergman

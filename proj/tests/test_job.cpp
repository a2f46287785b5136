#include <catch_amalgamated.hpp>

#include "subbergman/errors.hpp"
#include "subbergman/job.hpp"

using namespace subbergman;

namespace {

ReportEnvelope run_json(const char* text) { return run(JobSpec::from_json(json::parse(text))); }

}  // namespace

TEST_CASE("complex numbers parse from every accepted form") {
  CHECK(complex_from_json(json(0.5)) == Complex(0.5, 0.0));
  CHECK(complex_from_json(json::parse("[0.5, -1]")) == Complex(0.5, -1.0));
  CHECK(complex_from_json(json::parse(R"({"re": 1, "im": 2})")) == Complex(1.0, 2.0));
  CHECK(complex_from_json(json("0.25,-0.5")) == Complex(0.25, -0.5));
  CHECK_THROWS_AS(complex_from_json(json("zero")), DomainError);
  CHECK(complex_to_json({1.0, -2.0}) == json::parse(R"({"re": 1.0, "im": -2.0})"));
}

TEST_CASE("job specs validate commands and seeds") {
  CHECK_THROWS_AS(JobSpec::from_json(json::parse(R"({"command": "nope"})")), DomainError);
  CHECK_THROWS_AS(JobSpec::from_json(json::parse(R"({"parameters": {}})")), DomainError);
  const auto spec = JobSpec::from_json(json::parse(R"({"command": "witness-search", "parameters": {}})"));
  CHECK_THROWS_AS(spec.validate(), DomainError);
  CHECK(is_randomized(Command::doublestar_check));
  CHECK(!is_randomized(Command::kernel_eval));
  for (const auto& name : command_names()) CHECK(std::string(to_string(*parse_command(name))) == name);
}

TEST_CASE("kernel-eval worked example") {
  const auto env = run_json(R"({"command": "kernel-eval", "parameters": {"s": 2, "z": 0.5, "w": 0.5}})");
  CHECK(std::abs(complex_from_json(env.payload["value"]) - 16.0 / 9.0) < 1e-12);
  const auto j = env.to_json();
  CHECK(j["tool"] == "subbergman");
  CHECK(j["job"]["command"] == "kernel-eval");
  CHECK(j.contains("provenance"));
}

TEST_CASE("pick-test worked example") {
  const auto env =
      run_json(R"({"command": "pick-test", "parameters": {"kernel": "bergman", "s": 2, "points": [0.5, -0.5]}})");
  CHECK(env.payload["report"]["verdict"] == "NOT_PSD");
  CHECK(std::abs(complex_from_json(env.payload["determinant"]) + 0.125) < 1e-12);
}

TEST_CASE("verify-star worked example") {
  const auto env = run_json(R"({"command": "verify-star", "parameters": {"a": 0.5, "xi": 1, "gamma": [1], "psi": [1]}})");
  CHECK(env.payload["agree"] == true);
  CHECK(env.payload["closed_form_max_diff"].get<double>() < 1e-10);
  const auto ref = complex_list_from_json(env.payload["reference_series"]);
  for (size_t n = 0; n < ref.size(); ++n) CHECK(std::abs(ref[n] - 0.75 * std::pow(0.5, n)) < 1e-12);
  CHECK(env.provenance["N"] == 150);
}

TEST_CASE("verify-lemma in both modes") {
  const auto single =
      run_json(R"({"command": "verify-lemma", "parameters": {"f": [1], "zeros": [0.5]}})");
  CHECK(single.payload["agree"] == true);
  const auto seeded = run_json(R"({"command": "verify-lemma", "parameters": {"seed": 4, "cases": 3}})");
  CHECK(seeded.payload["cases"].size() == 3);
  CHECK(seeded.payload["agree"] == true);
}

TEST_CASE("randomized payloads are byte-identical across runs") {
  const char* jobs[] = {
      R"({"command": "witness-search", "parameters": {"seed": 9, "kernel": "sub-bergman", "zeros": [0, 0.4]}})",
      R"({"command": "doublestar-check", "parameters": {"seed": 9, "alpha": 2, "a": [0, 0.5]}})",
      R"({"command": "verify-lemma", "parameters": {"seed": 9, "cases": 2}})",
  };
  for (const char* j : jobs) CHECK(run_json(j).payload.dump() == run_json(j).payload.dump());
}

TEST_CASE("boundary-probe, cyclicity and defect-apply emit tables") {
  const auto probe = run_json(
      R"({"command": "boundary-probe", "parameters": {"function": {"type": "quotient", "gamma": [1], "psi": [2, 1]}, "angles": 4}})");
  CHECK(probe.payload["converged"] == 4);
  CHECK(probe.table.rows.size() == 4 * 30);
  const auto gap =
      run_json(R"({"command": "boundary-probe", "parameters": {"function": {"type": "gap"}, "thetas": [1.0], "aperture": 0.5}})");
  CHECK(gap.payload["mode"] == "stolz");
  const auto cyc = run_json(R"({"command": "cyclicity", "parameters": {"a": 0.3, "degrees": [0, 1, 2], "n_work": 80}})");
  CHECK(cyc.table.rows.size() == 3);
  const auto csv = cyc.table.to_string();
  CHECK(csv.rfind("degree,residual\n0,", 0) == 0);
  const auto def = run_json(R"({"command": "defect-apply", "parameters": {"a": 0.5, "f": [1], "N": 60}})");
  CHECK(!def.table.empty());
}

TEST_CASE("invalid parameters surface as domain errors") {
  CHECK_THROWS_AS(run_json(R"({"command": "kernel-eval", "parameters": {"s": 2, "z": 1.5, "w": 0}})"), DomainError);
  CHECK_THROWS_AS(run_json(R"({"command": "kernel-eval", "parameters": {"s": "two", "z": 0, "w": 0}})"), DomainError);
  CHECK_THROWS_AS(run_json(R"({"command": "boundary-probe", "parameters": {"depth": 50}})"), DomainError);
  CHECK_THROWS_AS(run_json(R"({"command": "verify-star", "parameters": {"zeros": [0.1, 0.2]}})"), DomainError);
}

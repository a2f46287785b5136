// subbergman: batch front end for the sub-Bergman toolkit.
//
//   subbergman <command> [--job FILE] [--out FILE] [--csv FILE] [--seed N]
//              [--alpha X] [--a RE,IM] [--xi RE,IM] [--depth K] [--trials T]
//              [--tol E] [--set key=JSON ...]
//
// Flags are folded into the job's parameter map before it runs, so the
// envelope's "job" echo is always a complete, replayable job file.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "subbergman/errors.hpp"
#include "subbergman/job.hpp"

namespace {

using subbergman::json;

int emit_error(const std::string& kind, const std::string& message, const std::string& out_path, int code) {
  const json err{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
  if (!out_path.empty()) {
    std::ofstream(out_path) << err.dump(2) << '\n';
  }
  std::cout << err.dump(2) << '\n';
  return code;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw subbergman::DomainError("cannot open output file '" + path + "'");
  os << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for sub-Bergman spaces on the unit disk", "subbergman"};
  app.set_version_flag("--version", subbergman::tool_version());

  std::string command, job_path, out_path, csv_path, a_arg, xi_arg;
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha, tol;
  std::optional<int> depth, trials;
  std::vector<std::string> sets;

  std::string names;
  for (const auto& n : subbergman::command_names()) names += (names.empty() ? "" : ", ") + n;
  app.add_option("command", command, "One of: " + names);
  app.add_option("--job", job_path, "Job file {\"command\": ..., \"parameters\": {...}}")->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "Write the report here instead of stdout");
  app.add_option("--csv", csv_path, "Also write sampled values as CSV");
  app.add_option("--seed", seed, "Seed for randomized commands");
  app.add_option("--alpha", alpha, "Weight parameter alpha");
  app.add_option("--a", a_arg, "Moebius zero a as RE,IM");
  app.add_option("--xi", xi_arg, "Unimodular constant xi as RE,IM");
  app.add_option("--depth", depth, "Probe depth");
  app.add_option("--trials", trials, "Witness search trials");
  app.add_option("--tol", tol, "Tolerance");
  app.add_option("--set", sets, "Extra parameter key=JSON (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error("usage", e.what(), "", 1);
  }

  subbergman::JobSpec job;
  try {
    json doc = json::object();
    if (!job_path.empty()) {
      std::ifstream is(job_path);
      try {
        doc = json::parse(is);
      } catch (const json::parse_error& e) {
        throw subbergman::DomainError(std::string("job file is not valid JSON: ") + e.what());
      }
      if (!doc.is_object()) throw subbergman::DomainError("job file must hold an object");
    }
    if (!command.empty()) {
      if (doc.contains("command") && doc["command"] != command)
        throw subbergman::DomainError("command '" + command + "' does not match the job file's '" +
                                      doc["command"].dump() + "'");
      doc["command"] = command;
    }
    if (!doc.contains("command")) throw subbergman::DomainError("no command given");
    if (!doc.contains("parameters")) doc["parameters"] = json::object();
    auto& p = doc["parameters"];
    if (!p.is_object()) throw subbergman::DomainError("'parameters' must be an object");
    if (seed) p["seed"] = *seed;
    if (alpha) p["alpha"] = *alpha;
    if (!a_arg.empty()) p["a"] = a_arg;
    if (!xi_arg.empty()) p["xi"] = xi_arg;
    if (depth) p["depth"] = *depth;
    if (trials) p["trials"] = *trials;
    if (tol) p["tol"] = *tol;
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw subbergman::DomainError("--set expects key=JSON, got '" + kv + "'");
      const std::string value = kv.substr(eq + 1);
      json parsed = json::parse(value, nullptr, false);
      p[kv.substr(0, eq)] = parsed.is_discarded() ? json(value) : parsed;
    }
    job = subbergman::JobSpec::from_json(doc);
    job.validate();
  } catch (const subbergman::DomainError& e) {
    return emit_error("validation", e.what(), out_path, 1);
  }

  try {
    const auto env = subbergman::run(job);
    const std::string text = env.to_json().dump(2) + "\n";
    if (out_path.empty())
      std::cout << text;
    else
      write_text(out_path, text);
    if (!csv_path.empty()) write_text(csv_path, env.table.to_string());
  } catch (const subbergman::DomainError& e) {
    return emit_error("validation", e.what(), out_path, 1);
  } catch (const subbergman::ContractViolation& e) {
    return emit_error("contract-violation", e.what(), out_path, 2);
  } catch (const std::exception& e) {
    return emit_error("contract-violation", e.what(), out_path, 2);
  }
  return 0;
}

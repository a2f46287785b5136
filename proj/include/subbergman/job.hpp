#pragma once

// Batch job model behind the `subbergman` command-line tool: a JobSpec names a
// command and carries its parameters; run() dispatches it and returns a
// ReportEnvelope whose payload is a deterministic function of the JobSpec.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subbergman/report_json.hpp"

namespace subbergman {

enum class Command {
  kernel_eval,
  defect_apply,
  verify_lemma,
  verify_star,
  pick_test,
  witness_search,
  boundary_probe,
  cyclicity,
  doublestar_check,
  acceptance,
};

std::optional<Command> parse_command(std::string_view name);
const char* to_string(Command c);
const std::vector<std::string>& command_names();
bool is_randomized(Command c);

struct JobSpec {
  Command command = Command::kernel_eval;
  json parameters = json::object();

  /// {"command": "...", "parameters": {...}}. Throws DomainError when malformed.
  static JobSpec from_json(const json& j);
  json to_json() const;
  /// Throws DomainError when a randomized command lacks a seed.
  void validate() const;
};

/// Flat table of sampled values for plotting.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  bool empty() const { return rows.empty(); }
  std::string to_string() const;
};

struct ReportEnvelope {
  json job;
  json payload;
  json provenance;  // truncation sizes and tolerances actually used
  double wall_seconds = 0.0;
  CsvTable table;

  json to_json() const;
};

inline constexpr const char* kToolName = "subbergman";
const char* tool_version();

/// Throws DomainError on invalid parameters and ContractViolation when a
/// numerical contract breaks during the run.
ReportEnvelope run(const JobSpec& job);

}  // namespace subbergman

#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace subbergman {

/// Thrown when an argument violates an operation's precondition
/// (points outside the disk, degree out of range, coincident zeros, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical contract is breached, e.g. a defect matrix with
/// an eigenvalue below the clamp threshold (the symbol was not a contraction).
class ContractViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using WarningHandler = std::function<void(const std::string&)>;

// Defaults to writing to stderr. Returns the previous handler.
WarningHandler set_warning_handler(WarningHandler handler);
void warn(const std::string& message);

}  // namespace subbergman

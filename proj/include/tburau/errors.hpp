#pragma once

#include <stdexcept>
#include <string>

namespace tburau {

// domain errors: bad input shapes (exit code 1 at the CLI)
struct DimensionError : std::runtime_error {
  explicit DimensionError(const std::string& m) : std::runtime_error(m) {}
};
struct OrderError : std::runtime_error {
  explicit OrderError(const std::string& m) : std::runtime_error(m) {}
};
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& m) : std::runtime_error(m) {}
};

// contract/invariant violations: a computation produced data that breaks a
// structural guarantee (exit code 2 at the CLI)
struct ContractViolation : std::logic_error {
  explicit ContractViolation(const std::string& m) : std::logic_error(m) {}
};
struct InvariantViolation : std::logic_error {
  explicit InvariantViolation(const std::string& m) : std::logic_error(m) {}
};

}  // namespace tburau

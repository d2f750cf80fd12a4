#pragma once

#include <stdexcept>
#include <string>

namespace jankov {

// Bad user input: malformed files, signature mismatches, precondition failures.
// The CLI maps this to exit code 2.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A bounded search ran out of budget without reaching a verdict.  Distinct from
// a boolean "false"; the CLI maps this to exit code 3.
struct bound_error : std::runtime_error {
  explicit bound_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A cross-check between two supposedly equivalent computations disagreed.
// Never expected in a healthy build; indicates a library bug.
struct internal_error : std::logic_error {
  explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace jankov

#pragma once

#include <stdexcept>
#include <string>

namespace subman {

// Bad inputs: malformed files, invalid arguments, schema violations.
// The CLI maps these to exit code 2.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failures: singular solves, condition blowups.
// The CLI maps these to exit code 3.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace subman

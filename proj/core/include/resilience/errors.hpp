#pragma once

#include <stdexcept>
#include <string>

namespace resilience {

// Unreadable or invalid configuration input. CLI exit code 1.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Model left its domain of validity: error rates >= 1, diverged flow,
// relevant classification inside `pipeline`. CLI exit code 2.
struct ModelError : std::runtime_error {
  explicit ModelError(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical routine failed to meet its tolerance budget.
struct NumericsError : std::runtime_error {
  explicit NumericsError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace resilience

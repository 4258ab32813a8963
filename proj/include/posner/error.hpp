#pragma once

#include <stdexcept>
#include <string>

namespace posner {

// Raised when a numerical guard trips: dimension limits, trace drift beyond
// the clamp window, NaN/Inf in produced series.
class NumericGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownPresetError : public std::runtime_error {
 public:
  explicit UnknownPresetError(const std::string& name)
      : std::runtime_error("unknown preset '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

}  // namespace posner

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bongard {

/// Unreadable files, malformed manifests, wrong image counts.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad sampler or feature configuration (improper PCFG, epsilon outside (0,1), ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rule text that does not derive from the grammar. `position` is a 0-based
/// character offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace bongard

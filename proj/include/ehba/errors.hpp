#pragma once

#include <stdexcept>
#include <string>

namespace ehba {

// Invalid configuration: mismatched vector lengths, zero horizon, bad flags.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A policy produced an invalid distribution or could not be evaluated.
class PolicyError : public std::runtime_error {
 public:
  explicit PolicyError(const std::string& what) : std::runtime_error(what) {}
};

// A generator could not produce the requested number of unique policies.
class GenerationError : public std::runtime_error {
 public:
  explicit GenerationError(const std::string& what) : std::runtime_error(what) {}
};

// Input outside the operation's domain (empty history, non-ordinal game, ...).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ehba

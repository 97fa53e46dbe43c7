#pragma once

#include <stdexcept>
#include <string>

namespace repro {

/// Invalid run configuration (level constraint, bad flag values, ...).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A fixture or spec file failed to parse or violated an invariant.
class SpecLoadError : public std::runtime_error {
public:
  explicit SpecLoadError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An oracle response that could not be parsed; callers may retry with a
/// repair instruction appended.
class RetryableParseError : public std::runtime_error {
public:
  explicit RetryableParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Hard oracle failure: transport, auth, or retry exhaustion.
class OracleError : public std::runtime_error {
public:
  enum class Kind { transport, auth, retries_exhausted };

  OracleError(Kind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

/// Replay produced an observation digest that does not match the recording.
class DeterminismError : public std::runtime_error {
public:
  explicit DeterminismError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An operation was called outside its contract (engine bug, not user input).
class ContractError : public std::logic_error {
public:
  explicit ContractError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace repro

#pragma once

#include <string>

#include "repro/action.hpp"
#include "repro/observation.hpp"

namespace repro {

struct TransitionResult {
  Observation observation;
  // False when the action matched no transition; the observation is then
  // the unchanged pre-action observation.
  bool applied = false;
};

/// Action-execution contract. An instance is single-owner: the search engine
/// drives it strictly sequentially. Backends must be deterministic — the
/// same action sequence after reset() yields the same observation digests.
class Environment {
public:
  virtual ~Environment() = default;

  /// Restart from a clean state and return the initial observation.
  virtual Observation reset() = 0;

  /// Execute one action. Calling this while the current observation has the
  /// crash flag set is a contract violation; reset first.
  virtual TransitionResult execute(const ActionCommand& action) = 0;

  virtual const Observation& observe() const = 0;

  virtual const std::string& app_name() const = 0;
};

}  // namespace repro

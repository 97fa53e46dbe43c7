#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "repro/environment.hpp"

namespace repro {

/// Transition match pattern. `text` narrows set_text transitions to one
/// payload; when absent any payload matches.
struct ActionPattern {
  ActionKind kind = ActionKind::click;
  std::string feature;
  std::optional<std::string> text;

  bool matches(const ActionCommand& cmd) const;
  std::string key() const;
};

struct SimState {
  std::string activity;
  std::vector<Widget> widgets;
  Orientation orientation = Orientation::portrait;
  bool dialog_open = false;
  bool crash = false;
  std::vector<std::uint8_t> attachment;
};

struct SimTransition {
  std::string from;
  ActionPattern pattern;
  std::string to;
};

/// Declarative state machine standing in for a real app. Loading validates
/// referential integrity and determinism; a loaded spec is immutable.
struct SimAppSpec {
  std::string app_name = "sim-app";
  std::string initial;
  std::map<std::string, SimState> states;
  std::vector<SimTransition> transitions;

  static SimAppSpec from_json(const nlohmann::json& doc, const std::string& context);

  /// Returns human-readable violation messages; empty means valid.
  std::vector<std::string> validate() const;
};

/// Loads and validates a spec file. Pure: no environment is created.
SimAppSpec load_sim_app(const std::string& file_path);

/// Deterministic simulated app. Orientation is tracked separately from the
/// state id: a rotate with no declared transition toggles it in place.
class SimEnvironment : public Environment {
public:
  explicit SimEnvironment(SimAppSpec spec);

  Observation reset() override;
  TransitionResult execute(const ActionCommand& action) override;
  const Observation& observe() const override;
  const std::string& app_name() const override;

  const std::string& state_id() const { return state_; }

private:
  Observation make_observation() const;

  SimAppSpec spec_;
  std::string state_;
  Orientation orientation_ = Orientation::portrait;
  Observation current_;
  bool started_ = false;
};

}  // namespace repro

#include "repro/sim_app.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "repro/errors.hpp"
#include "jsonutil.hpp"

namespace repro {

namespace detail {

nlohmann::json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecLoadError(path + ": cannot open file");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecLoadError(path + ": " + e.what());
  }
}

}  // namespace detail

namespace {

Orientation parse_orientation(const std::string& text, const std::string& ctx) {
  if (text == "portrait") return Orientation::portrait;
  if (text == "landscape") return Orientation::landscape;
  throw SpecLoadError(ctx + ": orientation must be 'portrait' or 'landscape', got '" + text + "'");
}

ActionPattern parse_pattern(const nlohmann::json& doc, const std::string& ctx) {
  ActionPattern pattern;
  auto kind_text = detail::require_string(doc, "kind", ctx);
  auto kind = action_kind_from_string(kind_text);
  if (!kind) throw SpecLoadError(ctx + ": unknown action kind '" + kind_text + "'");
  pattern.kind = *kind;
  pattern.feature = detail::get_string(doc, "feature", "");
  if (doc.contains("text")) pattern.text = detail::require_string(doc, "text", ctx);
  return pattern;
}

std::vector<std::uint8_t> to_bytes(const std::string& s) {
  return std::vector<std::uint8_t>(s.begin(), s.end());
}

bool state_has_widget(const SimState& state, const std::string& id) {
  for (const auto& w : state.widgets) {
    if (w.id == id) return true;
  }
  return false;
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) parts.push_back(trim(part));
  return parts;
}

}  // namespace

bool ActionPattern::matches(const ActionCommand& cmd) const {
  if (cmd.kind != kind) return false;
  if (casefold(trim(cmd.feature)) != casefold(trim(feature))) return false;
  if (text && (!cmd.text || *cmd.text != *text)) return false;
  return true;
}

std::string ActionPattern::key() const {
  std::string k(to_string(kind));
  k.push_back('\x1f');
  k += casefold(trim(feature));
  k.push_back('\x1f');
  k += text ? *text : std::string("*");
  return k;
}

SimAppSpec SimAppSpec::from_json(const nlohmann::json& doc, const std::string& context) {
  SimAppSpec spec;
  spec.app_name = detail::get_string(doc, "app_name", "sim-app");
  spec.initial = detail::require_string(doc, "initial", context);

  const auto& states = detail::require_key(doc, "states", context);
  if (!states.is_object()) throw SpecLoadError(context + ": 'states' must be an object");
  for (const auto& [state_id, body] : states.items()) {
    std::string ctx = context + ": state '" + state_id + "'";
    SimState state;
    state.activity = detail::require_string(body, "activity", ctx);
    state.orientation = parse_orientation(detail::get_string(body, "orientation", "portrait"), ctx);
    state.dialog_open = detail::get_bool(body, "dialog_open", false);
    state.crash = detail::get_bool(body, "crash", false);
    if (body.contains("attachment")) {
      state.attachment = to_bytes(detail::require_string(body, "attachment", ctx));
    }
    if (body.contains("widgets")) {
      const auto& widgets = body.at("widgets");
      if (!widgets.is_array()) throw SpecLoadError(ctx + ": 'widgets' must be an array");
      for (const auto& wj : widgets) {
        Widget widget;
        widget.id = detail::require_string(wj, "id", ctx);
        widget.label = detail::get_string(wj, "label", widget.id);
        widget.kind = detail::get_string(wj, "kind", "button");
        widget.enabled = detail::get_bool(wj, "enabled", true);
        widget.checked = detail::get_bool(wj, "checked", false);
        state.widgets.push_back(std::move(widget));
      }
    }
    spec.states.emplace(state_id, std::move(state));
  }

  if (doc.contains("transitions")) {
    const auto& transitions = doc.at("transitions");
    if (!transitions.is_array()) throw SpecLoadError(context + ": 'transitions' must be an array");
    for (std::size_t i = 0; i < transitions.size(); ++i) {
      std::string ctx = context + ": transition #" + std::to_string(i);
      const auto& tj = transitions.at(i);
      SimTransition t;
      t.from = detail::require_string(tj, "from", ctx);
      t.to = detail::require_string(tj, "to", ctx);
      t.pattern = parse_pattern(detail::require_key(tj, "action", ctx), ctx);
      spec.transitions.push_back(std::move(t));
    }
  }

  auto violations = spec.validate();
  if (!violations.empty()) throw SpecLoadError(context + ": " + violations.front());
  return spec;
}

std::vector<std::string> SimAppSpec::validate() const {
  std::vector<std::string> out;
  if (states.empty()) {
    out.push_back("state map is empty");
    return out;
  }
  if (!states.count(initial)) {
    out.push_back("initial state '" + initial + "' is not declared");
  }
  for (const auto& [state_id, state] : states) {
    std::set<std::string> ids;
    for (const auto& w : state.widgets) {
      if (!ids.insert(w.id).second) {
        out.push_back("state '" + state_id + "' declares duplicate widget id '" + w.id + "'");
      }
    }
  }
  std::set<std::string> seen_keys;
  for (const auto& t : transitions) {
    auto from_it = states.find(t.from);
    if (from_it == states.end()) {
      out.push_back("transition from undeclared state '" + t.from + "'");
      continue;
    }
    if (!states.count(t.to)) {
      out.push_back("transition from '" + t.from + "' targets undeclared state '" + t.to + "'");
    }
    if (!seen_keys.insert(t.from + '\x1e' + t.pattern.key()).second) {
      out.push_back("duplicate transition key for state '" + t.from + "' and action '" +
                    std::string(to_string(t.pattern.kind)) + " " + t.pattern.feature +
                    "' (nondeterministic)");
    }
    // Pattern shape and widget references.
    ActionCommand probe{t.pattern.kind, t.pattern.feature, t.pattern.text};
    if (t.pattern.kind == ActionKind::set_text && !probe.text) probe.text = "";
    if (auto err = validate_action(probe)) {
      out.push_back("transition from '" + t.from + "': " + *err);
      continue;
    }
    const SimState& from_state = from_it->second;
    if (t.pattern.kind == ActionKind::multiple_select) {
      for (const auto& id : split_csv(t.pattern.feature)) {
        if (!state_has_widget(from_state, id)) {
          out.push_back("transition from '" + t.from + "' references undeclared widget '" + id + "'");
        }
      }
    } else if (t.pattern.kind == ActionKind::click || t.pattern.kind == ActionKind::long_click ||
               t.pattern.kind == ActionKind::set_text) {
      if (!state_has_widget(from_state, t.pattern.feature)) {
        out.push_back("transition from '" + t.from + "' references undeclared widget '" +
                      t.pattern.feature + "'");
      }
    }
  }
  return out;
}

SimAppSpec load_sim_app(const std::string& file_path) {
  return SimAppSpec::from_json(detail::parse_json_file(file_path), file_path);
}

SimEnvironment::SimEnvironment(SimAppSpec spec) : spec_(std::move(spec)) {
  auto violations = spec_.validate();
  if (!violations.empty()) throw SpecLoadError("sim app spec: " + violations.front());
}

Observation SimEnvironment::make_observation() const {
  const SimState& state = spec_.states.at(state_);
  Observation obs;
  obs.activity = state.activity;
  obs.widgets = state.widgets;
  obs.orientation = orientation_;
  obs.dialog_open = state.dialog_open;
  obs.crash = state.crash;
  obs.attachment = state.attachment;
  return obs;
}

Observation SimEnvironment::reset() {
  state_ = spec_.initial;
  orientation_ = spec_.states.at(state_).orientation;
  current_ = make_observation();
  started_ = true;
  return current_;
}

TransitionResult SimEnvironment::execute(const ActionCommand& action) {
  if (!started_) throw ContractError("execute() before reset()");
  if (current_.crash) throw ContractError("execute() from a crash state; reset first");
  if (auto err = validate_action(action)) throw ContractError("malformed action: " + *err);

  for (const auto& t : spec_.transitions) {
    if (t.from != state_) continue;
    if (!t.pattern.matches(action)) continue;
    state_ = t.to;
    orientation_ = spec_.states.at(state_).orientation;
    current_ = make_observation();
    return {current_, true};
  }

  // Rotation toggles orientation in place unless the spec overrides it.
  if (action.kind == ActionKind::rotate) {
    orientation_ = orientation_ == Orientation::portrait ? Orientation::landscape
                                                         : Orientation::portrait;
    current_ = make_observation();
    return {current_, true};
  }

  return {current_, false};
}

const Observation& SimEnvironment::observe() const {
  if (!started_) throw ContractError("observe() before reset()");
  return current_;
}

const std::string& SimEnvironment::app_name() const { return spec_.app_name; }

}  // namespace repro

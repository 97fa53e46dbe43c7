#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace repro {

/// The closed input vocabulary. Anything else is rejected at parse time.
enum class ActionKind {
  click,
  long_click,
  set_text,
  multiple_select,
  rotate,
  back,
};

constexpr int kActionKindCount = 6;

std::string_view to_string(ActionKind kind);
std::optional<ActionKind> action_kind_from_string(std::string_view text);

/// One input action. `feature` identifies the target widget (a
/// comma-separated id list for multiple_select, empty for rotate/back);
/// `text` is the payload for set_text.
struct ActionCommand {
  ActionKind kind = ActionKind::click;
  std::string feature;
  std::optional<std::string> text;

  bool operator==(const ActionCommand&) const = default;
};

/// Validates the kind/feature/text combination rules. Returns an error
/// message, or nullopt when the command is well formed.
std::optional<std::string> validate_action(const ActionCommand& cmd);

/// Dedup key: kind, trimmed case-folded feature, text as-is.
std::string normalized_action_key(const ActionCommand& cmd);

/// Trace-file line format: `kind feature [text]`. Formatting never emits
/// the optional `# ...` comment; parsing strips one if present.
std::string format_action(const ActionCommand& cmd);
ActionCommand parse_action_line(const std::string& line);

std::string trim(std::string_view s);
std::string casefold(std::string_view s);

}  // namespace repro

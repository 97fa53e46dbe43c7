#include "repro/action.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "repro/errors.hpp"

namespace repro {

namespace {

constexpr std::array<std::string_view, kActionKindCount> kKindNames = {
    "click", "long_click", "set_text", "multiple_select", "rotate", "back"};

bool takes_feature(ActionKind kind) {
  return kind != ActionKind::rotate && kind != ActionKind::back;
}

}  // namespace

std::string_view to_string(ActionKind kind) {
  return kKindNames[static_cast<std::size_t>(kind)];
}

std::optional<ActionKind> action_kind_from_string(std::string_view text) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == text) return static_cast<ActionKind>(i);
  }
  return std::nullopt;
}

std::string trim(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return std::string(s.substr(begin, end - begin));
}

std::string casefold(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::optional<std::string> validate_action(const ActionCommand& cmd) {
  if (cmd.kind == ActionKind::set_text && !cmd.text.has_value()) {
    return "set_text requires a text payload";
  }
  if (cmd.kind != ActionKind::set_text && cmd.text.has_value()) {
    return "only set_text carries a text payload";
  }
  if (takes_feature(cmd.kind) && trim(cmd.feature).empty()) {
    return std::string(to_string(cmd.kind)) + " requires a target feature";
  }
  if (!takes_feature(cmd.kind) && !cmd.feature.empty()) {
    return std::string(to_string(cmd.kind)) + " takes no feature";
  }
  return std::nullopt;
}

std::string normalized_action_key(const ActionCommand& cmd) {
  std::string key(to_string(cmd.kind));
  key.push_back('\x1f');
  key += casefold(trim(cmd.feature));
  key.push_back('\x1f');
  if (cmd.text) key += *cmd.text;
  return key;
}

std::string format_action(const ActionCommand& cmd) {
  std::string line(to_string(cmd.kind));
  if (!cmd.feature.empty()) {
    line.push_back(' ');
    line += cmd.feature;
  }
  if (cmd.text) {
    line.push_back(' ');
    line += *cmd.text;
  }
  return line;
}

ActionCommand parse_action_line(const std::string& raw_line) {
  std::string line = raw_line;
  if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
  line = trim(line);
  if (line.empty()) throw SpecLoadError("empty action line");

  auto first_space = line.find(' ');
  std::string kind_text = line.substr(0, first_space);
  auto kind = action_kind_from_string(kind_text);
  if (!kind) {
    throw SpecLoadError("unknown action kind '" + kind_text +
                        "' (allowed: click, long_click, set_text, multiple_select, rotate, back)");
  }

  ActionCommand cmd;
  cmd.kind = *kind;
  if (first_space != std::string::npos) {
    std::string rest = trim(line.substr(first_space + 1));
    if (cmd.kind == ActionKind::set_text) {
      auto second_space = rest.find(' ');
      if (second_space == std::string::npos) {
        throw SpecLoadError("set_text line needs `set_text <feature> <text>`");
      }
      cmd.feature = rest.substr(0, second_space);
      cmd.text = trim(rest.substr(second_space + 1));
    } else {
      cmd.feature = rest;
    }
  }

  if (auto err = validate_action(cmd)) throw SpecLoadError("invalid action '" + line + "': " + *err);
  return cmd;
}

}  // namespace repro

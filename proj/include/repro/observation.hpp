#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace repro {

enum class Orientation { portrait, landscape };

std::string_view to_string(Orientation o);

struct Widget {
  std::string id;
  std::string label;
  std::string kind;
  bool enabled = true;
  bool checked = false;

  bool operator==(const Widget&) const = default;
};

/// Snapshot of the UI as delivered to the oracles: structured text plus an
/// optional opaque image attachment. The attachment participates in the
/// digest but is never interpreted.
struct Observation {
  std::string activity;
  std::vector<Widget> widgets;
  Orientation orientation = Orientation::portrait;
  bool dialog_open = false;
  bool crash = false;
  std::vector<std::uint8_t> attachment;

  bool operator==(const Observation&) const = default;
};

/// Stable 64-bit hash covering every field, attachment bytes included.
std::uint64_t observation_digest(const Observation& obs);

/// One-line rendering used in prompt history and logs.
std::string summarize_observation(const Observation& obs);

/// Multi-line rendering used as the "current screen" block in prompts.
std::string describe_observation(const Observation& obs);

}  // namespace repro

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "repro/engine.hpp"

namespace repro {

/// Writes one action per line, `kind feature [text]`, with the recorded
/// post-step digest as a trailing `# post=0x...` comment.
std::string format_trace(const std::vector<TraceStep>& steps);
void write_trace_file(const std::string& path, const std::vector<TraceStep>& steps);

/// Parses a trace file back into replay steps. Digest comments are optional;
/// lines without one replay without verification. Blank lines and comment
/// lines are skipped. Throws SpecLoadError on malformed input.
std::vector<ReplayStep> read_trace_file(const std::string& path);

struct ReplayReport {
  bool completed = false;        // every step applied and digests matched
  bool crash_reproduced = false; // final observation carries the crash flag
  int steps_replayed = 0;
  std::string failure;           // first divergence, when any
};

/// Replays a trace from reset and verifies it step by step.
ReplayReport replay_trace(Environment& env, std::span<const ReplayStep> steps);

nlohmann::json iteration_record_to_json(const IterationLogRecord& record);

/// Run settings plus outcome; sufficient to re-run a scripted-mode search
/// bit-identically.
struct RunManifest {
  std::string app_spec_path;
  std::string report_path;
  std::string oracle_mode;  // "scripted" | "remote"
  std::string oracle_spec_path;
  std::string endpoint;
  std::string model;
  std::uint64_t seed = 0;
  SearchConfig config;

  struct Result {
    std::string outcome;
    int iterations_used = 0;
    std::int64_t wall_clock_ms = 0;
    int trace_length = 0;
    std::int64_t prompt_tokens = 0;
    std::int64_t completion_tokens = 0;
    std::int64_t requests = 0;
  };
  std::optional<Result> result;

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& doc, const std::string& context);
};

void write_manifest(const std::string& path, const RunManifest& manifest);
RunManifest read_manifest(const std::string& path);

}  // namespace repro

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "repro/environment.hpp"
#include "repro/oracle.hpp"
#include "repro/tree.hpp"

namespace repro {

struct SearchConfig {
  int k = 3;
  int iteration_budget = 200;
  std::chrono::milliseconds wall_clock_budget = std::chrono::minutes(30);
  int max_depth = 25;
  LevelConfig levels;
  SelectionPolicy policy;
  AblationFlags ablation;
  int rollout_horizon = 10;

  /// Throws ConfigError naming the violated invariant.
  void validate() const;
};

enum class SearchOutcome {
  crash_reproduced,
  budget_exhausted,
  tree_exhausted,
};

std::string_view to_string(SearchOutcome outcome);

struct TraceStep {
  ActionCommand action;
  std::uint64_t post_digest = 0;
};

struct ReproductionTrace {
  std::vector<TraceStep> steps;
  SearchOutcome outcome = SearchOutcome::budget_exhausted;
  int iterations_used = 0;
  std::chrono::milliseconds wall_clock_used{0};
};

struct IterationOutcome {
  std::vector<std::uint64_t> selected_path;
  std::vector<ActionCommand> expanded_actions;
  std::vector<int> raw_scores;
  bool crash_found = false;
  // Set when the iteration retired a node instead of expanding it.
  bool node_exhausted = false;
  // Set when the root itself ran out of selectable children; nothing was
  // backpropagated and the iteration does not count as completed.
  bool root_exhausted = false;
};

/// Per-iteration audit record, emitted through the observer and serialized
/// by the CLI as one JSON object per line.
struct IterationLogRecord {
  struct Child {
    ActionCommand action;
    int raw = 0;
    int mapped = 0;
    bool applied = false;
    bool crash = false;
    std::uint64_t post_digest = 0;
    // Digest observed after restoring the parent state; absent for the
    // crash child (the run stops before any further env action).
    std::optional<std::uint64_t> post_restore_digest;
  };

  int iteration = 0;
  std::vector<std::uint64_t> path_ids;
  std::uint64_t parent_digest = 0;
  std::vector<Child> children;
  double backprop_value = 0.0;
  std::string note;  // "expanded", "crash", "exhausted:<reason>"
  // Digest after the end-of-iteration restore to root; absent on crash.
  std::optional<std::uint64_t> end_digest;
};

using IterationObserver = std::function<void(const IterationLogRecord&)>;

struct EngineStats {
  int iterations_completed = 0;
  std::int64_t propose_calls = 0;
  std::int64_t score_calls = 0;
  std::int64_t env_executes = 0;
  std::int64_t env_resets = 0;
  std::int64_t digest_checks = 0;
};

struct ReplayStep {
  ActionCommand action;
  std::optional<std::uint64_t> expected_digest;
};

/// Resets the environment and replays the recorded actions, verifying each
/// expected digest on the way. Throws DeterminismError naming the first
/// divergent step. Returns the final observation.
Observation restore_state(Environment& env, std::span<const ReplayStep> steps,
                          std::optional<std::uint64_t> expected_initial_digest = std::nullopt,
                          EngineStats* stats = nullptr);

/// True iff the observation carries the crash flag.
bool detect_terminal(const Observation& obs);

/// Derives the executable action set from an observation; used by the
/// standard-rollout ablation.
std::vector<ActionCommand> candidate_actions(const Observation& obs);

/// Orchestrates the four search stages per iteration: stochastic selection
/// down the tree, state recovery by replay, top-k expansion through the
/// Expander, one-step look-ahead simulation scored by the Simulator, and
/// mean backpropagation. One engine owns one environment.
class SearchEngine {
public:
  SearchEngine(SearchConfig config, Environment& env, BugOracle& oracle, std::string report,
               IterationObserver observer = {});

  ReproductionTrace run();

  /// One search iteration; exposed for tests. run() loops this.
  IterationOutcome iterate();

  const SearchTree& tree() const { return tree_; }
  const EngineStats& stats() const { return stats_; }
  std::uint64_t root_digest() const { return root_digest_; }

private:
  struct PathInfo {
    std::vector<SearchNode*> nodes;
    std::vector<ReplayStep> steps;
  };

  std::optional<PathInfo> select_path();
  Observation restore_to(const PathInfo& path, std::vector<HistoryStep>* history = nullptr);
  int rollout_reward(std::vector<TraceStep>& rollout_trace);
  void finish_iteration(IterationLogRecord& record, bool crashed);

  SearchConfig config_;
  Environment& env_;
  BugOracle& oracle_;
  std::string report_;
  IterationObserver observer_;

  SearchTree tree_;
  std::mt19937_64 selection_rng_;
  std::mt19937_64 rollout_rng_;
  std::uint64_t root_digest_ = 0;
  EngineStats stats_;
  int iteration_index_ = 0;
  bool started_ = false;
  bool crash_found_ = false;
  std::vector<TraceStep> crash_trace_;

  void start();
};

/// Convenience wrapper: construct, run, return the trace.
ReproductionTrace run_search(const SearchConfig& config, Environment& env, BugOracle& oracle,
                             const std::string& report, IterationObserver observer = {});

}  // namespace repro

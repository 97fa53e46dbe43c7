#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "repro/engine.hpp"

namespace repro {

struct SweepCell {
  int k = 0;
  std::uint64_t seed = 0;
  bool success = false;
  int iterations_used = 0;
  std::int64_t wall_clock_ms = 0;
};

struct SweepRow {
  int k = 0;
  int high = 0;  // effective high level after the width constraint
  int runs = 0;
  int successes = 0;
  double success_rate = 0.0;
  double mean_iterations_success = 0.0;
};

struct SweepResult {
  std::vector<SweepCell> cells;
  std::vector<SweepRow> rows;
};

/// Smallest `high` satisfying high + (k-1)*low > k*mid, never below the
/// configured value. Keeps wide-k sweep cells loadable with the default
/// 5/2/1 levels.
int effective_high_for_k(const LevelConfig& levels, int k);

/// Runs a seed x k grid of scripted-mode searches and aggregates success
/// rate and iteration stats per k.
SweepResult run_sweep(const std::string& app_path, const std::string& oracle_path,
                      const std::string& report, const std::vector<std::uint64_t>& seeds,
                      const std::vector<int>& k_list, const SearchConfig& base_config);

std::string format_sweep_table(const SweepResult& result);

}  // namespace repro

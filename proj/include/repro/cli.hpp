#pragma once

#include <string>
#include <vector>

namespace repro::cli {

// Exit codes, total across all subcommands:
//   0 success (crash reproduced / replay matched with crash / validation clean)
//   1 usage, configuration, or I/O error
//   2 run or replay finished cleanly without reproducing the crash
//   3 replay digest mismatch (divergent step named on stderr)
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNotReproduced = 2;
inline constexpr int kExitReplayMismatch = 3;

/// Dispatches `repro-mcts <command> ...`. argv excludes the program name.
int dispatch(const std::vector<std::string>& argv);

int cmd_run(const std::vector<std::string>& argv);
int cmd_replay(const std::vector<std::string>& argv);
int cmd_validate(const std::vector<std::string>& argv);
int cmd_sweep(const std::vector<std::string>& argv);

}  // namespace repro::cli

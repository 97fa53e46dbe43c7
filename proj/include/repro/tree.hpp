#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "repro/action.hpp"

namespace repro {

enum class NodeStatus {
  unexpanded,
  expanded,
  terminal_crash,
  exhausted,
};

std::string_view to_string(NodeStatus status);

struct SearchEdge;

/// One app state in the search tree. Statistics follow the convention that
/// a node freshly simulated holds visit_count=1 and total_score equal to its
/// own mapped value, so UCB is defined for every expanded child; the root
/// starts at zero and accumulates one visit per completed iteration.
struct SearchNode {
  std::uint64_t id = 0;
  int visit_count = 0;
  double total_score = 0.0;
  NodeStatus status = NodeStatus::unexpanded;
  int depth = 0;
  std::vector<SearchEdge> children;

  double mean_score() const { return visit_count > 0 ? total_score / visit_count : 0.0; }
  bool selectable() const {
    return status != NodeStatus::exhausted && status != NodeStatus::terminal_crash;
  }
};

struct SearchEdge {
  ActionCommand action;
  std::uint64_t post_digest = 0;
  std::unique_ptr<SearchNode> child;
};

/// Score-discretization levels plus the expansion width they must support.
/// The load-time constraint high + (k-1)*low > k*mid keeps one high-scoring
/// child from being averaged away by its k-1 siblings.
struct LevelConfig {
  int high = 5;
  int mid = 2;
  int low = 1;
  int k = 3;
  int high_threshold = 8;
  int low_threshold = 3;
};

struct LevelConfigViolation {
  enum class Code { ordering, constraint, thresholds, width };
  Code code;
  std::string message;
};

/// All violated invariants, in checking order; empty means the config is
/// accepted. The constraint check is reported independently of ordering so
/// callers can audit it in isolation.
std::vector<LevelConfigViolation> validate_level_config(const LevelConfig& cfg);

/// Throws ConfigError naming the first failed inequality.
void require_valid_level_config(const LevelConfig& cfg);

struct SelectionPolicy {
  double temperature = 1.8;
  double exploration_constant = 1.414;
  std::uint64_t rng_seed = 0;
};

/// UCB1: mean value plus c * sqrt(ln(parent)/n).
double ucb_score(const SearchNode& node, int parent_visits, double c);

/// Temperature softmax with max-subtraction; probabilities sum to 1 and
/// preserve the input ordering.
std::vector<double> softmax_probabilities(const std::vector<double>& ucb_values, double tau);

/// Uniform draw in [0,1) from the top 53 bits, identical on every platform.
double next_unit(std::mt19937_64& rng);

/// Inverse-CDF sample over an explicit probability vector; ties broken by
/// lowest index.
std::size_t sample_index(const std::vector<double>& probabilities, std::mt19937_64& rng);

/// Samples one eligible child of an expanded node by softmax over UCB,
/// renormalized after excluding exhausted/terminal children. Returns nullptr
/// when every child is ineligible (subtree exhausted).
SearchEdge* sample_child(SearchNode& parent, const SelectionPolicy& policy, std::mt19937_64& rng);

/// Softmax-over-UCB selection distribution across the eligible children.
/// Entries for ineligible children are zero.
std::vector<double> selection_probabilities(const SearchNode& parent, const SelectionPolicy& policy);

/// Discretizes a raw 0-10 score into the configured level value.
int map_score(int raw, const LevelConfig& cfg);

/// Adds the mean of the children's mapped scores to every node on the
/// root-to-expanded-node path and increments each visit count.
void backpropagate(std::span<SearchNode* const> path, std::span<const int> child_mapped_scores);

/// Path update with a precomputed value (used when a node is retired with
/// its own mean or the failed-expansion low value).
void backpropagate_value(std::span<SearchNode* const> path, double value);

/// Owns the root and hands out node ids.
class SearchTree {
public:
  SearchTree();

  SearchNode& root() { return *root_; }
  const SearchNode& root() const { return *root_; }

  std::unique_ptr<SearchNode> make_node(int depth);
  std::uint64_t node_count() const { return next_id_; }

private:
  std::unique_ptr<SearchNode> root_;
  std::uint64_t next_id_ = 0;
};

}  // namespace repro

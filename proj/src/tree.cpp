#include "repro/tree.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "repro/errors.hpp"

namespace repro {

std::string_view to_string(NodeStatus status) {
  switch (status) {
    case NodeStatus::unexpanded: return "unexpanded";
    case NodeStatus::expanded: return "expanded";
    case NodeStatus::terminal_crash: return "terminal_crash";
    case NodeStatus::exhausted: return "exhausted";
  }
  return "unknown";
}

std::vector<LevelConfigViolation> validate_level_config(const LevelConfig& cfg) {
  using Code = LevelConfigViolation::Code;
  std::vector<LevelConfigViolation> out;
  auto fail = [&](Code code, std::string msg) { out.push_back({code, std::move(msg)}); };

  if (cfg.k < 1) {
    fail(Code::width, "expansion width must satisfy k >= 1, got k=" + std::to_string(cfg.k));
  }
  if (!(cfg.high > cfg.mid && cfg.mid > cfg.low && cfg.low >= 1)) {
    std::ostringstream msg;
    msg << "level ordering must satisfy high > mid > low >= 1, got " << cfg.high << "/" << cfg.mid
        << "/" << cfg.low;
    fail(Code::ordering, msg.str());
  }
  if (cfg.k >= 1) {
    long lhs = static_cast<long>(cfg.high) + static_cast<long>(cfg.k - 1) * cfg.low;
    long rhs = static_cast<long>(cfg.k) * cfg.mid;
    if (!(lhs > rhs)) {
      std::ostringstream msg;
      msg << "level constraint violated: high + (k-1)*low > k*mid requires " << cfg.high << " + "
          << (cfg.k - 1) << "*" << cfg.low << " > " << cfg.k << "*" << cfg.mid << ", but " << lhs
          << " <= " << rhs;
      fail(Code::constraint, msg.str());
    }
  }
  if (!(0 <= cfg.low_threshold && cfg.low_threshold < cfg.high_threshold &&
        cfg.high_threshold <= 10)) {
    std::ostringstream msg;
    msg << "thresholds must satisfy 0 <= low < high <= 10, got low=" << cfg.low_threshold
        << " high=" << cfg.high_threshold;
    fail(Code::thresholds, msg.str());
  }
  return out;
}

void require_valid_level_config(const LevelConfig& cfg) {
  auto violations = validate_level_config(cfg);
  if (!violations.empty()) throw ConfigError(violations.front().message);
}

double ucb_score(const SearchNode& node, int parent_visits, double c) {
  if (node.visit_count < 1) {
    throw ContractError("ucb_score on node " + std::to_string(node.id) +
                        " with visit_count=0; simulation must assign the first visit");
  }
  if (parent_visits < node.visit_count) {
    throw ContractError("ucb_score: parent_visits " + std::to_string(parent_visits) +
                        " < node visits " + std::to_string(node.visit_count));
  }
  double mean = node.total_score / node.visit_count;
  double exploration =
      c * std::sqrt(std::log(static_cast<double>(parent_visits)) / node.visit_count);
  return mean + exploration;
}

std::vector<double> softmax_probabilities(const std::vector<double>& ucb_values, double tau) {
  if (ucb_values.empty()) throw ContractError("softmax over no expanded children");
  if (!(tau > 0.0)) throw ContractError("softmax temperature must be positive");

  double max_value = *std::max_element(ucb_values.begin(), ucb_values.end());
  std::vector<double> out(ucb_values.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < ucb_values.size(); ++i) {
    out[i] = std::exp((ucb_values[i] - max_value) / tau);
    sum += out[i];
  }
  for (double& p : out) p /= sum;
  return out;
}

double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t sample_index(const std::vector<double>& probabilities, std::mt19937_64& rng) {
  if (probabilities.empty()) throw ContractError("sample_index over empty distribution");
  double u = next_unit(rng);
  double cumulative = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    cumulative += probabilities[i];
    if (u < cumulative) return i;
  }
  return probabilities.size() - 1;  // guard against rounding shortfall
}

SearchEdge* sample_child(SearchNode& parent, const SelectionPolicy& policy, std::mt19937_64& rng) {
  if (parent.status != NodeStatus::expanded) {
    throw ContractError("sample_child on a node that is not expanded");
  }
  std::vector<std::size_t> eligible;
  std::vector<double> values;
  for (std::size_t i = 0; i < parent.children.size(); ++i) {
    const SearchNode& child = *parent.children[i].child;
    if (!child.selectable()) continue;
    eligible.push_back(i);
    values.push_back(ucb_score(child, parent.visit_count, policy.exploration_constant));
  }
  if (eligible.empty()) return nullptr;

  auto probabilities = softmax_probabilities(values, policy.temperature);
  return &parent.children[eligible[sample_index(probabilities, rng)]];
}

std::vector<double> selection_probabilities(const SearchNode& parent,
                                            const SelectionPolicy& policy) {
  std::vector<double> out(parent.children.size(), 0.0);
  std::vector<std::size_t> eligible;
  std::vector<double> values;
  for (std::size_t i = 0; i < parent.children.size(); ++i) {
    const SearchNode& child = *parent.children[i].child;
    if (!child.selectable()) continue;
    eligible.push_back(i);
    values.push_back(ucb_score(child, parent.visit_count, policy.exploration_constant));
  }
  if (eligible.empty()) return out;
  auto probabilities = softmax_probabilities(values, policy.temperature);
  for (std::size_t j = 0; j < eligible.size(); ++j) out[eligible[j]] = probabilities[j];
  return out;
}

int map_score(int raw, const LevelConfig& cfg) {
  if (raw < 0 || raw > 10) {
    throw ContractError("raw score " + std::to_string(raw) + " outside [0,10]");
  }
  if (raw >= cfg.high_threshold) return cfg.high;
  if (raw <= cfg.low_threshold) return cfg.low;
  return cfg.mid;
}

void backpropagate_value(std::span<SearchNode* const> path, double value) {
  if (path.empty()) throw ContractError("backpropagate over empty path");
  for (SearchNode* node : path) {
    node->visit_count += 1;
    node->total_score += value;
  }
}

void backpropagate(std::span<SearchNode* const> path, std::span<const int> child_mapped_scores) {
  if (child_mapped_scores.empty()) {
    throw ContractError("backpropagate with no scorable children");
  }
  double sum = 0.0;
  for (int score : child_mapped_scores) sum += score;
  backpropagate_value(path, sum / static_cast<double>(child_mapped_scores.size()));
}

SearchTree::SearchTree() { root_ = make_node(0); }

std::unique_ptr<SearchNode> SearchTree::make_node(int depth) {
  auto node = std::make_unique<SearchNode>();
  node->id = next_id_++;
  node->depth = depth;
  return node;
}

}  // namespace repro

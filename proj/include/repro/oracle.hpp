#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "repro/action.hpp"
#include "repro/observation.hpp"

namespace repro {

/// Feature switches for the ablation modes. Flags only remove or widen
/// content; the output-restriction text the parsers rely on is identical
/// under every combination.
struct AblationFlags {
  bool disable_topk = false;
  bool disable_fewshot_cot = false;
  bool disable_image = false;
  bool standard_rollout = false;
};

std::vector<std::string> ablation_names(const AblationFlags& flags);
AblationFlags ablation_from_names(const std::vector<std::string>& names);

/// One candidate action proposed by the Expander role.
struct OracleProposal {
  ActionKind action = ActionKind::click;
  std::string feature;
  std::optional<std::string> text;

  ActionCommand to_command() const { return ActionCommand{action, feature, text}; }
  bool operator==(const OracleProposal&) const = default;
};

std::string serialize_proposals(const std::vector<OracleProposal>& proposals);

/// Simulator output, an integer relevance score in [0,10].
struct OracleScore {
  int raw = 0;
};

/// Everything needed to issue one chat request. fewshot/cot blocks are empty
/// under disable_fewshot_cot; attachments are empty under disable_image.
struct PromptBundle {
  std::string system_text;
  std::vector<std::string> fewshot_blocks;
  std::string cot_block;
  std::string user_text;
  std::vector<std::vector<std::uint8_t>> attachments;

  bool operator==(const PromptBundle&) const = default;
};

/// Prompt scaffolding, shipped as editable text files under share/prompts
/// and mirrored here as compiled-in defaults.
struct PromptTemplates {
  std::string expand_system;
  std::vector<std::string> expand_fewshot;
  std::string expand_cot;
  std::string simulate_system;
  std::vector<std::string> simulate_fewshot;
  std::string simulate_cot;

  static PromptTemplates defaults();
  static PromptTemplates load_dir(const std::string& dir);
};

/// One step of exploration history as rendered into prompts.
struct HistoryStep {
  ActionCommand action;
  std::string observation_summary;
};

inline constexpr int kHistoryLimit = 20;

PromptBundle build_expand_prompt(const std::string& report, const std::string& app_name,
                                 const Observation& obs, const std::vector<HistoryStep>& history,
                                 int k, const AblationFlags& flags,
                                 const PromptTemplates& templates = PromptTemplates::defaults());

PromptBundle build_simulate_prompt(const std::string& report, const std::vector<HistoryStep>& history,
                                   const ActionCommand& target_action, const Observation& before,
                                   const Observation& after, const AblationFlags& flags,
                                   const PromptTemplates& templates = PromptTemplates::defaults());

/// Extracts the first well-formed JSON array of {action, feature[, text]}
/// objects, drops entries outside the six-action vocabulary, dedupes on the
/// normalized (kind, feature, text) triple and truncates to k. Throws
/// RetryableParseError when nothing usable is found.
std::vector<OracleProposal> parse_expand_response(const std::string& text, int k);

/// Finds the first case-insensitive `Score: N` with N in [0,10].
OracleScore parse_simulate_response(const std::string& text);

/// Transport abstraction: one blocking chat completion.
class ChatClient {
public:
  virtual ~ChatClient() = default;
  virtual std::string complete(const PromptBundle& bundle) = 0;
};

/// Issues the request, retrying with an appended repair instruction on
/// RetryableParseError up to `retries` additional times.
std::vector<OracleProposal> expander_call(ChatClient& client, const PromptBundle& bundle, int k,
                                          int retries = 3);
OracleScore simulator_call(ChatClient& client, const PromptBundle& bundle, int retries = 3);

/// The two oracle roles as the engine consumes them.
class BugOracle {
public:
  virtual ~BugOracle() = default;

  virtual std::vector<OracleProposal> propose(const std::string& report, const std::string& app_name,
                                              const Observation& obs,
                                              const std::vector<HistoryStep>& history, int k,
                                              const AblationFlags& flags) = 0;

  virtual OracleScore score(const std::string& report, const std::vector<HistoryStep>& history,
                            const ActionCommand& action, const Observation& before,
                            const Observation& after, const AblationFlags& flags) = 0;
};

/// Observation predicate for scripted-oracle rules; absent fields match
/// anything.
struct ObsMatch {
  std::optional<std::string> activity;
  std::optional<Orientation> orientation;
  std::optional<bool> dialog_open;
  std::optional<bool> crash;
  std::optional<std::string> has_widget;

  bool matches(const Observation& obs) const;
};

struct ProposalRule {
  ObsMatch match;
  std::vector<OracleProposal> proposals;
};

/// Score rule keyed on the pre-action observation plus an optional action
/// pattern; a rule without an action matches every action.
struct ScoreRule {
  ObsMatch match;
  std::optional<ActionKind> action_kind;
  std::optional<std::string> action_feature;
  int score = 0;
};

/// File-configured deterministic oracle used by tests and acceptance runs.
struct ScriptedOracleSpec {
  std::vector<ProposalRule> proposal_rules;
  std::vector<OracleProposal> default_proposals;
  std::vector<ScoreRule> score_rules;
  int default_score = 2;
  bool noise = false;

  static ScriptedOracleSpec from_json(const nlohmann::json& doc, const std::string& context);
  std::vector<std::string> validate() const;
};

ScriptedOracleSpec load_scripted_oracle(const std::string& file_path);

std::vector<OracleProposal> scripted_propose(const ScriptedOracleSpec& spec, const Observation& obs,
                                             int k);

/// Rule lookup with the declared default; when noise is enabled an additive
/// perturbation in {-1,0,1} — a pure function of (seed, observation, action)
/// — is applied and the result clamped to [0,10].
OracleScore scripted_score(const ScriptedOracleSpec& spec, const Observation& obs,
                           const ActionCommand& action, std::uint64_t seed);

class ScriptedOracle : public BugOracle {
public:
  ScriptedOracle(ScriptedOracleSpec spec, std::uint64_t seed);

  std::vector<OracleProposal> propose(const std::string& report, const std::string& app_name,
                                      const Observation& obs, const std::vector<HistoryStep>& history,
                                      int k, const AblationFlags& flags) override;

  OracleScore score(const std::string& report, const std::vector<HistoryStep>& history,
                    const ActionCommand& action, const Observation& before, const Observation& after,
                    const AblationFlags& flags) override;

private:
  ScriptedOracleSpec spec_;
  std::uint64_t seed_;
};

/// When disable_topk is set the Expander is asked for every plausible action
/// instead of a fixed count; this cap bounds what we accept back.
inline constexpr int kMaxProposalsWithoutTopk = 32;

/// LLM-backed oracle: builds prompts, calls the client, parses with retry.
class LlmOracle : public BugOracle {
public:
  LlmOracle(ChatClient& client, PromptTemplates templates = PromptTemplates::defaults(),
            int retries = 3);

  std::vector<OracleProposal> propose(const std::string& report, const std::string& app_name,
                                      const Observation& obs, const std::vector<HistoryStep>& history,
                                      int k, const AblationFlags& flags) override;

  OracleScore score(const std::string& report, const std::vector<HistoryStep>& history,
                    const ActionCommand& action, const Observation& before, const Observation& after,
                    const AblationFlags& flags) override;

private:
  ChatClient& client_;
  PromptTemplates templates_;
  int retries_;
};

struct UsageTotals {
  std::int64_t requests = 0;
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
};

/// POSTs a structured chat payload (system + user messages, optional base64
/// image parts, temperature) to a chat-completions endpoint. Bearer token is
/// read from REPRO_MCTS_API_KEY; absence is tolerated for local endpoints.
class RemoteChatClient : public ChatClient {
public:
  struct Options {
    std::string endpoint = "http://127.0.0.1:8080/v1/chat/completions";
    std::string model = "gpt-4o";
    double temperature = 0.2;
    int timeout_seconds = 120;
  };

  explicit RemoteChatClient(Options options);

  std::string complete(const PromptBundle& bundle) override;

  const UsageTotals& usage() const { return usage_; }

private:
  Options options_;
  UsageTotals usage_;
};

}  // namespace repro

#include <regex>
#include <set>

#include "repro/errors.hpp"
#include "repro/oracle.hpp"

namespace repro {

namespace {

// Candidate spans for JSON extraction: each '[' paired with its matching
// top-level ']', honoring string literals and escapes.
std::optional<std::size_t> matching_bracket(const std::string& text, std::size_t open) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = open; i < text.size(); ++i) {
    char c = text[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') in_string = true;
    else if (c == '[' || c == '{') ++depth;
    else if (c == ']' || c == '}') {
      --depth;
      if (depth == 0) return c == ']' ? std::optional<std::size_t>(i) : std::nullopt;
    }
  }
  return std::nullopt;
}

std::optional<OracleProposal> proposal_from_json(const nlohmann::json& entry) {
  if (!entry.is_object()) return std::nullopt;
  if (!entry.contains("action") || !entry.at("action").is_string()) return std::nullopt;
  auto kind = action_kind_from_string(entry.at("action").get<std::string>());
  if (!kind) return std::nullopt;

  OracleProposal proposal;
  proposal.action = *kind;
  if (entry.contains("feature") && entry.at("feature").is_string()) {
    proposal.feature = trim(entry.at("feature").get<std::string>());
  }
  if (entry.contains("text") && entry.at("text").is_string()) {
    proposal.text = entry.at("text").get<std::string>();
  }
  if (validate_action(proposal.to_command())) return std::nullopt;
  return proposal;
}

}  // namespace

std::string serialize_proposals(const std::vector<OracleProposal>& proposals) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : proposals) {
    nlohmann::json entry{{"action", std::string(to_string(p.action))}, {"feature", p.feature}};
    if (p.text) entry["text"] = *p.text;
    arr.push_back(std::move(entry));
  }
  return arr.dump();
}

std::vector<OracleProposal> parse_expand_response(const std::string& text, int k) {
  if (k < 1) throw ContractError("parse_expand_response requires k >= 1");

  std::optional<nlohmann::json> found;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '[') continue;
    auto end = matching_bracket(text, i);
    if (!end) continue;
    auto candidate =
        nlohmann::json::parse(text.substr(i, *end - i + 1), nullptr, /*allow_exceptions=*/false);
    if (candidate.is_discarded() || !candidate.is_array()) continue;
    found = std::move(candidate);
    break;
  }
  if (!found) {
    throw RetryableParseError("no JSON array of {\"action\", \"feature\"} objects in response");
  }
  if (found->empty()) throw RetryableParseError("response contained an empty suggestion array");

  std::vector<OracleProposal> proposals;
  std::set<std::string> seen;
  for (const auto& entry : *found) {
    auto proposal = proposal_from_json(entry);
    if (!proposal) continue;  // outside the six-action vocabulary or malformed
    if (!seen.insert(normalized_action_key(proposal->to_command())).second) continue;
    proposals.push_back(std::move(*proposal));
    if (static_cast<int>(proposals.size()) == k) break;
  }
  if (proposals.empty()) {
    throw RetryableParseError("suggestion array held no valid actions from the allowed vocabulary");
  }
  return proposals;
}

OracleScore parse_simulate_response(const std::string& text) {
  static const std::regex pattern(R"(score:\s*(\d{1,9}))", std::regex::icase);
  bool saw_candidate = false;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), pattern);
       it != std::sregex_iterator(); ++it) {
    saw_candidate = true;
    int value = std::stoi((*it)[1].str());
    if (value >= 0 && value <= 10) return OracleScore{value};
  }
  if (saw_candidate) throw RetryableParseError("score outside [0,10]");
  throw RetryableParseError("no 'Score: N' pattern in response");
}

namespace {

constexpr const char* kExpandRepair =
    "Your previous reply could not be parsed. Respond with only a JSON array like "
    "[{\"action\": \"click\", \"feature\": \"TargetWidget\"}] using only the allowed actions "
    "click, long_click, set_text, multiple_select, rotate, back.";

constexpr const char* kSimulateRepair =
    "Your previous reply could not be parsed. Respond with exactly 'Score: N' where N is an "
    "integer from 0 to 10.";

}  // namespace

std::vector<OracleProposal> expander_call(ChatClient& client, const PromptBundle& bundle, int k,
                                          int retries) {
  PromptBundle attempt = bundle;
  std::string last_error;
  for (int round = 0; round <= retries; ++round) {
    std::string reply = client.complete(attempt);
    try {
      return parse_expand_response(reply, k);
    } catch (const RetryableParseError& e) {
      last_error = e.what();
      attempt.user_text += std::string("\n\n") + kExpandRepair;
    }
  }
  throw OracleError(OracleError::Kind::retries_exhausted,
                    "expander retries exhausted: " + last_error);
}

OracleScore simulator_call(ChatClient& client, const PromptBundle& bundle, int retries) {
  PromptBundle attempt = bundle;
  std::string last_error;
  for (int round = 0; round <= retries; ++round) {
    std::string reply = client.complete(attempt);
    try {
      return parse_simulate_response(reply);
    } catch (const RetryableParseError& e) {
      last_error = e.what();
      attempt.user_text += std::string("\n\n") + kSimulateRepair;
    }
  }
  throw OracleError(OracleError::Kind::retries_exhausted,
                    "simulator retries exhausted: " + last_error);
}

LlmOracle::LlmOracle(ChatClient& client, PromptTemplates templates, int retries)
    : client_(client), templates_(std::move(templates)), retries_(retries) {}

std::vector<OracleProposal> LlmOracle::propose(const std::string& report,
                                               const std::string& app_name, const Observation& obs,
                                               const std::vector<HistoryStep>& history, int k,
                                               const AblationFlags& flags) {
  auto bundle = build_expand_prompt(report, app_name, obs, history, k, flags, templates_);
  int accept = flags.disable_topk ? kMaxProposalsWithoutTopk : k;
  return expander_call(client_, bundle, accept, retries_);
}

OracleScore LlmOracle::score(const std::string& report, const std::vector<HistoryStep>& history,
                             const ActionCommand& action, const Observation& before,
                             const Observation& after, const AblationFlags& flags) {
  auto bundle = build_simulate_prompt(report, history, action, before, after, flags, templates_);
  return simulator_call(client_, bundle, retries_);
}

}  // namespace repro

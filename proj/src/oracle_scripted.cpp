#include <set>

#include "repro/digest.hpp"
#include "repro/errors.hpp"
#include "repro/oracle.hpp"
#include "jsonutil.hpp"

namespace repro {

namespace {

OracleProposal proposal_from_spec(const nlohmann::json& doc, const std::string& ctx) {
  auto kind_text = detail::require_string(doc, "action", ctx);
  auto kind = action_kind_from_string(kind_text);
  if (!kind) throw SpecLoadError(ctx + ": unknown action kind '" + kind_text + "'");
  OracleProposal p;
  p.action = *kind;
  p.feature = detail::get_string(doc, "feature", "");
  if (doc.contains("text")) p.text = detail::require_string(doc, "text", ctx);
  return p;
}

ObsMatch match_from_spec(const nlohmann::json& doc, const std::string& ctx) {
  ObsMatch m;
  if (!doc.is_object()) throw SpecLoadError(ctx + ": 'match' must be an object");
  if (doc.contains("activity")) m.activity = detail::require_string(doc, "activity", ctx);
  if (doc.contains("orientation")) {
    auto text = detail::require_string(doc, "orientation", ctx);
    if (text == "portrait") m.orientation = Orientation::portrait;
    else if (text == "landscape") m.orientation = Orientation::landscape;
    else throw SpecLoadError(ctx + ": bad orientation '" + text + "'");
  }
  if (doc.contains("dialog_open")) m.dialog_open = detail::get_bool(doc, "dialog_open", false);
  if (doc.contains("crash")) m.crash = detail::get_bool(doc, "crash", false);
  if (doc.contains("has_widget")) m.has_widget = detail::require_string(doc, "has_widget", ctx);
  return m;
}

}  // namespace

bool ObsMatch::matches(const Observation& obs) const {
  if (activity && obs.activity != *activity) return false;
  if (orientation && obs.orientation != *orientation) return false;
  if (dialog_open && obs.dialog_open != *dialog_open) return false;
  if (crash && obs.crash != *crash) return false;
  if (has_widget) {
    bool found = false;
    for (const auto& w : obs.widgets) {
      if (w.id == *has_widget) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

ScriptedOracleSpec ScriptedOracleSpec::from_json(const nlohmann::json& doc,
                                                 const std::string& context) {
  ScriptedOracleSpec spec;
  if (doc.contains("default_score")) spec.default_score = detail::require_int(doc, "default_score", context);
  spec.noise = detail::get_bool(doc, "noise", false);

  if (doc.contains("default_proposals")) {
    for (const auto& pj : doc.at("default_proposals")) {
      spec.default_proposals.push_back(proposal_from_spec(pj, context + ": default_proposals"));
    }
  }
  if (doc.contains("proposal_rules")) {
    const auto& rules = doc.at("proposal_rules");
    if (!rules.is_array()) throw SpecLoadError(context + ": 'proposal_rules' must be an array");
    for (std::size_t i = 0; i < rules.size(); ++i) {
      std::string ctx = context + ": proposal_rules[" + std::to_string(i) + "]";
      ProposalRule rule;
      rule.match = match_from_spec(detail::require_key(rules.at(i), "match", ctx), ctx);
      for (const auto& pj : detail::require_key(rules.at(i), "proposals", ctx)) {
        rule.proposals.push_back(proposal_from_spec(pj, ctx));
      }
      spec.proposal_rules.push_back(std::move(rule));
    }
  }
  if (doc.contains("score_rules")) {
    const auto& rules = doc.at("score_rules");
    if (!rules.is_array()) throw SpecLoadError(context + ": 'score_rules' must be an array");
    for (std::size_t i = 0; i < rules.size(); ++i) {
      std::string ctx = context + ": score_rules[" + std::to_string(i) + "]";
      ScoreRule rule;
      rule.match = match_from_spec(detail::require_key(rules.at(i), "match", ctx), ctx);
      rule.score = detail::require_int(rules.at(i), "score", ctx);
      if (rules.at(i).contains("action")) {
        const auto& aj = rules.at(i).at("action");
        auto kind_text = detail::require_string(aj, "kind", ctx);
        auto kind = action_kind_from_string(kind_text);
        if (!kind) throw SpecLoadError(ctx + ": unknown action kind '" + kind_text + "'");
        rule.action_kind = *kind;
        if (aj.contains("feature")) rule.action_feature = detail::require_string(aj, "feature", ctx);
      }
      spec.score_rules.push_back(std::move(rule));
    }
  }

  auto violations = spec.validate();
  if (!violations.empty()) throw SpecLoadError(context + ": " + violations.front());
  return spec;
}

std::vector<std::string> ScriptedOracleSpec::validate() const {
  std::vector<std::string> out;
  auto check_score = [&](int score, const std::string& where) {
    if (score < 0 || score > 10) {
      out.push_back(where + ": score " + std::to_string(score) + " outside [0,10]");
    }
  };
  check_score(default_score, "default_score");
  for (std::size_t i = 0; i < score_rules.size(); ++i) {
    check_score(score_rules[i].score, "score_rules[" + std::to_string(i) + "]");
  }
  auto check_proposals = [&](const std::vector<OracleProposal>& proposals, const std::string& where) {
    for (const auto& p : proposals) {
      if (auto err = validate_action(p.to_command())) out.push_back(where + ": " + *err);
    }
  };
  check_proposals(default_proposals, "default_proposals");
  for (std::size_t i = 0; i < proposal_rules.size(); ++i) {
    check_proposals(proposal_rules[i].proposals, "proposal_rules[" + std::to_string(i) + "]");
  }
  return out;
}

ScriptedOracleSpec load_scripted_oracle(const std::string& file_path) {
  return ScriptedOracleSpec::from_json(detail::parse_json_file(file_path), file_path);
}

std::vector<OracleProposal> scripted_propose(const ScriptedOracleSpec& spec, const Observation& obs,
                                             int k) {
  if (k < 1) throw ContractError("scripted_propose requires k >= 1");
  const std::vector<OracleProposal>* source = &spec.default_proposals;
  for (const auto& rule : spec.proposal_rules) {
    if (rule.match.matches(obs)) {
      source = &rule.proposals;
      break;
    }
  }
  std::vector<OracleProposal> out;
  std::set<std::string> seen;
  for (const auto& p : *source) {
    if (!seen.insert(normalized_action_key(p.to_command())).second) continue;
    out.push_back(p);
    if (static_cast<int>(out.size()) == k) break;
  }
  return out;
}

OracleScore scripted_score(const ScriptedOracleSpec& spec, const Observation& obs,
                           const ActionCommand& action, std::uint64_t seed) {
  int raw = spec.default_score;
  for (const auto& rule : spec.score_rules) {
    if (!rule.match.matches(obs)) continue;
    if (rule.action_kind && *rule.action_kind != action.kind) continue;
    if (rule.action_feature &&
        casefold(trim(*rule.action_feature)) != casefold(trim(action.feature))) {
      continue;
    }
    raw = rule.score;
    break;
  }
  if (spec.noise) {
    // Perturbation is a pure function of (seed, observation, action).
    std::string key = digest_hex(observation_digest(obs)) + normalized_action_key(action);
    std::uint64_t h = fnv1a(key, fnv1a(digest_hex(seed)));
    raw += static_cast<int>(h % 3) - 1;
    raw = std::max(0, std::min(10, raw));
  }
  return OracleScore{raw};
}

ScriptedOracle::ScriptedOracle(ScriptedOracleSpec spec, std::uint64_t seed)
    : spec_(std::move(spec)), seed_(seed) {}

std::vector<OracleProposal> ScriptedOracle::propose(const std::string&, const std::string&,
                                                    const Observation& obs,
                                                    const std::vector<HistoryStep>&, int k,
                                                    const AblationFlags& flags) {
  int accept = flags.disable_topk ? kMaxProposalsWithoutTopk : k;
  return scripted_propose(spec_, obs, accept);
}

OracleScore ScriptedOracle::score(const std::string&, const std::vector<HistoryStep>&,
                                  const ActionCommand& action, const Observation& before,
                                  const Observation&, const AblationFlags&) {
  return scripted_score(spec_, before, action, seed_);
}

std::vector<std::string> ablation_names(const AblationFlags& flags) {
  std::vector<std::string> out;
  if (flags.disable_topk) out.push_back("disable_topk");
  if (flags.disable_fewshot_cot) out.push_back("disable_fewshot_cot");
  if (flags.disable_image) out.push_back("disable_image");
  if (flags.standard_rollout) out.push_back("standard_rollout");
  return out;
}

AblationFlags ablation_from_names(const std::vector<std::string>& names) {
  AblationFlags flags;
  for (const auto& name : names) {
    if (name == "disable_topk") flags.disable_topk = true;
    else if (name == "disable_fewshot_cot") flags.disable_fewshot_cot = true;
    else if (name == "disable_image") flags.disable_image = true;
    else if (name == "standard_rollout") flags.standard_rollout = true;
    else if (!name.empty()) {
      throw ConfigError("unknown ablation flag '" + name +
                        "' (allowed: disable_topk, disable_fewshot_cot, disable_image, "
                        "standard_rollout)");
    }
  }
  return flags;
}

}  // namespace repro

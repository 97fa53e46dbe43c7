#include <filesystem>
#include <fstream>
#include <sstream>

#include "repro/errors.hpp"
#include "repro/oracle.hpp"

namespace repro {

namespace {

// The output-restriction paragraphs are contractual: the response parsers
// are written against them and every ablation leaves them untouched.
constexpr const char* kExpandSystem = R"(You are an expert Android UI tester helping to reproduce a reported crash on an emulator. Drive the app one input at a time until the buggy behavior described in the report is actually observed, not merely suspected.

Input: you will receive the app name, the full bug report, a structured description of the current screen, the actions taken so far, and, when available, a screenshot of the current page. After your suggestions are executed you will be consulted again on the resulting screen, and the cycle repeats until the bug reproduces.

Output restriction: reply with a JSON array of action objects, formatted exactly as [{"action": "x1", "feature": "y1"}, {"action": "x2", "feature": "y2"}, ...]. The "action" field must be one of: click, long_click, set_text, multiple_select, rotate, back. The "feature" field names the target widget id or label; leave it empty for rotate and back. For set_text include an additional "text" field with the input to type.)";

constexpr const char* kExpandFewshot = R"(Example:
App name: MyApp
Bug report: Clicking "Profile" button leads to crash.
UI information:
Activity: MainActivity
Groups: ["Home"], ["Profile"], ["Settings"]
History: (no prior steps)
Reasoning:
- The "Profile" widget named in the report is visible on this page.
- The crash may trigger right after clicking it.
- No scrolling or detour is needed first.
Suggestions:
[{"action": "click", "feature": "Profile"}, {"action": "click", "feature": "Settings"}, {"action": "click", "feature": "Home"}])";

constexpr const char* kExpandCot = R"(When generating suggestions:
1. Check whether a widget mentioned in the bug report is visible on the current screen.
2. If it is visible, interacting with it is the first priority.
3. If it is not visible, consider whether another action is likely to reveal it.
4. Otherwise, work through the remaining first-level widgets systematically.
5. Prefer actions that have not already been tried from this screen.)";

constexpr const char* kSimulateSystem = R"(You are an expert in reproducing Android bugs. Judge whether a specific action - the target action - was a valid and appropriate step toward completing the bug report, and assign a score to that action.

Input: you will receive the bug report being reproduced, the reproduction path followed so far with the UI information for each step, the target action, and the screen state before and after the action was executed.

Output restriction: your response format must be as follows: Score: 0-10. For example, if you intend to return a score of 5, your reply should contain exactly 'Score: 5'.)";

constexpr const char* kSimulateFewshot1 = R"(Example:
Bug report: When trying to log in, pressing the "Sign In" button does nothing.
Previous page: Login screen with email and password fields and a "Sign In" button.
History: (no prior steps)
Target action: click Sign In
Result: The button is clearly relevant to the bug report and is the correct next action.
Score: 9)";

constexpr const char* kSimulateFewshot2 = R"(Example:
Bug report: When scrolling down in the article list, some items disappear.
Previous page: Article list screen.
History: (no prior steps)
Target action: back
Result: This action does not move toward reproducing the scrolling bug.
Score: 2)";

constexpr const char* kSimulateCot = R"(When scoring:
1. Read the bug report carefully and identify the core triggering action or condition.
2. Compare the target action with that goal: does it interact with the suspected element, and does it logically advance the reproduction?
3. Check how the UI changed between the before and after states.
4. Assign the score: high when the action directly advances reproduction, low when it leads away from it.)";

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecLoadError(path.string() + ": cannot open prompt template");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  // Editors tend to add a trailing newline; the compiled-in defaults have none.
  while (!text.empty() && text.back() == '\n') text.pop_back();
  return text;
}

void render_history(std::ostringstream& out, const std::vector<HistoryStep>& history) {
  if (history.empty()) {
    out << "(no prior steps)\n";
    return;
  }
  std::size_t begin = history.size() > kHistoryLimit ? history.size() - kHistoryLimit : 0;
  if (begin > 0) out << "(earlier steps omitted)\n";
  for (std::size_t i = begin; i < history.size(); ++i) {
    out << (i + 1) << ". " << format_action(history[i].action) << " -> "
        << history[i].observation_summary << "\n";
  }
}

}  // namespace

PromptTemplates PromptTemplates::defaults() {
  PromptTemplates t;
  t.expand_system = kExpandSystem;
  t.expand_fewshot = {kExpandFewshot};
  t.expand_cot = kExpandCot;
  t.simulate_system = kSimulateSystem;
  t.simulate_fewshot = {kSimulateFewshot1, kSimulateFewshot2};
  t.simulate_cot = kSimulateCot;
  return t;
}

PromptTemplates PromptTemplates::load_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::path base(dir);
  PromptTemplates t;
  t.expand_system = read_file(base / "expand_system.txt");
  t.expand_cot = read_file(base / "expand_cot.txt");
  t.simulate_system = read_file(base / "simulate_system.txt");
  t.simulate_cot = read_file(base / "simulate_cot.txt");
  for (int i = 1;; ++i) {
    fs::path p = base / ("expand_fewshot_" + std::to_string(i) + ".txt");
    if (!fs::exists(p)) break;
    t.expand_fewshot.push_back(read_file(p));
  }
  for (int i = 1;; ++i) {
    fs::path p = base / ("simulate_fewshot_" + std::to_string(i) + ".txt");
    if (!fs::exists(p)) break;
    t.simulate_fewshot.push_back(read_file(p));
  }
  if (t.expand_fewshot.empty() || t.simulate_fewshot.empty()) {
    throw SpecLoadError(dir + ": prompt dir must ship at least one few-shot block per role");
  }
  return t;
}

PromptBundle build_expand_prompt(const std::string& report, const std::string& app_name,
                                 const Observation& obs, const std::vector<HistoryStep>& history,
                                 int k, const AblationFlags& flags,
                                 const PromptTemplates& templates) {
  PromptBundle bundle;
  bundle.system_text = templates.expand_system;
  if (!flags.disable_fewshot_cot) {
    bundle.fewshot_blocks = templates.expand_fewshot;
    bundle.cot_block = templates.expand_cot;
  }

  std::ostringstream user;
  user << "App name: " << app_name << "\n";
  user << "Bug report:\n" << report << "\n\n";
  user << "Current screen:\n" << describe_observation(obs) << "\n";
  user << "History:\n";
  render_history(user, history);
  user << "\n";
  if (flags.disable_topk) {
    user << "List every plausible action for this screen as a JSON array, ordered from most to "
            "least promising.";
  } else {
    user << "Provide the " << k
         << " suggested actions that have the highest likelihood of reproducing the bug report, "
            "most promising first.";
  }
  bundle.user_text = user.str();

  if (!flags.disable_image && !obs.attachment.empty()) {
    bundle.attachments.push_back(obs.attachment);
  }
  return bundle;
}

PromptBundle build_simulate_prompt(const std::string& report, const std::vector<HistoryStep>& history,
                                   const ActionCommand& target_action, const Observation& before,
                                   const Observation& after, const AblationFlags& flags,
                                   const PromptTemplates& templates) {
  PromptBundle bundle;
  bundle.system_text = templates.simulate_system;
  if (!flags.disable_fewshot_cot) {
    bundle.fewshot_blocks = templates.simulate_fewshot;
    bundle.cot_block = templates.simulate_cot;
  }

  std::ostringstream user;
  user << "Bug report:\n" << report << "\n\n";
  user << "Reproduction path so far:\n";
  render_history(user, history);
  user << "\n";
  user << "Target action: " << format_action(target_action) << "\n\n";
  user << "Screen before the action:\n" << describe_observation(before) << "\n";
  user << "Screen after the action:\n" << describe_observation(after) << "\n";
  user << "Assign the score for the target action now.";
  bundle.user_text = user.str();

  if (!flags.disable_image) {
    if (!before.attachment.empty()) bundle.attachments.push_back(before.attachment);
    if (!after.attachment.empty()) bundle.attachments.push_back(after.attachment);
  }
  return bundle;
}

}  // namespace repro

#include <cstdlib>

#include <httplib.h>

#include "repro/errors.hpp"
#include "repro/oracle.hpp"

namespace repro {

namespace {

std::string base64_encode(const std::vector<std::uint8_t>& data) {
  static const char* alphabet =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((data.size() + 2) / 3 * 4);
  for (std::size_t i = 0; i < data.size(); i += 3) {
    std::uint32_t chunk = static_cast<std::uint32_t>(data[i]) << 16;
    if (i + 1 < data.size()) chunk |= static_cast<std::uint32_t>(data[i + 1]) << 8;
    if (i + 2 < data.size()) chunk |= data[i + 2];
    out.push_back(alphabet[(chunk >> 18) & 0x3f]);
    out.push_back(alphabet[(chunk >> 12) & 0x3f]);
    out.push_back(i + 1 < data.size() ? alphabet[(chunk >> 6) & 0x3f] : '=');
    out.push_back(i + 2 < data.size() ? alphabet[chunk & 0x3f] : '=');
  }
  return out;
}

struct EndpointParts {
  std::string base;  // scheme://host[:port]
  std::string path;
};

EndpointParts split_endpoint(const std::string& endpoint) {
  auto scheme_end = endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("endpoint must be an http(s) URL, got '" + endpoint + "'");
  }
  auto path_start = endpoint.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {endpoint, "/"};
  return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

std::string system_message(const PromptBundle& bundle) {
  std::string text = bundle.system_text;
  for (const auto& block : bundle.fewshot_blocks) {
    text += "\n\n";
    text += block;
  }
  if (!bundle.cot_block.empty()) {
    text += "\n\n";
    text += bundle.cot_block;
  }
  return text;
}

}  // namespace

RemoteChatClient::RemoteChatClient(Options options) : options_(std::move(options)) {}

std::string RemoteChatClient::complete(const PromptBundle& bundle) {
  nlohmann::json payload;
  payload["model"] = options_.model;
  payload["temperature"] = options_.temperature;

  nlohmann::json messages = nlohmann::json::array();
  messages.push_back({{"role", "system"}, {"content", system_message(bundle)}});

  if (bundle.attachments.empty()) {
    messages.push_back({{"role", "user"}, {"content", bundle.user_text}});
  } else {
    nlohmann::json parts = nlohmann::json::array();
    parts.push_back({{"type", "text"}, {"text", bundle.user_text}});
    for (const auto& attachment : bundle.attachments) {
      parts.push_back({{"type", "image_url"},
                       {"image_url", {{"url", "data:image/png;base64," + base64_encode(attachment)}}}});
    }
    messages.push_back({{"role", "user"}, {"content", std::move(parts)}});
  }
  payload["messages"] = std::move(messages);

  auto parts = split_endpoint(options_.endpoint);
  httplib::Client client(parts.base);
  client.set_connection_timeout(options_.timeout_seconds, 0);
  client.set_read_timeout(options_.timeout_seconds, 0);
  client.set_write_timeout(options_.timeout_seconds, 0);

  httplib::Headers headers;
  if (const char* key = std::getenv("REPRO_MCTS_API_KEY"); key && *key) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  auto result = client.Post(parts.path, headers, payload.dump(), "application/json");
  ++usage_.requests;
  if (!result) {
    throw OracleError(OracleError::Kind::transport,
                      "transport failure contacting " + options_.endpoint + ": " +
                          httplib::to_string(result.error()));
  }
  if (result->status == 401 || result->status == 403) {
    throw OracleError(OracleError::Kind::auth,
                      "auth failure (HTTP " + std::to_string(result->status) +
                          "); set REPRO_MCTS_API_KEY");
  }
  if (result->status != 200) {
    throw OracleError(OracleError::Kind::transport,
                      "endpoint returned HTTP " + std::to_string(result->status));
  }

  auto body = nlohmann::json::parse(result->body, nullptr, /*allow_exceptions=*/false);
  if (body.is_discarded()) {
    throw OracleError(OracleError::Kind::transport, "endpoint returned unparseable JSON");
  }
  if (body.contains("usage") && body.at("usage").is_object()) {
    const auto& usage = body.at("usage");
    if (usage.contains("prompt_tokens") && usage.at("prompt_tokens").is_number()) {
      usage_.prompt_tokens += usage.at("prompt_tokens").get<std::int64_t>();
    }
    if (usage.contains("completion_tokens") && usage.at("completion_tokens").is_number()) {
      usage_.completion_tokens += usage.at("completion_tokens").get<std::int64_t>();
    }
  }

  try {
    const auto& content = body.at("choices").at(0).at("message").at("content");
    if (content.is_string()) return content.get<std::string>();
    if (content.is_array()) {
      // Some servers answer with content parts; concatenate the text ones.
      std::string text;
      for (const auto& part : content) {
        if (part.is_object() && part.contains("text") && part.at("text").is_string()) {
          text += part.at("text").get<std::string>();
        }
      }
      return text;
    }
  } catch (const nlohmann::json::exception&) {
    // fall through
  }
  throw OracleError(OracleError::Kind::transport, "no message text in endpoint response");
}

}  // namespace repro

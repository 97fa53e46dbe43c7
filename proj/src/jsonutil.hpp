#pragma once

#include <string>

#include <json.hpp>

#include "repro/errors.hpp"

namespace repro::detail {

inline const nlohmann::json& require_key(const nlohmann::json& obj, const char* key,
                                         const std::string& ctx) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw SpecLoadError(ctx + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

inline std::string require_string(const nlohmann::json& obj, const char* key,
                                  const std::string& ctx) {
  const auto& v = require_key(obj, key, ctx);
  if (!v.is_string()) throw SpecLoadError(ctx + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

inline int require_int(const nlohmann::json& obj, const char* key, const std::string& ctx) {
  const auto& v = require_key(obj, key, ctx);
  if (!v.is_number_integer()) throw SpecLoadError(ctx + ": field '" + key + "' must be an integer");
  return v.get<int>();
}

inline bool get_bool(const nlohmann::json& obj, const char* key, bool fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_boolean()) throw SpecLoadError(std::string("field '") + key + "' must be a boolean");
  return v.get<bool>();
}

inline std::string get_string(const nlohmann::json& obj, const char* key,
                              const std::string& fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_string()) throw SpecLoadError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

nlohmann::json parse_json_file(const std::string& path);

}  // namespace repro::detail

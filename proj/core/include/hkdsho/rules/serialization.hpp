#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "hkdsho/rules/store.hpp"

namespace hkdsho::rules {

inline constexpr int kStoreVersion = 1;

void to_json(nlohmann::json& j, const StateCondition& c);
void from_json(const nlohmann::json& j, StateCondition& c);
void to_json(nlohmann::json& j, const Conclusion& c);
void from_json(const nlohmann::json& j, Conclusion& c);
void to_json(nlohmann::json& j, const ExtractedRule& r);
void from_json(const nlohmann::json& j, ExtractedRule& r);
/// Conditions are {state, min, max} or {state, equals}.
void to_json(nlohmann::json& j, const ExistingRule& r);
void from_json(const nlohmann::json& j, ExistingRule& r);
void to_json(nlohmann::json& j, const RuleEvent& e);
void from_json(const nlohmann::json& j, RuleEvent& e);

/// {version, next_id, existing: [...], extracted: [...], log: [...]}
nlohmann::json store_to_json(const RuleStore& store);
RuleStore store_from_json(const nlohmann::json& j);

void save_store(const RuleStore& store, const std::filesystem::path& path);
RuleStore load_store(const std::filesystem::path& path);

}  // namespace hkdsho::rules

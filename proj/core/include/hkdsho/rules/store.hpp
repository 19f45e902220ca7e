#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hkdsho/rules/types.hpp"

namespace hkdsho::rules {

/// Existing and extracted rule databases plus an append-only provenance log.
class RuleStore {
 public:
  RuleStore() = default;
  /// Throws ConfigError on duplicate ids or rules without conditions/conclusions.
  explicit RuleStore(std::vector<ExistingRule> existing);

  const std::vector<ExistingRule>& existing() const { return existing_; }
  /// Extracted rules of one service (empty when none).
  const std::vector<ExtractedRule>& extracted(const std::string& service) const;
  std::vector<ExtractedRule>& extracted_mutable(const std::string& service) { return extracted_[service]; }
  /// All extracted rules, grouped by service name.
  std::vector<ExtractedRule> all_extracted() const;
  std::size_t extracted_count() const;

  const ExtractedRule* find_extracted(const std::string& id) const;
  bool is_existing_id(const std::string& id) const;

  /// Stores a new rule under a fresh id, logs it, and returns the id.
  std::string insert_extracted(ExtractedRule rule, std::uint64_t step);

  void append_log(RuleEvent e) { log_.push_back(std::move(e)); }
  const std::vector<RuleEvent>& log() const { return log_; }

  std::uint64_t next_id() const { return next_id_; }
  void set_next_id(std::uint64_t n) { next_id_ = n; }

  friend bool operator==(const RuleStore&, const RuleStore&);

 private:
  std::vector<ExistingRule> existing_;
  std::map<std::string, std::vector<ExtractedRule>> extracted_;
  std::vector<RuleEvent> log_;
  std::uint64_t next_id_ = 1;
};

}  // namespace hkdsho::rules

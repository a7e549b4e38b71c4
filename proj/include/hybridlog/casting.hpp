#pragma once

#include <functional>
#include <memory>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "hybridlog/token.hpp"

namespace hybridlog {

/// A named key kind with a whole-value anchored matcher. Rules from the
/// default table carry a hand-written predicate equivalent to their pattern;
/// user rules are matched with the compiled pattern.
class CastRule {
 public:
  using Predicate = std::function<bool(std::string_view)>;

  /// Throws ConfigError when the pattern does not compile.
  CastRule(std::string key_kind, std::string pattern, int priority, Predicate fast = {});

  const std::string& key_kind() const { return key_kind_; }
  const std::string& pattern() const { return pattern_; }
  int priority() const { return priority_; }

  bool matches(std::string_view value) const;
  /// Always goes through the regex, even when a predicate is installed.
  bool matches_pattern(std::string_view value) const;
  bool has_predicate() const { return static_cast<bool>(fast_); }

 private:
  std::string key_kind_;
  std::string pattern_;
  int priority_;
  std::shared_ptr<const std::regex> regex_;
  Predicate fast_;
};

/// Ordered casting table. Rules fire by ascending priority, ties in
/// insertion order. Key kind names are unique.
class CastTable {
 public:
  CastTable() = default;

  /// ip, datetime, hex, path, url, float, int (priorities 10..70).
  static const CastTable& defaults();

  /// Adds a rule; throws ConfigError on a duplicate key kind.
  void add(CastRule rule);
  /// Replaces the matcher of an existing kind, keeping its priority.
  bool replace(const std::string& key_kind, std::string pattern);
  bool contains(std::string_view key_kind) const;

  const std::vector<CastRule>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }

  /// First matching rule's key kind, or nullptr.
  const std::string* classify(std::string_view value) const;

 private:
  std::vector<CastRule> rules_;
};

/// Casts one raw token. The whole token is tried first; failing that, the
/// value after the last '=' (or the last ':' when there is no '=') is tried
/// and the part up to the separator is kept as the key prefix.
Token cast_token(std::string_view raw, const CastTable& table);

/// Positionwise cast of the literal tokens; keys and wildcards pass through.
TokenSequence cast_sequence(const TokenSequence& seq, const CastTable& table);

std::size_t key_count(const TokenSequence& seq);

namespace cast_predicates {
bool is_ip(std::string_view s);
bool is_datetime(std::string_view s);
bool is_hex(std::string_view s);
bool is_path(std::string_view s);
bool is_url(std::string_view s);
bool is_float(std::string_view s);
bool is_int(std::string_view s);
}  // namespace cast_predicates

}  // namespace hybridlog

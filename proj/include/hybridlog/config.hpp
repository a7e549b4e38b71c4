#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "hybridlog/casting.hpp"

namespace hybridlog {

/// Per-source parsing configuration.
///
/// Invariants (checked by validate()): 0 <= eps_e <= eps_m <= 1,
/// 0 <= eps_a <= 1, 1 <= min_id_len <= max_id_len, max_tree_depth >= 1,
/// tab_width >= 1.
struct SourceConfig {
  std::string header_pattern;
  std::size_t max_tree_depth = 6;
  std::size_t min_id_len = 2;
  std::size_t max_id_len = 50;
  double eps_a = 0.9;  // aggregating similarity threshold
  double eps_m = 0.7;  // auto-mode merging threshold
  double eps_e = 0.2;  // elastic gap between auto and guided thresholds
  CastTable cast_rules = CastTable::defaults();
  std::size_t tab_width = 4;

  /// Merging threshold used in guided mode.
  double eps_guided() const { return eps_m - eps_e; }

  /// Throws ConfigError naming the first violated field.
  void validate() const;
};

/// Parses a key-value document ("key = value" lines, '#' comments).
///
/// Recognised keys: header_pattern (required), max_tree_depth, min_id_len,
/// max_id_len, eps_a, eps_m, eps_e, tab_width, cast_mode (extend|replace) and
/// any number of "cast.<kind> = <pattern>" lines. In extend mode custom kinds
/// fire before the default table, and a custom kind that shares a default
/// name replaces that default's pattern in place. In replace mode the custom
/// rules are the whole table, in file order.
SourceConfig parse_config(std::string_view document);

/// Reads and parses a config file; a missing file is a ConfigError.
SourceConfig load_config(const std::filesystem::path& path);

/// Inverse of parse_config for the scalar fields and any non-default rules.
std::string format_config(const SourceConfig& cfg);

}  // namespace hybridlog

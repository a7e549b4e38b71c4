#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hybridlog/config.hpp"
#include "hybridlog/eval/ground_truth.hpp"
#include "hybridlog/ingestion.hpp"

namespace hybridlog {

/// Cartesian grid over the tunable fields. Every dimension needs at least one
/// value; use from_base() to pin the ones you don't search.
struct ConfigSpace {
  std::vector<std::size_t> max_tree_depth;
  std::vector<std::size_t> min_id_len;
  std::vector<std::size_t> max_id_len;
  std::vector<double> eps_a;
  std::vector<double> eps_m;

  static ConfigSpace from_base(const SourceConfig& base);
  std::size_t size() const;
};

enum class Objective : std::uint8_t { GroupingAccuracy, TemplateF1 };

struct TuningSample {
  std::vector<RawMessage> messages;
  GroundTruth truth;
};

/// Up to `n` messages drawn without replacement (kept in stream order) with
/// their ground truth.
TuningSample sample_messages(std::vector<RawMessage> messages, const GroundTruth& truth, std::size_t n,
                             std::uint64_t seed);

struct GridPoint {
  SourceConfig config;
  double score = 0;
};

struct GridResult {
  GridPoint best;
  std::vector<GridPoint> evaluated;  // in lexicographic grid order
  std::size_t skipped = 0;           // points violating config invariants
};

/// Parses the sample in auto mode at every grid point and keeps the best
/// score; ties go to the lexicographically smallest point ordered by
/// (max_tree_depth, min_id_len, max_id_len, eps_a, eps_m). Throws ConfigError
/// when the grid is empty or has no valid point.
GridResult grid_search(const SourceConfig& base, const ConfigSpace& space, const TuningSample& sample,
                       Objective objective);

}  // namespace hybridlog

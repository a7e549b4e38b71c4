#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "hybridlog/aggregation.hpp"
#include "hybridlog/config.hpp"
#include "hybridlog/token.hpp"

namespace hybridlog {

/// The characteristic token sequence of a message used for grouping.
struct Identifier {
  TokenSequence tokens;
  LogType log_type = LogType::Event;
  std::size_t n_t = 0;  // total tokens
  std::size_t n_k = 0;  // key tokens
  /// Number of leading tokens taken from the first block of a TEXT message;
  /// equals n_t for every other type.
  std::size_t split = 0;

  std::size_t n_p() const { return n_t - n_k; }
};

Identifier make_identifier(TokenSequence tokens, LogType type, std::size_t split);

/// Body line indices the identifier was read from verbatim. The head is the
/// single line behind the first part (EVENT line, TABLE header, TEXT first
/// line); the tail is the single line behind a TEXT message's second part.
struct IdentifierSource {
  std::optional<std::size_t> head_line;
  std::optional<std::size_t> tail_line;
};

/// EVENT: the line itself. TEXT: common sequence of the first block followed
/// by that of the last block (just the first when there is one block).
/// TABLE: the single-line block right before the first multi-line block,
/// falling back to the first block's common sequence when that block is
/// already multi-line.
Identifier extract_identifier(const AggregationResult& agg, IdentifierSource* source = nullptr);

/// Fork labels along the routing path, cut to min(max_tree_depth, n_t):
/// "<*kind>" for every key in order, then the remaining tokens' text.
std::vector<std::string> fork_labels(const Identifier& id, std::size_t max_tree_depth);

/// Coarse (type, N_t, N_k) roots over depth-limited search trees whose
/// leaves hold template group ids. Out-of-range identifiers go to one
/// fallback list per log type.
class ParseTree {
 public:
  struct Node {
    std::map<std::string, std::unique_ptr<Node>> children;
    std::vector<GroupId> groups;  // populated on leaves only
  };
  using RootKey = std::tuple<LogType, std::size_t, std::size_t>;

  struct Slot {
    std::vector<GroupId>* groups = nullptr;
    bool fallback = false;
  };

  ParseTree() = default;
  ParseTree(ParseTree&&) noexcept = default;
  ParseTree& operator=(ParseTree&&) noexcept = default;

  /// Returns the leaf (created on first visit) or the fallback list.
  Slot route(const Identifier& id, const SourceConfig& cfg);

  const std::vector<GroupId>& fallback(LogType type) const {
    return fallback_[static_cast<std::size_t>(type)];
  }
  const std::map<RootKey, std::unique_ptr<Node>>& roots() const { return roots_; }

  /// Every node below the roots plus the roots themselves.
  std::size_t node_count() const;
  std::size_t leaf_count() const;

  /// One node per line, two spaces of indent per depth, with fork labels and
  /// group counts; fallback lists follow the roots.
  void dump(std::ostream& out) const;

 private:
  std::map<RootKey, std::unique_ptr<Node>> roots_;
  std::array<std::vector<GroupId>, 3> fallback_;
};

}  // namespace hybridlog

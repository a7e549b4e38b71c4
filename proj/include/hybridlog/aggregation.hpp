#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hybridlog/token.hpp"

namespace hybridlog {

/// 1 when both tokens are the same literal text, both keys of the same kind
/// (prefixes ignored) or both plain wildcards; 0 otherwise.
int token_equal(const Token& a, const Token& b);

/// Positional similarity: matches over the common prefix length divided by
/// the mean length of the two sequences. Two empty sequences score 1.
double similarity(std::span<const Token> a, std::span<const Token> b);
inline double similarity(const TokenSequence& a, const TokenSequence& b) {
  return similarity(std::span<const Token>(a.tokens), std::span<const Token>(b.tokens));
}

/// Positionwise common sequence over the shorter length: agreeing positions
/// keep a's token, disagreeing ones become "<*>". Indent is taken from a.
TokenSequence common_sequence(const TokenSequence& a, const TokenSequence& b);

struct Block {
  std::vector<std::size_t> members;  // indices into the aggregated body, ascending
  TokenSequence common;              // running common sequence; indent = first member's
  std::size_t indent() const { return common.indent; }
  std::size_t size() const { return members.size(); }
};

struct AggregationResult {
  std::vector<Block> blocks;
  LogType log_type = LogType::Event;
  int type_counter = 0;
};

/// Line aggregation and type determination. A single line is an EVENT.
/// Otherwise each line after the first is compared with the last block's
/// common sequence: similarity >= eps_a absorbs it and decrements the
/// counter, an equal indent absorbs it and increments the counter, anything
/// else opens a new block. A negative counter means TABLE, otherwise TEXT.
///
/// Throws std::invalid_argument on an empty body.
AggregationResult aggregate(std::span<const TokenSequence> body, double eps_a);

}  // namespace hybridlog

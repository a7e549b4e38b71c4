#include "hybridlog/aggregation.hpp"

#include <algorithm>
#include <stdexcept>

namespace hybridlog {

int token_equal(const Token& a, const Token& b) {
  if (a.kind != b.kind) return 0;
  switch (a.kind) {
    case TokenKind::Literal:
      return a.text == b.text ? 1 : 0;
    case TokenKind::Key:
      return a.key_kind == b.key_kind ? 1 : 0;
    case TokenKind::Wildcard:
      return 1;
  }
  return 0;
}

double similarity(std::span<const Token> a, std::span<const Token> b) {
  if (a.empty() && b.empty()) return 1.0;
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t same = 0;
  for (std::size_t i = 0; i < n; ++i) same += static_cast<std::size_t>(token_equal(a[i], b[i]));
  const double mean_len = (static_cast<double>(a.size()) + static_cast<double>(b.size())) / 2.0;
  return static_cast<double>(same) / mean_len;
}

TokenSequence common_sequence(const TokenSequence& a, const TokenSequence& b) {
  TokenSequence out;
  out.indent = a.indent;
  const std::size_t n = std::min(a.size(), b.size());
  out.tokens.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.tokens.push_back(token_equal(a[i], b[i]) ? a[i] : Token::wildcard());
  return out;
}

AggregationResult aggregate(std::span<const TokenSequence> body, double eps_a) {
  if (body.empty()) throw std::invalid_argument("aggregate: empty message body");

  AggregationResult result;
  Block last{{0}, body[0]};
  if (body.size() > 1) {
    int counter = 0;
    for (std::size_t i = 1; i < body.size(); ++i) {
      const TokenSequence& line = body[i];
      if (similarity(line, last.common) >= eps_a) {
        --counter;
        last.members.push_back(i);
        last.common = common_sequence(last.common, line);
      } else if (line.indent == last.indent()) {
        ++counter;
        last.members.push_back(i);
        last.common = common_sequence(last.common, line);
      } else {
        result.blocks.push_back(std::move(last));
        last = Block{{i}, line};
      }
    }
    result.type_counter = counter;
    result.log_type = counter < 0 ? LogType::Table : LogType::Text;
  }
  result.blocks.push_back(std::move(last));
  return result;
}

}  // namespace hybridlog

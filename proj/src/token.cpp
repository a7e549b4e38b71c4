#include "hybridlog/token.hpp"

namespace hybridlog {

Token Token::literal(std::string text) {
  Token t;
  t.kind = TokenKind::Literal;
  t.text = std::move(text);
  return t;
}

Token Token::key(std::string key_kind, std::string text, std::string prefix) {
  Token t;
  t.kind = TokenKind::Key;
  t.text = std::move(text);
  t.key_kind = std::move(key_kind);
  t.prefix = std::move(prefix);
  return t;
}

Token Token::wildcard() {
  Token t;
  t.kind = TokenKind::Wildcard;
  t.text = std::string(kWildcard);
  return t;
}

std::string Token::render() const {
  switch (kind) {
    case TokenKind::Literal:
      return text;
    case TokenKind::Key:
      return prefix + "<*" + key_kind + ">";
    case TokenKind::Wildcard:
      break;
  }
  return std::string(kWildcard);
}

std::string render(const std::vector<Token>& tokens, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end && i < tokens.size(); ++i) {
    if (i != begin) out += ' ';
    out += tokens[i].render();
  }
  return out;
}

std::string render(const TokenSequence& seq) { return render(seq.tokens, 0, seq.size()); }

std::string_view to_string(LogType type) {
  switch (type) {
    case LogType::Event:
      return "EVENT";
    case LogType::Table:
      return "TABLE";
    case LogType::Text:
      return "TEXT";
  }
  return "EVENT";
}

std::optional<LogType> parse_log_type(std::string_view text) {
  if (text == "EVENT") return LogType::Event;
  if (text == "TABLE") return LogType::Table;
  if (text == "TEXT") return LogType::Text;
  return std::nullopt;
}

}  // namespace hybridlog

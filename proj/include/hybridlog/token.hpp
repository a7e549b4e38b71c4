#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hybridlog {

using MessageId = std::uint64_t;
using GroupId = std::uint64_t;

inline constexpr std::string_view kWildcard = "<*>";

enum class TokenKind : std::uint8_t { Literal, Key, Wildcard };

/// One unit of a log line: literal text, a typed key produced by casting, or
/// the plain "<*>" wildcard that appears in common sequences and templates.
struct Token {
  TokenKind kind = TokenKind::Literal;
  std::string text;      // original text (the wildcard stores "<*>")
  std::string key_kind;  // non-empty iff kind == Key
  std::string prefix;    // literal "name=" part kept from key=value forms

  static Token literal(std::string text);
  static Token key(std::string key_kind, std::string text, std::string prefix = {});
  static Token wildcard();

  bool is_literal() const { return kind == TokenKind::Literal; }
  bool is_key() const { return kind == TokenKind::Key; }
  bool is_wildcard() const { return kind == TokenKind::Wildcard; }

  /// LITERAL -> text, KEY -> prefix + "<*kind>", WILDCARD -> "<*>".
  std::string render() const;

  friend bool operator==(const Token&, const Token&) = default;
};

struct TokenSequence {
  std::vector<Token> tokens;
  std::size_t indent = 0;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  const Token& operator[](std::size_t i) const { return tokens[i]; }
  Token& operator[](std::size_t i) { return tokens[i]; }

  friend bool operator==(const TokenSequence&, const TokenSequence&) = default;
};

/// Space-joined rendering of every token.
std::string render(const TokenSequence& seq);
std::string render(const std::vector<Token>& tokens, std::size_t begin, std::size_t end);

enum class LogType : std::uint8_t { Event, Table, Text };

inline constexpr LogType kAllLogTypes[] = {LogType::Event, LogType::Table, LogType::Text};

std::string_view to_string(LogType type);
std::optional<LogType> parse_log_type(std::string_view text);

}  // namespace hybridlog

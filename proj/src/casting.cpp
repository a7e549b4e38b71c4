#include "hybridlog/casting.hpp"

#include <algorithm>

#include "hybridlog/errors.hpp"

namespace hybridlog {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_hex_digit(char c) {
  return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' || c == '\r';
}

// Consumes between lo and hi digits from s[pos]; returns the count taken or 0.
std::size_t take_digits(std::string_view s, std::size_t pos, std::size_t lo, std::size_t hi) {
  std::size_t n = 0;
  while (pos + n < s.size() && n < hi && is_digit(s[pos + n])) ++n;
  return n >= lo ? n : 0;
}

std::size_t digit_run(std::string_view s, std::size_t pos) {
  std::size_t n = 0;
  while (pos + n < s.size() && is_digit(s[pos + n])) ++n;
  return n;
}

bool exact_digits(std::string_view s, std::size_t& pos, std::size_t count) {
  if (pos + count > s.size()) return false;
  for (std::size_t i = 0; i < count; ++i)
    if (!is_digit(s[pos + i])) return false;
  pos += count;
  return true;
}

bool no_space(std::string_view s) { return std::none_of(s.begin(), s.end(), is_space); }

// Optional "[.,]\d+" fraction; fails only when a separator has no digits.
bool fraction_ok(std::string_view s, std::size_t& pos) {
  if (pos < s.size() && (s[pos] == '.' || s[pos] == ',')) {
    std::size_t n = digit_run(s, pos + 1);
    if (n == 0) return false;
    pos += 1 + n;
  }
  return true;
}

bool iso_datetime(std::string_view s) {
  std::size_t pos = 0;
  if (!exact_digits(s, pos, 4)) return false;
  if (pos >= s.size() || (s[pos] != '-' && s[pos] != '/')) return false;
  ++pos;
  if (!exact_digits(s, pos, 2)) return false;
  if (pos >= s.size() || (s[pos] != '-' && s[pos] != '/')) return false;
  ++pos;
  if (!exact_digits(s, pos, 2)) return false;
  if (pos == s.size()) return true;
  if (s[pos] != 'T') return false;
  ++pos;
  if (!exact_digits(s, pos, 2)) return false;
  if (pos >= s.size() || s[pos] != ':') return false;
  ++pos;
  if (!exact_digits(s, pos, 2)) return false;
  if (pos < s.size() && s[pos] == ':') {
    ++pos;
    if (!exact_digits(s, pos, 2)) return false;
    if (!fraction_ok(s, pos)) return false;
  }
  if (pos == s.size()) return true;
  if (s[pos] == 'Z') return pos + 1 == s.size();
  if (s[pos] != '+' && s[pos] != '-') return false;
  ++pos;
  if (!exact_digits(s, pos, 2)) return false;
  if (pos < s.size() && s[pos] == ':') ++pos;
  if (!exact_digits(s, pos, 2)) return false;
  return pos == s.size();
}

bool clock_time(std::string_view s) {
  std::size_t pos = 0;
  std::size_t h = take_digits(s, 0, 1, 2);
  if (h == 0) return false;
  pos = h;
  if (pos >= s.size() || s[pos] != ':') return false;
  ++pos;
  if (!exact_digits(s, pos, 2)) return false;
  if (pos >= s.size() || s[pos] != ':') return false;
  ++pos;
  if (!exact_digits(s, pos, 2)) return false;
  if (!fraction_ok(s, pos)) return false;
  return pos == s.size();
}

}  // namespace

namespace cast_predicates {

bool is_ip(std::string_view s) {
  std::size_t pos = 0;
  for (int part = 0; part < 4; ++part) {
    std::size_t n = take_digits(s, pos, 1, 3);
    if (n == 0) return false;
    pos += n;
    if (part < 3) {
      if (pos >= s.size() || s[pos] != '.') return false;
      ++pos;
    }
  }
  if (pos == s.size()) return true;
  if (s[pos] != ':') return false;
  std::size_t n = digit_run(s, pos + 1);
  return n >= 1 && n <= 5 && pos + 1 + n == s.size();
}

bool is_datetime(std::string_view s) { return iso_datetime(s) || clock_time(s); }

bool is_hex(std::string_view s) {
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X'))
    return std::all_of(s.begin() + 2, s.end(), is_hex_digit);
  return s.size() >= 8 && std::all_of(s.begin(), s.end(), is_hex_digit);
}

bool is_path(std::string_view s) {
  if (s.empty() || !no_space(s)) return false;
  if (s[0] == '/') return true;
  if (s.size() >= 2 && s[0] == '.' && s[1] == '/') return true;
  return s[0] == '~' && s.find('/') != std::string_view::npos;
}

bool is_url(std::string_view s) {
  if (s.empty() || !is_alpha(s[0])) return false;
  std::size_t pos = 1;
  while (pos < s.size() &&
         (is_alpha(s[pos]) || is_digit(s[pos]) || s[pos] == '+' || s[pos] == '.' || s[pos] == '-'))
    ++pos;
  if (s.substr(pos, 3) != "://") return false;
  pos += 3;
  return pos < s.size() && no_space(s.substr(pos));
}

bool is_float(std::string_view s) {
  std::size_t pos = 0;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
  std::size_t whole = digit_run(s, pos);
  pos += whole;
  if (pos >= s.size() || s[pos] != '.') return false;
  ++pos;
  std::size_t frac = digit_run(s, pos);
  pos += frac;
  if (whole == 0 && frac == 0) return false;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
    std::size_t exp = digit_run(s, pos);
    if (exp == 0) return false;
    pos += exp;
  }
  return pos == s.size();
}

bool is_int(std::string_view s) {
  std::size_t pos = 0;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
  std::size_t n = digit_run(s, pos);
  return n > 0 && pos + n == s.size();
}

}  // namespace cast_predicates

CastRule::CastRule(std::string key_kind, std::string pattern, int priority, Predicate fast)
    : key_kind_(std::move(key_kind)),
      pattern_(std::move(pattern)),
      priority_(priority),
      fast_(std::move(fast)) {
  if (key_kind_.empty()) throw ConfigError("cast_rules", "empty key kind");
  try {
    regex_ = std::make_shared<const std::regex>(pattern_, std::regex::ECMAScript | std::regex::optimize);
  } catch (const std::regex_error& e) {
    throw ConfigError("cast." + key_kind_, std::string("invalid pattern: ") + e.what());
  }
}

bool CastRule::matches(std::string_view value) const {
  if (fast_) return fast_(value);
  return matches_pattern(value);
}

bool CastRule::matches_pattern(std::string_view value) const {
  return std::regex_match(value.begin(), value.end(), *regex_);
}

const CastTable& CastTable::defaults() {
  static const CastTable table = [] {
    namespace p = cast_predicates;
    CastTable t;
    t.add(CastRule("ip", R"((\d{1,3}\.){3}\d{1,3}(:\d{1,5})?)", 10, p::is_ip));
    t.add(CastRule("datetime",
                   R"(\d{4}[-/]\d{2}[-/]\d{2}(T\d{2}:\d{2}(:\d{2}([.,]\d+)?)?(Z|[+-]\d{2}:?\d{2})?)?)"
                   R"(|\d{1,2}:\d{2}:\d{2}([.,]\d+)?)",
                   20, p::is_datetime));
    t.add(CastRule("hex", R"(0[xX][0-9a-fA-F]+|[0-9a-fA-F]{8,})", 30, p::is_hex));
    t.add(CastRule("path", R"((/|\./|~[^/\s]*/)\S*)", 40, p::is_path));
    t.add(CastRule("url", R"([A-Za-z][A-Za-z0-9+.\-]*://\S+)", 50, p::is_url));
    t.add(CastRule("float", R"([+-]?(\d+\.\d*|\.\d+)([eE][+-]?\d+)?)", 60, p::is_float));
    t.add(CastRule("int", R"([+-]?\d+)", 70, p::is_int));
    return t;
  }();
  return table;
}

void CastTable::add(CastRule rule) {
  if (contains(rule.key_kind()))
    throw ConfigError("cast." + rule.key_kind(), "duplicate key kind");
  auto pos = std::upper_bound(rules_.begin(), rules_.end(), rule.priority(),
                              [](int p, const CastRule& r) { return p < r.priority(); });
  rules_.insert(pos, std::move(rule));
}

bool CastTable::replace(const std::string& key_kind, std::string pattern) {
  for (auto& rule : rules_) {
    if (rule.key_kind() == key_kind) {
      rule = CastRule(key_kind, std::move(pattern), rule.priority());
      return true;
    }
  }
  return false;
}

bool CastTable::contains(std::string_view key_kind) const {
  return std::any_of(rules_.begin(), rules_.end(),
                     [&](const CastRule& r) { return r.key_kind() == key_kind; });
}

const std::string* CastTable::classify(std::string_view value) const {
  for (const auto& rule : rules_)
    if (rule.matches(value)) return &rule.key_kind();
  return nullptr;
}

Token cast_token(std::string_view raw, const CastTable& table) {
  if (const auto* kind = table.classify(raw)) return Token::key(*kind, std::string(raw));

  std::size_t sep = raw.rfind('=');
  if (sep == std::string_view::npos) sep = raw.rfind(':');
  if (sep != std::string_view::npos && sep + 1 < raw.size()) {
    if (const auto* kind = table.classify(raw.substr(sep + 1)))
      return Token::key(*kind, std::string(raw), std::string(raw.substr(0, sep + 1)));
  }
  return Token::literal(std::string(raw));
}

TokenSequence cast_sequence(const TokenSequence& seq, const CastTable& table) {
  TokenSequence out;
  out.indent = seq.indent;
  out.tokens.reserve(seq.size());
  for (const auto& token : seq.tokens) {
    if (token.is_literal())
      out.tokens.push_back(cast_token(token.text, table));
    else
      out.tokens.push_back(token);
  }
  return out;
}

std::size_t key_count(const TokenSequence& seq) {
  return static_cast<std::size_t>(
      std::count_if(seq.tokens.begin(), seq.tokens.end(), [](const Token& t) { return t.is_key(); }));
}

}  // namespace hybridlog

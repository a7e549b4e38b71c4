#include "hybridlog/ingestion.hpp"

#include "hybridlog/errors.hpp"

namespace hybridlog {

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f'; }

// Display columns of s, counting code points and expanding tabs.
std::size_t columns(std::string_view s, std::size_t tab_width) {
  std::size_t cols = 0;
  for (char c : s) {
    if (c == '\t')
      cols += tab_width;
    else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80)
      ++cols;
  }
  return cols;
}

}  // namespace

TokenSequence tokenize(std::string_view line, std::size_t tab_width) {
  TokenSequence seq;
  std::size_t pos = 0;
  while (pos < line.size() && is_ws(line[pos])) ++pos;
  // A whitespace-only line has no indent worth reporting.
  if (pos == line.size()) return seq;
  seq.indent = columns(line.substr(0, pos), tab_width);
  while (pos < line.size()) {
    std::size_t end = pos;
    while (end < line.size() && !is_ws(line[end])) ++end;
    seq.tokens.push_back(Token::literal(std::string(line.substr(pos, end - pos))));
    pos = end;
    while (pos < line.size() && is_ws(line[pos])) ++pos;
  }
  return seq;
}

std::vector<TokenSequence> tokenize_body(const RawMessage& msg, const SourceConfig& cfg) {
  std::vector<TokenSequence> body;
  body.reserve(msg.lines.size());
  for (std::size_t i = 0; i < msg.lines.size(); ++i) {
    std::string_view line = msg.lines[i];
    if (i == 0) {
      auto seq = tokenize(line.substr(msg.header_length), cfg.tab_width);
      if (seq.empty()) continue;
      std::size_t start = msg.header_length;
      while (start < line.size() && is_ws(line[start])) ++start;
      seq.indent = columns(line.substr(0, start), cfg.tab_width);
      body.push_back(std::move(seq));
    } else {
      auto seq = tokenize(line, cfg.tab_width);
      if (!seq.empty()) body.push_back(std::move(seq));
    }
  }
  return body;
}

std::vector<std::string> body_lines(const RawMessage& msg) {
  std::vector<std::string> out;
  out.reserve(msg.lines.size());
  for (std::size_t i = 0; i < msg.lines.size(); ++i) {
    std::string_view line = msg.lines[i];
    if (i == 0) {
      line = line.substr(msg.header_length);
      while (!line.empty() && is_ws(line.front())) line.remove_prefix(1);
    }
    bool has_token = false;
    for (char c : line) has_token = has_token || !is_ws(c);
    if (has_token) out.emplace_back(line);
  }
  return out;
}

bool is_skippable_line(std::string_view line) {
  for (char c : line) {
    if (is_ws(c) || c == '-' || c == '=' || c == '+' || c == '|' || c == '*' || c == '#') continue;
    return false;
  }
  return true;
}

std::string sanitize_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::string out;
  out.reserve(line.size());
  const auto* s = reinterpret_cast<const unsigned char*>(line.data());
  const std::size_t n = line.size();
  std::size_t i = 0;
  while (i < n) {
    unsigned char c = s[i];
    std::size_t len = 0;
    if (c < 0x80)
      len = 1;
    else if (c >= 0xC2 && c <= 0xDF)
      len = 2;
    else if (c >= 0xE0 && c <= 0xEF)
      len = 3;
    else if (c >= 0xF0 && c <= 0xF4)
      len = 4;
    bool ok = len > 0 && i + len <= n;
    for (std::size_t k = 1; ok && k < len; ++k) ok = (s[i + k] & 0xC0) == 0x80;
    if (ok && len == 3) {
      // overlongs and surrogates
      if (c == 0xE0 && s[i + 1] < 0xA0) ok = false;
      if (c == 0xED && s[i + 1] > 0x9F) ok = false;
    }
    if (ok && len == 4) {
      if (c == 0xF0 && s[i + 1] < 0x90) ok = false;
      if (c == 0xF4 && s[i + 1] > 0x8F) ok = false;
    }
    if (ok) {
      out.append(line.substr(i, len));
      i += len;
    } else {
      out.append("\xEF\xBF\xBD");
      ++i;
    }
  }
  return out;
}

Segmenter::Segmenter(const SourceConfig& cfg) {
  try {
    header_ = std::regex(cfg.header_pattern, std::regex::ECMAScript | std::regex::optimize);
  } catch (const std::regex_error& e) {
    throw ConfigError("header_pattern", std::string("invalid pattern: ") + e.what());
  }
}

std::optional<std::size_t> Segmenter::match_header(std::string_view line) const {
  std::match_results<std::string_view::const_iterator> m;
  if (std::regex_search(line.begin(), line.end(), m, header_, std::regex_constants::match_continuous))
    return static_cast<std::size_t>(m.length(0));
  return std::nullopt;
}

std::optional<RawMessage> Segmenter::feed(std::string_view line) {
  ++line_no_;
  std::optional<RawMessage> done;
  if (is_skippable_line(line)) {
    ++dropped_;
    if (current_)
      current_->line_end = line_no_;
    else
      ++orphans_;
    return done;
  }
  if (auto header_len = match_header(line)) {
    done = std::move(current_);
    current_ = RawMessage{};
    current_->message_id = next_id_++;
    current_->line_start = current_->line_end = line_no_;
    current_->lines.emplace_back(line);
    current_->header_length = *header_len;
    return done;
  }
  if (!current_) {
    current_ = RawMessage{};
    current_->message_id = 0;
    current_->flagged = true;
    current_->line_start = line_no_;
  }
  current_->line_end = line_no_;
  current_->lines.emplace_back(line);
  return done;
}

std::optional<RawMessage> Segmenter::finish() {
  std::optional<RawMessage> done = std::move(current_);
  current_.reset();
  return done;
}

void segment(std::istream& in, const SourceConfig& cfg, const std::function<void(RawMessage&&)>& sink) {
  Segmenter seg(cfg);
  std::string line;
  while (std::getline(in, line)) {
    if (auto msg = seg.feed(sanitize_line(line))) sink(std::move(*msg));
  }
  if (auto msg = seg.finish()) sink(std::move(*msg));
}

std::vector<RawMessage> segment(const std::vector<std::string>& lines, const SourceConfig& cfg) {
  std::vector<RawMessage> out;
  Segmenter seg(cfg);
  for (const auto& line : lines) {
    if (auto msg = seg.feed(line)) out.push_back(std::move(*msg));
  }
  if (auto msg = seg.finish()) out.push_back(std::move(*msg));
  return out;
}

}  // namespace hybridlog

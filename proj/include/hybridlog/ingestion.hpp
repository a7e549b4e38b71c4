#pragma once

#include <cstddef>
#include <functional>
#include <istream>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "hybridlog/config.hpp"
#include "hybridlog/token.hpp"

namespace hybridlog {

/// One segmented log message. lines[0] is the header line (header included);
/// blank and delimiter-only body lines are already dropped but still counted
/// in [line_start, line_end].
struct RawMessage {
  MessageId message_id = 0;
  std::size_t line_start = 0;  // 1-based, inclusive
  std::size_t line_end = 0;
  std::vector<std::string> lines;
  std::size_t header_length = 0;  // bytes of lines[0] matched by the header pattern
  bool flagged = false;           // content that preceded the first header

  std::string_view header() const { return std::string_view(lines.front()).substr(0, header_length); }
};

/// Splits a line into maximal runs of non-whitespace. Indent counts leading
/// whitespace columns, tabs worth tab_width columns each.
TokenSequence tokenize(std::string_view line, std::size_t tab_width);
inline TokenSequence tokenize(std::string_view line, const SourceConfig& cfg) {
  return tokenize(line, cfg.tab_width);
}

/// Tokenizes the message body. The header is stripped from the first line;
/// that line's indent is the column its first token occupies in the raw line,
/// so content that follows a header never shares an indent with an
/// unindented continuation line. Lines without tokens are skipped.
std::vector<TokenSequence> tokenize_body(const RawMessage& msg, const SourceConfig& cfg);

/// The body as raw text: header stripped from the first line, every line
/// that produced tokens kept with its leading whitespace.
std::vector<std::string> body_lines(const RawMessage& msg);

/// True for empty lines, whitespace-only lines and lines made only of
/// runs of - = + | * # (plus whitespace).
bool is_skippable_line(std::string_view line);

/// Replaces invalid UTF-8 sequences with U+FFFD and strips a trailing CR.
std::string sanitize_line(std::string_view line);

/// Incremental header-based segmenter. feed() returns the previous message
/// once the next header arrives; finish() flushes the last one.
class Segmenter {
 public:
  /// Throws ConfigError when the header pattern does not compile.
  explicit Segmenter(const SourceConfig& cfg);

  std::optional<RawMessage> feed(std::string_view line);
  std::optional<RawMessage> finish();

  std::size_t lines_seen() const { return line_no_; }
  /// Skippable lines that fell outside every message range (before any content).
  std::size_t orphan_lines() const { return orphans_; }
  std::size_t dropped_lines() const { return dropped_; }

  /// Length of the header match at the start of `line`, if any.
  std::optional<std::size_t> match_header(std::string_view line) const;

 private:
  std::regex header_;
  std::optional<RawMessage> current_;
  MessageId next_id_ = 1;
  std::size_t line_no_ = 0;
  std::size_t orphans_ = 0;
  std::size_t dropped_ = 0;
};

/// Segments a whole stream, invoking `sink` for every message in order.
void segment(std::istream& in, const SourceConfig& cfg, const std::function<void(RawMessage&&)>& sink);
std::vector<RawMessage> segment(const std::vector<std::string>& lines, const SourceConfig& cfg);

}  // namespace hybridlog

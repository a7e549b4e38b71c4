#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "hybridlog/config.hpp"
#include "hybridlog/ingestion.hpp"
#include "hybridlog/template_engine.hpp"

namespace hybridlog {

/// What the session keeps about each parsed message for the output files.
struct MessageRecord {
  MessageId message_id = 0;
  std::size_t line_start = 0;
  std::size_t line_end = 0;
  bool flagged = false;
  LogType log_type = LogType::Event;
  GroupId group_id = 0;
  std::vector<TokenSequence> body;       // cast, header stripped
  std::vector<std::string> body_text;    // aligned with body
  std::optional<std::size_t> head_line;  // see IdentifierSource
  std::optional<std::size_t> tail_line;
};

struct StageTimes {
  double segment = 0;    // seconds
  double tokenize = 0;   // tokenizing and casting
  double aggregate = 0;
  double identify = 0;
  double update = 0;     // routing and template updates
  double total() const { return segment + tokenize + aggregate + identify + update; }
};

struct RunStats {
  std::size_t messages = 0;
  std::array<std::size_t, 3> per_type{};  // indexed by LogType
  std::size_t flagged_messages = 0;
  std::size_t lines = 0;
  std::size_t dropped_lines = 0;
  std::size_t orphan_lines = 0;
  StageTimes times;
};

class Session;

struct SessionOptions {
  EngineOptions engine;
  /// Drop per-message records (benchmarks only need timings).
  bool keep_records = true;
  /// Called after every message, on the parsing thread, at a quiescent point.
  std::function<void(const Session&, const MessageRecord&, const UpdateResult&)> on_message;
};

/// One parsing run: segmentation, casting, aggregation, grouping and
/// template updates for a single source.
class Session {
 public:
  Session(const SourceConfig& cfg, SessionOptions opts);

  void process(const RawMessage& msg);
  /// Segments and processes the whole stream.
  void parse(std::istream& in);

  const SourceConfig& config() const { return cfg_; }
  const TemplateEngine& engine() const { return engine_; }
  const std::vector<MessageRecord>& records() const { return records_; }
  const RunStats& stats() const { return stats_; }

 private:
  SourceConfig cfg_;
  SessionOptions opts_;
  TemplateEngine engine_;
  std::vector<MessageRecord> records_;
  RunStats stats_;
};

/// Convenience: parse a stream in auto mode and return the session.
Session parse_stream(std::istream& in, const SourceConfig& cfg, SessionOptions opts = {});

}  // namespace hybridlog

#pragma once

#include <filesystem>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <string_view>
#include <unordered_map>

#include "hybridlog/template_engine.hpp"

namespace hybridlog {

/// Answers from a file of "query_id ACCEPT|REJECT" lines. Blank lines and
/// '#' comments are ignored. Asking for an id the script lacks is a channel
/// failure.
class ScriptedChannel : public FeedbackChannel {
 public:
  explicit ScriptedChannel(std::map<std::uint64_t, Decision> answers) : answers_(std::move(answers)) {}

  /// Throws ConfigError("feedback") on malformed content.
  static ScriptedChannel parse(std::string_view document);
  /// Throws IoError when the file can't be read.
  static ScriptedChannel load(const std::filesystem::path& path);

  Decision ask(const MergeQuery& q) override;

 private:
  std::map<std::uint64_t, Decision> answers_;
};

/// Terminal prompt: prints the aligned token diff and reads a/r answers.
/// End of input is a channel failure.
class TtyChannel : public FeedbackChannel {
 public:
  TtyChannel(std::istream& in, std::ostream& out) : in_(in), out_(out) {}
  Decision ask(const MergeQuery& q) override;

 private:
  std::istream& in_;
  std::ostream& out_;
};

/// Ground-truth oracle: ACCEPT iff the incoming message and the group's
/// founding member share a ground-truth group.
class OracleChannel : public FeedbackChannel {
 public:
  explicit OracleChannel(std::unordered_map<MessageId, std::string> gt_group) : gt_(std::move(gt_group)) {}
  Decision ask(const MergeQuery& q) override;

 private:
  std::unordered_map<MessageId, std::string> gt_;
};

class CallbackChannel : public FeedbackChannel {
 public:
  using Fn = std::function<Decision(const MergeQuery&)>;
  explicit CallbackChannel(Fn fn) : fn_(std::move(fn)) {}
  Decision ask(const MergeQuery& q) override { return fn_(q); }

 private:
  Fn fn_;
};

/// Wraps another channel and keeps every query and answer it saw; used to
/// record scripts that replay a session.
class RecordingChannel : public FeedbackChannel {
 public:
  explicit RecordingChannel(FeedbackChannel& inner) : inner_(inner) {}
  Decision ask(const MergeQuery& q) override;

  const std::vector<std::pair<MergeQuery, Decision>>& log() const { return log_; }
  /// The log in ScriptedChannel format.
  std::string script() const;

 private:
  FeedbackChannel& inner_;
  std::vector<std::pair<MergeQuery, Decision>> log_;
};

/// Human-readable two-row diff used by the terminal prompt.
std::string format_query(const MergeQuery& q);

}  // namespace hybridlog

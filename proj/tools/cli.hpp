#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hybridlog/session.hpp"

namespace hybridlog::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitChannel = 3;

struct FeedbackSpec {
  enum class Kind { None, Tty, Script, Serve, Oracle } kind = Kind::None;
  std::string path;  // script
  int port = 0;      // serve
};

/// "tty", "script:<path>", "serve:<port>" and, for eval only, "oracle".
/// Throws ConfigError("feedback").
FeedbackSpec parse_feedback(const std::string& text);
/// "unlimited" or a non-negative integer. Throws ConfigError("query-limit").
std::optional<std::size_t> parse_query_limit(const std::string& text);

struct RunOptions {
  std::string subcommand;
  std::string input = "-";
  std::string config;  // empty: fall back to $HUE_CONFIG
  std::string out_dir;
  UpdateMode mode = UpdateMode::Auto;
  std::optional<std::size_t> query_limit;
  std::string feedback;
  bool dump_tree = false;
  std::uint64_t seed = 1;
  std::string host = "127.0.0.1";
  double linger = 0;  // seconds the serve endpoint stays up after parsing
};

/// Plain "key: value" run summary written as report.txt.
std::string format_run_report(const Session& session, const RunOptions& opts);

/// Entry point shared by the binary and the tests. Streams stand in for the
/// process's stdin/stdout/stderr.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace hybridlog::cli

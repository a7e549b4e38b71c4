#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "hybridlog/config.hpp"
#include "hybridlog/session.hpp"
#include "hybridlog/token.hpp"

namespace hybridlog::test {

/// Parses a rendered token list: "<*>" is a wildcard, "pre<*kind>" a key with
/// prefix "pre", anything else a literal. Key text is the rendered form.
TokenSequence toks(std::initializer_list<std::string> words, std::size_t indent = 0);
TokenSequence toks(const std::vector<std::string>& words, std::size_t indent = 0);

std::vector<std::string> rendered(const TokenSequence& seq);

/// Header "YYYY-MM-DD hh:mm:ss LEVEL" used by hand-written test logs.
SourceConfig plain_config();
/// header for message n, e.g. "2024-03-01 10:00:07 INFO"
std::string header(std::size_t n, const std::string& level = "INFO");

/// Every output product concatenated, for byte-identity checks.
std::string output_bytes(const Session& session);

Session run_log(const std::string& log, const SourceConfig& cfg, SessionOptions opts = {});

}  // namespace hybridlog::test

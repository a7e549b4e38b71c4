#include "helpers.hpp"

#include <cstdio>
#include <sstream>

#include "hybridlog/output.hpp"

namespace hybridlog::test {

TokenSequence toks(const std::vector<std::string>& words, std::size_t indent) {
  TokenSequence s;
  s.indent = indent;
  for (const auto& w : words) {
    if (w == kWildcard) {
      s.tokens.push_back(Token::wildcard());
      continue;
    }
    auto open = w.find("<*");
    if (open != std::string::npos && w.back() == '>' && open + 3 < w.size()) {
      s.tokens.push_back(Token::key(w.substr(open + 2, w.size() - open - 3), w, w.substr(0, open)));
    } else {
      s.tokens.push_back(Token::literal(w));
    }
  }
  return s;
}

TokenSequence toks(std::initializer_list<std::string> words, std::size_t indent) {
  return toks(std::vector<std::string>(words), indent);
}

std::vector<std::string> rendered(const TokenSequence& seq) {
  std::vector<std::string> out;
  for (const auto& t : seq.tokens) out.push_back(t.render());
  return out;
}

SourceConfig plain_config() {
  SourceConfig cfg;
  cfg.header_pattern = R"(\d{4}-\d{2}-\d{2} \d{2}:\d{2}:\d{2} [A-Z]+)";
  return cfg;
}

std::string header(std::size_t n, const std::string& level) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "2024-03-01 %02zu:%02zu:%02zu ", (n / 3600) % 24, (n / 60) % 60, n % 60);
  return buf + level;
}

std::string output_bytes(const Session& session) {
  auto records = build_records(session);
  std::string out;
  out += meta_jsonl(records);
  out += "\x1e";
  out += templates_csv(session.engine().finalize());
  out += "\x1e";
  out += event_params_csv(records);
  out += "\x1e";
  out += table_params_csv(records);
  out += "\x1e";
  out += text_params_csv(records);
  return out;
}

Session run_log(const std::string& log, const SourceConfig& cfg, SessionOptions opts) {
  std::istringstream in(log);
  Session s(cfg, std::move(opts));
  s.parse(in);
  return s;
}

}  // namespace hybridlog::test

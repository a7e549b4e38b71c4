#include "hybridlog/feedback.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "hybridlog/errors.hpp"

namespace hybridlog {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

ScriptedChannel ScriptedChannel::parse(std::string_view document) {
  std::map<std::uint64_t, Decision> answers;
  std::size_t line_no = 0;
  while (!document.empty()) {
    ++line_no;
    auto nl = document.find('\n');
    std::string_view line = trim(document.substr(0, nl));
    document.remove_prefix(nl == std::string_view::npos ? document.size() : nl + 1);
    if (line.empty() || line.front() == '#') continue;

    auto sp = line.find_first_of(" \t");
    const std::string where = "line " + std::to_string(line_no);
    if (sp == std::string_view::npos) throw ConfigError("feedback", where + ": expected '<query_id> ACCEPT|REJECT'");
    std::string_view id_text = line.substr(0, sp);
    std::string_view answer = trim(line.substr(sp));
    std::uint64_t id = 0;
    auto [ptr, ec] = std::from_chars(id_text.data(), id_text.data() + id_text.size(), id);
    if (ec != std::errc{} || ptr != id_text.data() + id_text.size())
      throw ConfigError("feedback", where + ": bad query id '" + std::string(id_text) + "'");
    auto d = parse_decision(answer);
    if (!d) throw ConfigError("feedback", where + ": bad decision '" + std::string(answer) + "'");
    if (!answers.emplace(id, *d).second) throw ConfigError("feedback", where + ": duplicate query id");
  }
  return ScriptedChannel(std::move(answers));
}

ScriptedChannel ScriptedChannel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read feedback script " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

Decision ScriptedChannel::ask(const MergeQuery& q) {
  auto it = answers_.find(q.query_id);
  if (it == answers_.end()) throw ChannelError("script has no answer for query " + std::to_string(q.query_id));
  return it->second;
}

std::string format_query(const MergeQuery& q) {
  std::ostringstream out;
  out << "query " << q.query_id << " (group " << q.group_id << ", similarity " << q.similarity << ")\n";
  const std::size_t n = std::max(q.template_tokens.size(), q.identifier_tokens.size());
  std::vector<std::size_t> width(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < q.template_tokens.size()) width[i] = std::max(width[i], q.template_tokens[i].size());
    if (i < q.identifier_tokens.size()) width[i] = std::max(width[i], q.identifier_tokens[i].size());
  }
  auto row = [&](const char* label, const std::vector<std::string>& toks) {
    out << label;
    for (std::size_t i = 0; i < toks.size(); ++i) out << ' ' << toks[i] << std::string(width[i] - toks[i].size(), ' ');
    out << '\n';
  };
  row("  template:", q.template_tokens);
  row("  incoming:", q.identifier_tokens);
  out << "  changed: ";
  for (const auto& c : q.changed_positions) out << ' ' << c.index << ':' << c.old_token << "->" << c.new_value;
  out << '\n';
  return out.str();
}

Decision TtyChannel::ask(const MergeQuery& q) {
  out_ << format_query(q);
  for (;;) {
    out_ << "merge? [a]ccept/[r]eject: " << std::flush;
    std::string line;
    if (!std::getline(in_, line)) throw ChannelError("terminal input closed");
    auto answer = trim(line);
    if (answer == "a" || answer == "A" || answer == "accept" || answer == "ACCEPT") return Decision::Accept;
    if (answer == "r" || answer == "R" || answer == "reject" || answer == "REJECT") return Decision::Reject;
  }
}

Decision OracleChannel::ask(const MergeQuery& q) {
  auto a = gt_.find(q.message_id);
  auto b = gt_.find(q.group_first_member);
  if (a == gt_.end() || b == gt_.end()) throw ChannelError("oracle has no ground truth for the queried messages");
  return a->second == b->second ? Decision::Accept : Decision::Reject;
}

Decision RecordingChannel::ask(const MergeQuery& q) {
  Decision d = inner_.ask(q);
  log_.emplace_back(q, d);
  return d;
}

std::string RecordingChannel::script() const {
  std::string out;
  for (const auto& [q, d] : log_) out += std::to_string(q.query_id) + " " + std::string(to_string(d)) + "\n";
  return out;
}

}  // namespace hybridlog

#include "hybridlog/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <vector>

#include "hybridlog/errors.hpp"

namespace hybridlog {

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::size_t parse_size(const std::string& field, std::string_view value) {
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() || out == 0)
    throw ConfigError(field, "expected a positive integer, got '" + std::string(value) + "'");
  return out;
}

double parse_real(const std::string& field, std::string_view value) {
  std::string text(value);
  std::size_t used = 0;
  double out = 0;
  try {
    out = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    throw ConfigError(field, "expected a real number, got '" + text + "'");
  return out;
}

// A custom rule identical to a default keeps the default's fast predicate.
CastRule make_rule(const std::string& kind, const std::string& pattern, int priority) {
  for (const auto& rule : CastTable::defaults().rules()) {
    if (rule.key_kind() == kind && rule.pattern() == pattern) {
      CastRule copy = rule;
      return CastRule(kind, pattern, priority,
                      [copy](std::string_view v) { return copy.matches(v); });
    }
  }
  return CastRule(kind, pattern, priority);
}

}  // namespace

void SourceConfig::validate() const {
  if (header_pattern.empty()) throw ConfigError("header_pattern", "must be set");
  try {
    std::regex re(header_pattern, std::regex::ECMAScript);
  } catch (const std::regex_error& e) {
    throw ConfigError("header_pattern", std::string("invalid pattern: ") + e.what());
  }
  if (max_tree_depth < 1) throw ConfigError("max_tree_depth", "must be >= 1");
  if (min_id_len < 1) throw ConfigError("min_id_len", "must be >= 1");
  if (max_id_len < min_id_len) throw ConfigError("max_id_len", "must be >= min_id_len");
  if (tab_width < 1) throw ConfigError("tab_width", "must be >= 1");
  if (!(eps_a >= 0.0 && eps_a <= 1.0)) throw ConfigError("eps_a", "must lie in [0,1]");
  if (!(eps_m >= 0.0 && eps_m <= 1.0)) throw ConfigError("eps_m", "must lie in [0,1]");
  if (!(eps_e >= 0.0 && eps_e <= 1.0)) throw ConfigError("eps_e", "must lie in [0,1]");
  if (eps_e > eps_m)
    throw ConfigError("eps_e", "must not exceed eps_m (guided threshold eps_m - eps_e would be negative)");
}

SourceConfig parse_config(std::string_view document) {
  SourceConfig cfg;
  std::map<std::string, std::string> seen;
  std::vector<std::pair<std::string, std::string>> casts;
  std::string cast_mode = "extend";

  std::istringstream in{std::string(document)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("", "line " + std::to_string(line_no) + ": empty key");
    if (!seen.emplace(key, value).second) throw ConfigError(key, "set more than once");

    if (key.rfind("cast.", 0) == 0) {
      std::string kind = key.substr(5);
      if (kind.empty()) throw ConfigError(key, "missing key kind after 'cast.'");
      if (value.empty()) throw ConfigError(key, "empty pattern");
      casts.emplace_back(kind, value);
    } else if (key == "header_pattern") {
      cfg.header_pattern = value;
    } else if (key == "max_tree_depth") {
      cfg.max_tree_depth = parse_size(key, value);
    } else if (key == "min_id_len") {
      cfg.min_id_len = parse_size(key, value);
    } else if (key == "max_id_len") {
      cfg.max_id_len = parse_size(key, value);
    } else if (key == "tab_width") {
      cfg.tab_width = parse_size(key, value);
    } else if (key == "eps_a") {
      cfg.eps_a = parse_real(key, value);
    } else if (key == "eps_m") {
      cfg.eps_m = parse_real(key, value);
    } else if (key == "eps_e") {
      cfg.eps_e = parse_real(key, value);
    } else if (key == "cast_mode") {
      if (value != "extend" && value != "replace")
        throw ConfigError(key, "expected 'extend' or 'replace'");
      cast_mode = value;
    } else {
      throw ConfigError(key, "unknown key");
    }
  }

  if (cast_mode == "replace") {
    CastTable table;
    int priority = 0;
    for (const auto& [kind, pattern] : casts) table.add(make_rule(kind, pattern, priority += 10));
    cfg.cast_rules = std::move(table);
  } else {
    CastTable table = CastTable::defaults();
    int priority = -1000;
    for (const auto& [kind, pattern] : casts) {
      if (table.contains(kind)) {
        table.replace(kind, pattern);
      } else {
        table.add(make_rule(kind, pattern, priority++));
      }
    }
    cfg.cast_rules = std::move(table);
  }

  cfg.validate();
  return cfg;
}

SourceConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_config(const SourceConfig& cfg) {
  auto real = [](double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ec == std::errc{} ? ptr : buf);
  };
  std::ostringstream out;
  out << "header_pattern = " << cfg.header_pattern << '\n'
      << "max_tree_depth = " << cfg.max_tree_depth << '\n'
      << "min_id_len = " << cfg.min_id_len << '\n'
      << "max_id_len = " << cfg.max_id_len << '\n'
      << "eps_a = " << real(cfg.eps_a) << '\n'
      << "eps_m = " << real(cfg.eps_m) << '\n'
      << "eps_e = " << real(cfg.eps_e) << '\n'
      << "tab_width = " << cfg.tab_width << '\n';

  const auto& defaults = CastTable::defaults().rules();
  const auto& rules = cfg.cast_rules.rules();
  bool is_default = rules.size() == defaults.size();
  for (std::size_t i = 0; is_default && i < rules.size(); ++i)
    is_default = rules[i].key_kind() == defaults[i].key_kind() && rules[i].pattern() == defaults[i].pattern();
  if (!is_default) {
    out << "cast_mode = replace\n";
    for (const auto& rule : rules) out << "cast." << rule.key_kind() << " = " << rule.pattern() << '\n';
  }
  return out.str();
}

}  // namespace hybridlog

#include "hybridlog/eval/synthetic.hpp"

#include <chrono>
#include <cstdio>
#include <stdexcept>

#include "hybridlog/aggregation.hpp"
#include "hybridlog/casting.hpp"
#include "hybridlog/rng.hpp"

namespace hybridlog {

namespace {

struct Slot {
  bool is_key = false;
  std::string text;  // literal text, or the key kind
  std::string prefix;
};

struct EventTemplate {
  std::vector<Slot> slots;
};

struct TableTemplate {
  std::vector<std::string> columns;
  std::vector<std::string> kinds;
};

struct TextTemplate {
  std::vector<Slot> first;
  std::vector<Slot> last;
};

const std::vector<std::string> kValueKinds = {"int", "int", "float", "ip", "hex", "path", "url", "datetime"};
const std::vector<std::string> kCellKinds = {"int", "int", "float", "ip", "hex", "path", "datetime"};
const std::vector<std::string> kComponents = {"scheduler", "executor", "storage", "driver",
                                              "shuffle",   "metrics",  "netty",   "yarn"};

std::string word(Rng& rng) {
  static const char* consonants = "bdfgklmnprstvz";
  static const char* vowels = "aeiou";
  std::string w;
  const auto syllables = rng.between(2, 3);
  for (std::uint64_t i = 0; i < syllables; ++i) {
    w.push_back(consonants[rng.below(14)]);
    w.push_back(vowels[rng.below(5)]);
  }
  if (rng.chance(0.3)) w.push_back(consonants[rng.below(14)]);
  return w;
}

std::string capitalized(std::string w) {
  if (!w.empty()) w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

// A literal-only word (possibly punctuated) that no default rule casts.
std::string literal_word(Rng& rng) {
  for (;;) {
    std::string w = word(rng);
    if (rng.chance(0.1)) w.push_back(':');
    else if (rng.chance(0.08)) w.push_back(',');
    if (cast_token(w, CastTable::defaults()).is_literal()) return w;
  }
}

std::string digits(Rng& rng, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(static_cast<char>('0' + (i == 0 && n > 1 ? rng.between(1, 9) : rng.below(10))));
  return s;
}

std::string two(std::uint64_t v) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02u", static_cast<unsigned>(v));
  return buf;
}

std::string raw_value(const std::string& kind, Rng& rng) {
  if (kind == "int") return digits(rng, rng.between(1, 6));
  if (kind == "float") return std::to_string(rng.below(1000)) + "." + digits(rng, rng.between(1, 3));
  if (kind == "ip") {
    std::string s;
    for (int i = 0; i < 4; ++i) s += (i ? "." : "") + std::to_string(rng.below(256));
    if (rng.chance(0.3)) s += ":" + std::to_string(rng.between(1, 65535));
    return s;
  }
  if (kind == "hex") {
    static const char* hexd = "0123456789abcdef";
    std::string s = "0x";
    const auto n = rng.between(4, 12);
    for (std::uint64_t i = 0; i < n; ++i) s.push_back(hexd[rng.below(16)]);
    return s;
  }
  if (kind == "path") {
    std::string s;
    const auto n = rng.between(1, 4);
    for (std::uint64_t i = 0; i < n; ++i) s += "/" + word(rng);
    if (rng.chance(0.5)) s += rng.chance(0.5) ? ".log" : ".dat";
    return s;
  }
  if (kind == "url") return "http://" + word(rng) + ".example.com/" + word(rng);
  if (kind == "datetime") {
    std::string t = two(rng.below(24)) + ":" + two(rng.below(60)) + ":" + two(rng.below(60));
    if (rng.chance(0.5)) return t;
    return "2026-" + two(rng.between(1, 12)) + "-" + two(rng.between(1, 28)) + "T" + t;
  }
  throw std::logic_error("synthetic: unknown kind " + kind);
}

// Draws until the default table casts prefix+value to `kind`.
std::string value(const std::string& kind, const std::string& prefix, Rng& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::string v = prefix + raw_value(kind, rng);
    Token t = cast_token(v, CastTable::defaults());
    if (t.is_key() && t.key_kind == kind) return v;
  }
  throw std::logic_error("synthetic: cannot produce a " + kind + " value");
}

TokenSequence typed(const std::vector<Slot>& slots) {
  TokenSequence seq;
  for (const auto& s : slots)
    seq.tokens.push_back(s.is_key ? Token::key(s.text, s.prefix + "<*" + s.text + ">", s.prefix) : Token::literal(s.text));
  return seq;
}

bool too_close(const TokenSequence& seq, const std::vector<TokenSequence>& pool) {
  for (const auto& other : pool)
    if (other.size() == seq.size() && similarity(seq, other) >= 0.5) return true;
  return false;
}

std::vector<Slot> make_slots(Rng& rng, std::size_t n, std::size_t vars) {
  std::vector<Slot> slots(n);
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[i] = i;
  rng.shuffle(pos);
  for (std::size_t i = 0; i < n; ++i) slots[i].text = literal_word(rng);
  for (std::size_t i = 0; i < vars; ++i) {
    Slot& s = slots[pos[i]];
    s.is_key = true;
    s.text = rng.pick(kValueKinds);
    s.prefix = rng.chance(0.35) ? word(rng) + "=" : "";
  }
  return slots;
}

std::string gt_render(const std::vector<Slot>& slots) {
  std::string out;
  for (const auto& s : slots) {
    if (!out.empty()) out.push_back(' ');
    out += s.is_key ? s.prefix + std::string(kWildcard) : s.text;
  }
  return out;
}

std::string instance(const std::vector<Slot>& slots, Rng& rng) {
  std::string out;
  for (const auto& s : slots) {
    if (!out.empty()) out.push_back(' ');
    out += s.is_key ? value(s.text, s.prefix, rng) : s.text;
  }
  return out;
}

std::string padded_row(const std::vector<std::string>& cells, const std::vector<std::size_t>& widths) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out += cells[i];
    if (i + 1 < cells.size()) out += std::string(widths[i] > cells[i].size() ? widths[i] - cells[i].size() + 2 : 2, ' ');
  }
  return out;
}

std::vector<std::size_t> spread(std::size_t messages, std::size_t templates, Rng& rng) {
  std::vector<std::size_t> counts(templates, templates ? 1 : 0);
  for (std::size_t m = templates; m < messages; ++m) ++counts[rng.below(templates)];
  return counts;
}

class Header {
 public:
  std::string next(Rng& rng) {
    using namespace std::chrono;
    ms_ += rng.between(1, 2000);
    const auto tp = sys_days{year{2026} / 1 / 1} + milliseconds(ms_);
    const auto day = floor<days>(tp);
    const year_month_day ymd{day};
    const auto tod = hh_mm_ss{duration_cast<milliseconds>(tp - day)};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u %02ld:%02ld:%02ld,%03ld", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<long>(tod.hours().count()), static_cast<long>(tod.minutes().count()),
                  static_cast<long>(tod.seconds().count()), static_cast<long>(tod.subseconds().count()));
    const double roll = static_cast<double>(rng.below(100));
    const char* level = roll < 80 ? "INFO" : roll < 95 ? "WARN" : "ERROR";
    return std::string(buf) + " " + level + " [" + rng.pick(kComponents) + "] ";
  }

 private:
  std::int64_t ms_ = 0;
};

}  // namespace

SyntheticSpec SyntheticSpec::hibench() {
  SyntheticSpec s;
  s.event_messages = 1879;
  s.table_messages = 2057;
  s.text_messages = 64;
  s.event_templates = 92;
  s.table_templates = 7;
  s.text_templates = 18;
  return s;
}

SyntheticSpec SyntheticSpec::hibench_scaled(std::size_t messages) {
  SyntheticSpec s = hibench();
  s.event_messages = (messages * 1879 + 2000) / 4000;
  s.table_messages = (messages * 2057 + 2000) / 4000;
  if (s.event_messages + s.table_messages > messages) s.table_messages = messages - s.event_messages;
  s.text_messages = messages - s.event_messages - s.table_messages;
  return s;
}

std::string synthetic_header_pattern() {
  return R"(\d{4}-\d{2}-\d{2} \d{2}:\d{2}:\d{2},\d{3} [A-Z]+ \[[^\]]*\])";
}

SourceConfig synthetic_config() {
  SourceConfig cfg;
  cfg.header_pattern = synthetic_header_pattern();
  return cfg;
}

SyntheticCorpus generate_synthetic(const SyntheticSpec& spec) {
  if (spec.min_table_rows < 1 || spec.min_table_rows > spec.max_table_rows)
    throw std::invalid_argument("synthetic: bad table row range");
  const std::size_t n_event = std::min(spec.event_templates, spec.event_messages);
  const std::size_t n_table = std::min(spec.table_templates, spec.table_messages);
  const std::size_t n_text = std::min(spec.text_templates, spec.text_messages);
  const std::size_t pairs = std::min(spec.ambiguous_pairs, n_event / 2);

  Rng trng(spec.template_seed);

  // Event pool: look-alike pairs first, then free templates.
  std::vector<EventTemplate> events;
  std::vector<TokenSequence> event_seqs;
  while (events.size() < 2 * pairs) {
    auto slots = make_slots(trng, trng.between(9, 12), trng.between(0, 2));
    auto seq = typed(slots);
    if (too_close(seq, event_seqs)) continue;
    auto twin = slots;
    std::size_t last = twin.size();
    while (twin[--last].is_key) {
    }
    std::string w;
    do w = literal_word(trng);
    while (w == twin[last].text);
    twin[last].text = w;
    auto twin_seq = typed(twin);
    if (too_close(twin_seq, event_seqs)) continue;
    events.push_back({slots});
    events.push_back({twin});
    event_seqs.push_back(seq);
    event_seqs.push_back(twin_seq);
  }
  while (events.size() < n_event) {
    const auto n = trng.between(4, 12);
    auto slots = make_slots(trng, n, trng.between(0, std::min<std::uint64_t>(3, n - 2)));
    auto seq = typed(slots);
    if (too_close(seq, event_seqs)) continue;
    events.push_back({slots});
    event_seqs.push_back(seq);
  }

  std::vector<TableTemplate> tables;
  std::vector<TokenSequence> table_seqs;
  while (tables.size() < n_table) {
    TableTemplate t;
    const auto cols = trng.between(3, 7);
    std::vector<Slot> header;
    for (std::uint64_t c = 0; c < cols; ++c) {
      t.columns.push_back(capitalized(word(trng)));
      t.kinds.push_back(trng.pick(kCellKinds));
      header.push_back({false, t.columns.back(), ""});
    }
    auto seq = typed(header);
    if (too_close(seq, table_seqs)) continue;
    tables.push_back(std::move(t));
    table_seqs.push_back(seq);
  }

  std::vector<TextTemplate> texts;
  std::vector<TokenSequence> text_seqs;
  while (texts.size() < n_text) {
    TextTemplate t;
    t.first = make_slots(trng, trng.between(3, 8), trng.between(0, 2));
    t.last = make_slots(trng, trng.between(2, 5), trng.between(0, 1));
    // Closing lines open with a capitalized literal, like "Caused by ..." lines.
    if (t.last.front().is_key) t.last.front() = {false, word(trng), ""};
    t.last.front().text = capitalized(t.last.front().text);
    auto seq = typed(t.first);
    auto tail = typed(t.last);
    seq.tokens.insert(seq.tokens.end(), tail.tokens.begin(), tail.tokens.end());
    if (too_close(seq, text_seqs)) continue;
    texts.push_back(std::move(t));
    text_seqs.push_back(seq);
  }

  // Message plan, then shuffled.
  Rng rng(spec.rng_seed);
  std::vector<std::pair<LogType, std::size_t>> plan;
  plan.reserve(spec.event_messages + spec.table_messages + spec.text_messages);
  auto add = [&](LogType type, std::size_t messages, std::size_t templates) {
    if (!templates) return;
    auto counts = spread(messages, templates, rng);
    for (std::size_t i = 0; i < templates; ++i)
      for (std::size_t k = 0; k < counts[i]; ++k) plan.emplace_back(type, i);
  };
  add(LogType::Event, spec.event_messages, n_event);
  add(LogType::Table, spec.table_messages, n_table);
  add(LogType::Text, spec.text_messages, n_text);
  rng.shuffle(plan);

  SyntheticCorpus corpus;
  Header header;
  MessageId id = 0;
  auto emit = [&](const std::string& line) {
    corpus.log += line;
    corpus.log.push_back('\n');
    ++corpus.lines;
  };
  for (const auto& [type, idx] : plan) {
    ++id;
    GroundTruthEntry e;
    e.gt_type = type;
    const std::string head = header.next(rng);
    switch (type) {
      case LogType::Event: {
        const auto& t = events[idx];
        e.gt_group = "E" + std::to_string(idx + 1);
        e.gt_template = gt_render(t.slots);
        emit(head + instance(t.slots, rng));
        break;
      }
      case LogType::Table: {
        const auto& t = tables[idx];
        e.gt_group = "T" + std::to_string(idx + 1);
        for (const auto& c : t.columns) e.gt_template += (e.gt_template.empty() ? "" : " ") + c;
        std::vector<std::size_t> widths;
        for (const auto& c : t.columns) widths.push_back(std::max<std::size_t>(c.size(), 16));
        emit(head + padded_row(t.columns, widths));
        const auto rows = rng.between(spec.min_table_rows, spec.max_table_rows);
        for (std::uint64_t r = 0; r < rows; ++r) {
          std::vector<std::string> cells;
          for (const auto& k : t.kinds) cells.push_back(value(k, "", rng));
          emit(padded_row(cells, widths));
        }
        break;
      }
      case LogType::Text: {
        const auto& t = texts[idx];
        e.gt_group = "X" + std::to_string(idx + 1);
        e.gt_template = gt_render(t.first) + "\n" + gt_render(t.last);
        emit(head + instance(t.first, rng));
        const auto middle = rng.between(1, std::max<std::size_t>(1, spec.max_text_middle));
        for (std::uint64_t m = 0; m < middle; ++m) {
          emit("    at " + word(rng) + "." + capitalized(word(rng)) + "." + word(rng) + "(" + capitalized(word(rng)) +
               ".java:" + std::to_string(rng.between(1, 999)) + ")");
        }
        emit(instance(t.last, rng));
        break;
      }
    }
    corpus.truth.entries.emplace(id, std::move(e));
  }
  return corpus;
}

}  // namespace hybridlog

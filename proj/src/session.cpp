#include "hybridlog/session.hpp"

#include <chrono>

#include "hybridlog/aggregation.hpp"
#include "hybridlog/casting.hpp"
#include "hybridlog/grouping_tree.hpp"

namespace hybridlog {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point& t) {
  auto now = clock_type::now();
  double s = std::chrono::duration<double>(now - t).count();
  t = now;
  return s;
}

}  // namespace

Session::Session(const SourceConfig& cfg, SessionOptions opts)
    : cfg_(cfg), opts_(std::move(opts)), engine_(cfg, opts_.engine) {}

void Session::process(const RawMessage& msg) {
  auto t = clock_type::now();
  MessageRecord rec;
  rec.message_id = msg.message_id;
  rec.line_start = msg.line_start;
  rec.line_end = msg.line_end;
  rec.flagged = msg.flagged;

  rec.body = tokenize_body(msg, cfg_);
  for (auto& seq : rec.body) seq = cast_sequence(seq, cfg_.cast_rules);
  stats_.times.tokenize += seconds_since(t);

  AggregationResult agg;
  if (!rec.body.empty()) agg = aggregate(rec.body, cfg_.eps_a);
  stats_.times.aggregate += seconds_since(t);

  IdentifierSource src;
  Identifier id = extract_identifier(agg, &src);
  rec.log_type = id.log_type;
  rec.head_line = src.head_line;
  rec.tail_line = src.tail_line;
  stats_.times.identify += seconds_since(t);

  UpdateResult upd = engine_.add(id, msg.message_id);
  rec.group_id = upd.group_id;
  stats_.times.update += seconds_since(t);

  ++stats_.messages;
  ++stats_.per_type[static_cast<std::size_t>(rec.log_type)];
  if (rec.flagged) ++stats_.flagged_messages;

  if (opts_.keep_records || opts_.on_message) {
    rec.body_text = body_lines(msg);
  }
  if (opts_.on_message) opts_.on_message(*this, rec, upd);
  if (opts_.keep_records) {
    records_.push_back(std::move(rec));
  }
}

void Session::parse(std::istream& in) {
  Segmenter seg(cfg_);
  std::string line;
  auto t = clock_type::now();
  auto handle = [&](std::optional<RawMessage>&& msg) {
    stats_.times.segment += seconds_since(t);
    if (msg) process(*msg);
    t = clock_type::now();
  };
  while (std::getline(in, line)) handle(seg.feed(sanitize_line(line)));
  handle(seg.finish());
  stats_.lines = seg.lines_seen();
  stats_.dropped_lines = seg.dropped_lines();
  stats_.orphan_lines = seg.orphan_lines();
}

Session parse_stream(std::istream& in, const SourceConfig& cfg, SessionOptions opts) {
  Session s(cfg, std::move(opts));
  s.parse(in);
  return s;
}

}  // namespace hybridlog

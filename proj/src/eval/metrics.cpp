#include "hybridlog/eval/metrics.hpp"

#include <cctype>
#include <iomanip>
#include <sstream>
#include <unordered_set>

#include "hybridlog/errors.hpp"

namespace hybridlog {

namespace {

// Per-message correctness under group-set equality.
std::unordered_map<MessageId, bool> correctness(const Labeling& pred, const Labeling& gt) {
  if (pred.size() != gt.size()) throw EvaluationError("grouping accuracy: message universes differ in size");
  std::unordered_map<std::string, std::vector<MessageId>> pred_groups;
  std::unordered_map<std::string, std::size_t> gt_sizes;
  for (const auto& [id, label] : pred) {
    if (!gt.count(id)) throw EvaluationError("grouping accuracy: message " + std::to_string(id) + " has no ground truth");
    pred_groups[label].push_back(id);
  }
  for (const auto& [id, label] : gt) ++gt_sizes[label];

  std::unordered_map<MessageId, bool> ok;
  ok.reserve(pred.size());
  for (const auto& [label, members] : pred_groups) {
    const std::string& g = gt.at(members.front());
    bool same = gt_sizes[g] == members.size();
    for (std::size_t i = 1; same && i < members.size(); ++i) same = gt.at(members[i]) == g;
    for (MessageId id : members) ok[id] = same;
  }
  return ok;
}

double safe_div(double a, double b) { return b == 0 ? 0.0 : a / b; }

}  // namespace

double grouping_accuracy(const Labeling& pred, const Labeling& gt) {
  if (pred.empty() && gt.empty()) return 1.0;
  auto ok = correctness(pred, gt);
  std::size_t good = 0;
  for (const auto& [id, v] : ok) good += v ? 1 : 0;
  return static_cast<double>(good) / static_cast<double>(ok.size());
}

std::string normalize_template(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (std::size_t i = 0; i < text.size();) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') {
      pending_space = !out.empty();
      ++i;
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    if (c == '<' && i + 1 < text.size() && text[i + 1] == '*') {
      auto close = text.find('>', i + 2);
      if (close != std::string_view::npos) {
        bool word = true;
        for (std::size_t k = i + 2; k < close; ++k) {
          char d = text[k];
          word = word && (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '-');
        }
        if (word) {
          out += kWildcard;
          i = close + 1;
          continue;
        }
      }
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

TemplateScore template_f1(const std::vector<std::string>& pred, const std::vector<std::string>& gt) {
  std::unordered_map<std::string, std::size_t> available;
  for (const auto& t : gt) ++available[normalize_template(t)];
  TemplateScore s;
  for (const auto& t : pred) {
    auto it = available.find(normalize_template(t));
    if (it != available.end() && it->second > 0) {
      --it->second;
      ++s.true_positives;
    }
  }
  s.precision = safe_div(static_cast<double>(s.true_positives), static_cast<double>(pred.size()));
  s.recall = safe_div(static_cast<double>(s.true_positives), static_cast<double>(gt.size()));
  s.f1 = safe_div(2 * s.precision * s.recall, s.precision + s.recall);
  return s;
}

EvalReport evaluate(const Session& session, const GroundTruth& gt) {
  EvalReport r;
  const auto& records = session.records();
  Labeling pred, truth;
  for (const auto& m : records) {
    auto it = gt.entries.find(m.message_id);
    if (it == gt.entries.end()) throw EvaluationError("message " + std::to_string(m.message_id) + " has no ground truth");
    pred[m.message_id] = std::to_string(m.group_id);
    truth[m.message_id] = it->second.gt_group;
  }
  if (gt.size() != records.size()) throw EvaluationError("ground truth covers messages that were not parsed");

  r.messages = records.size();
  r.query_count = session.engine().queries_asked();
  r.times = session.stats().times;
  auto ok = records.empty() ? std::unordered_map<MessageId, bool>{} : correctness(pred, truth);
  std::size_t good = 0;
  for (const auto& [id, v] : ok) good += v ? 1 : 0;
  r.grouping_accuracy = records.empty() ? 1.0 : static_cast<double>(good) / static_cast<double>(records.size());

  // One template per predicted group and per ground-truth group.
  std::vector<std::string> pred_t;
  std::map<LogType, std::vector<std::string>> pred_by_type, gt_by_type;
  for (const auto& g : session.engine().groups()) {
    auto text = render_template(g);
    pred_t.push_back(text);
    pred_by_type[g.log_type].push_back(std::move(text));
  }
  std::vector<std::string> gt_t;
  std::unordered_set<std::string> seen;
  bool typed = !gt.entries.empty();
  for (const auto& [id, e] : gt.entries) {
    typed = typed && e.gt_type.has_value();
    if (!seen.insert(e.gt_group).second) continue;
    gt_t.push_back(e.gt_template);
    if (e.gt_type) gt_by_type[*e.gt_type].push_back(e.gt_template);
  }
  r.templates = template_f1(pred_t, gt_t);

  std::size_t typed_ok = 0;
  std::map<LogType, std::size_t> good_by_type, typed_ok_by_type;
  for (const auto& m : records) {
    const auto& e = gt.entries.at(m.message_id);
    LogType t = e.gt_type.value_or(m.log_type);
    auto& b = r.per_type[t];
    ++b.messages;
    if (ok[m.message_id]) ++good_by_type[t];
    if (e.gt_type && *e.gt_type == m.log_type) {
      ++typed_ok;
      ++typed_ok_by_type[t];
    }
  }
  for (auto& [t, b] : r.per_type) {
    b.grouping_accuracy = safe_div(static_cast<double>(good_by_type[t]), static_cast<double>(b.messages));
    b.type_accuracy = safe_div(static_cast<double>(typed_ok_by_type[t]), static_cast<double>(b.messages));
    if (typed) b.templates = template_f1(pred_by_type[t], gt_by_type[t]);
  }
  if (typed) r.type_accuracy = safe_div(static_cast<double>(typed_ok), static_cast<double>(records.size()));
  return r;
}

std::string format_report(const EvalReport& r) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << "messages: " << r.messages << '\n';
  out << "grouping_accuracy: " << r.grouping_accuracy << '\n';
  out << "template_precision: " << r.templates.precision << '\n';
  out << "template_recall: " << r.templates.recall << '\n';
  out << "template_f1: " << r.templates.f1 << '\n';
  if (r.type_accuracy) out << "type_accuracy: " << *r.type_accuracy << '\n';
  out << "query_count: " << r.query_count << '\n';
  for (const auto& [t, b] : r.per_type) {
    out << "type " << to_string(t) << ": messages=" << b.messages << " ga=" << b.grouping_accuracy;
    if (r.type_accuracy) out << " f1=" << b.templates.f1 << " type_accuracy=" << b.type_accuracy;
    out << '\n';
  }
  out << "time_total_s: " << r.times.total() << '\n';
  return out.str();
}

}  // namespace hybridlog

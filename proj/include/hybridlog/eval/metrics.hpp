#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hybridlog/eval/ground_truth.hpp"
#include "hybridlog/session.hpp"
#include "hybridlog/token.hpp"

namespace hybridlog {

using Labeling = std::unordered_map<MessageId, std::string>;

/// Fraction of messages whose predicted group has exactly the same member
/// set as their ground-truth group. Throws EvaluationError when the two
/// labelings cover different messages. Empty labelings score 1.
double grouping_accuracy(const Labeling& pred, const Labeling& gt);

/// "<*kind>" collapsed to "<*>", whitespace runs to one space, trimmed.
std::string normalize_template(std::string_view text);

struct TemplateScore {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  std::size_t true_positives = 0;
};

/// Exact match after normalization; each gt template is consumed once.
/// Empty `pred` gives precision 0 (recall 0 when gt is non-empty).
TemplateScore template_f1(const std::vector<std::string>& pred, const std::vector<std::string>& gt);

struct TypeBreakdown {
  std::size_t messages = 0;  // by ground-truth type
  double grouping_accuracy = 0;
  TemplateScore templates;
  double type_accuracy = 0;  // fraction of these messages typed correctly
};

struct EvalReport {
  double grouping_accuracy = 0;
  TemplateScore templates;
  std::optional<double> type_accuracy;  // when ground truth carries types
  std::map<LogType, TypeBreakdown> per_type;
  std::size_t messages = 0;
  std::size_t query_count = 0;
  StageTimes times;
};

/// Scores a finished session. Ground truth must cover exactly the parsed
/// messages.
EvalReport evaluate(const Session& session, const GroundTruth& gt);

std::string format_report(const EvalReport& r);

}  // namespace hybridlog

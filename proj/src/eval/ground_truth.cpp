#include "hybridlog/eval/ground_truth.hpp"

#include <charconv>
#include <fstream>

#include "hybridlog/csv.hpp"
#include "hybridlog/errors.hpp"

namespace hybridlog {

GroundTruth read_ground_truth(std::istream& in) {
  GroundTruth gt;
  std::vector<std::string> fields;
  std::size_t row = 0;
  try {
    while (csv::read_row(in, fields)) {
      ++row;
      if (row == 1) {
        if (fields.size() < 4 || fields[0] != "message_id" || fields[1] != "gt_group")
          throw EvaluationError("ground truth: expected header message_id,gt_group,gt_type,gt_template");
        continue;
      }
      if (fields.size() == 1 && fields[0].empty()) continue;
      if (fields.size() != 4) throw EvaluationError("ground truth row " + std::to_string(row) + ": expected 4 fields");
      MessageId id = 0;
      const auto& f = fields[0];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), id);
      if (ec != std::errc{} || ptr != f.data() + f.size())
        throw EvaluationError("ground truth row " + std::to_string(row) + ": bad message_id '" + f + "'");
      GroundTruthEntry e;
      e.gt_group = fields[1];
      if (!fields[2].empty()) {
        e.gt_type = parse_log_type(fields[2]);
        if (!e.gt_type) throw EvaluationError("ground truth row " + std::to_string(row) + ": bad gt_type");
      }
      e.gt_template = fields[3];
      if (!gt.entries.emplace(id, std::move(e)).second)
        throw EvaluationError("ground truth: duplicate message_id " + f);
    }
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const EvaluationError*>(&e)) throw;
    throw EvaluationError(std::string("ground truth: ") + e.what());
  }
  return gt;
}

GroundTruth load_ground_truth(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read ground truth " + path.string());
  return read_ground_truth(in);
}

std::string format_ground_truth(const GroundTruth& gt) {
  std::string out = "message_id,gt_group,gt_type,gt_template\n";
  for (const auto& [id, e] : gt.entries)
    out += csv::row({std::to_string(id), e.gt_group, e.gt_type ? std::string(to_string(*e.gt_type)) : std::string(),
                     e.gt_template});
  return out;
}

}  // namespace hybridlog

#include "hybridlog/eval/loghub.hpp"

#include <algorithm>
#include <fstream>

#include "hybridlog/csv.hpp"
#include "hybridlog/errors.hpp"

namespace hybridlog {

namespace fs = std::filesystem;

const std::vector<std::string>& loghub_datasets() {
  static const std::vector<std::string> names = {
      "HDFS",  "Hadoop",  "Spark",     "Zookeeper", "BGL",       "HPC",     "Thunderbird", "Windows",
      "Linux", "Android", "HealthApp", "Apache",    "Proxifier", "OpenSSH", "OpenStack",   "Mac"};
  return names;
}

namespace {

fs::path log_file(const fs::path& root, const std::string& name) { return root / name / (name + "_2k.log"); }
fs::path structured_file(const fs::path& root, const std::string& name) {
  return root / name / (name + "_2k.log_structured.csv");
}

}  // namespace

bool loghub_available(const fs::path& root, const std::string& name) {
  std::error_code ec;
  return fs::is_regular_file(log_file(root, name), ec) && fs::is_regular_file(structured_file(root, name), ec);
}

LoghubDataset load_loghub(const fs::path& root, const std::string& name) {
  LoghubDataset d;
  d.name = name;
  d.log_path = log_file(root, name);
  d.structured_path = structured_file(root, name);
  std::ifstream in(d.structured_path, std::ios::binary);
  if (!in) throw IoError("cannot read " + d.structured_path.string());

  std::vector<std::string> row;
  if (!csv::read_row(in, row)) throw EvaluationError(name + ": empty structured csv");
  auto column = [&](const char* want) {
    auto it = std::find(row.begin(), row.end(), want);
    if (it == row.end()) throw EvaluationError(name + ": structured csv lacks column " + want);
    return static_cast<std::size_t>(it - row.begin());
  };
  const std::size_t c_line = column("LineId");
  const std::size_t c_event = column("EventId");
  const std::size_t c_tmpl = column("EventTemplate");
  const std::size_t width = std::max({c_line, c_event, c_tmpl}) + 1;
  while (csv::read_row(in, row)) {
    if (row.size() < width) continue;
    std::size_t line = 0;
    try {
      line = std::stoul(row[c_line]);
    } catch (const std::exception&) {
      throw EvaluationError(name + ": bad LineId '" + row[c_line] + "'");
    }
    d.by_line[line] = GroundTruthEntry{row[c_event], std::nullopt, row[c_tmpl]};
  }
  return d;
}

GroundTruth loghub_truth(const Session& session, const LoghubDataset& data) {
  GroundTruth gt;
  for (const auto& m : session.records()) {
    auto it = data.by_line.find(m.line_start);
    if (it == data.by_line.end())
      throw EvaluationError(data.name + ": no ground truth for line " + std::to_string(m.line_start));
    gt.entries.emplace(m.message_id, it->second);
  }
  return gt;
}

}  // namespace hybridlog

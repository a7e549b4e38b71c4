#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "hybridlog/eval/ground_truth.hpp"
#include "hybridlog/session.hpp"

namespace hybridlog {

/// The 16 Loghub 2k dataset names.
const std::vector<std::string>& loghub_datasets();

struct LoghubDataset {
  std::string name;
  std::filesystem::path log_path;
  std::filesystem::path structured_path;
  /// Ground truth keyed by LineId (EventId as the group, EventTemplate).
  std::map<std::size_t, GroundTruthEntry> by_line;
};

/// `<root>/<name>/<name>_2k.log` plus `<name>_2k.log_structured.csv`.
bool loghub_available(const std::filesystem::path& root, const std::string& name);
/// Throws IoError or EvaluationError.
LoghubDataset load_loghub(const std::filesystem::path& root, const std::string& name);

/// Ground truth keyed by message id, taking the label of each message's first
/// line. Lines folded into a previous message lose their own label.
GroundTruth loghub_truth(const Session& session, const LoghubDataset& data);

}  // namespace hybridlog

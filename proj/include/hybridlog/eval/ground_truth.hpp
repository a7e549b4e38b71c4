#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>

#include "hybridlog/token.hpp"

namespace hybridlog {

struct GroundTruthEntry {
  std::string gt_group;
  std::optional<LogType> gt_type;  // hybrid sets only
  std::string gt_template;
};

/// Per-message labels keyed by message_id.
struct GroundTruth {
  std::map<MessageId, GroundTruthEntry> entries;

  std::size_t size() const { return entries.size(); }
  bool contains(MessageId id) const { return entries.count(id) != 0; }

  /// Restricts to the listed ids (absent ids are skipped).
  template <class Ids>
  GroundTruth subset(const Ids& ids) const {
    GroundTruth out;
    for (MessageId id : ids)
      if (auto it = entries.find(id); it != entries.end()) out.entries.emplace(id, it->second);
    return out;
  }
};

/// Sidecar CSV with header message_id,gt_group,gt_type,gt_template. An empty
/// gt_type field means "unknown". Throws EvaluationError on bad content and
/// IoError when unreadable.
GroundTruth read_ground_truth(std::istream& in);
GroundTruth load_ground_truth(const std::filesystem::path& path);
std::string format_ground_truth(const GroundTruth& gt);

}  // namespace hybridlog

#include "hybridlog/eval/tuning.hpp"

#include <algorithm>

#include "hybridlog/errors.hpp"
#include "hybridlog/eval/metrics.hpp"
#include "hybridlog/rng.hpp"
#include "hybridlog/session.hpp"

namespace hybridlog {

namespace {

template <class T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

ConfigSpace ConfigSpace::from_base(const SourceConfig& base) {
  return {{base.max_tree_depth}, {base.min_id_len}, {base.max_id_len}, {base.eps_a}, {base.eps_m}};
}

std::size_t ConfigSpace::size() const {
  return max_tree_depth.size() * min_id_len.size() * max_id_len.size() * eps_a.size() * eps_m.size();
}

TuningSample sample_messages(std::vector<RawMessage> messages, const GroundTruth& truth, std::size_t n,
                             std::uint64_t seed) {
  TuningSample out;
  if (messages.size() > n) {
    Rng rng(seed);
    // Partial Fisher-Yates over indices, then restore stream order.
    std::vector<std::size_t> idx(messages.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (std::size_t i = 0; i < n; ++i) std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
    idx.resize(n);
    std::sort(idx.begin(), idx.end());
    std::vector<RawMessage> picked;
    picked.reserve(n);
    for (std::size_t i : idx) picked.push_back(std::move(messages[i]));
    messages = std::move(picked);
  }
  std::vector<MessageId> ids;
  for (const auto& m : messages) ids.push_back(m.message_id);
  out.truth = truth.subset(ids);
  out.messages = std::move(messages);
  return out;
}

GridResult grid_search(const SourceConfig& base, const ConfigSpace& space, const TuningSample& sample,
                       Objective objective) {
  if (space.size() == 0) throw ConfigError("grid", "empty search grid");
  GridResult result;
  bool have_best = false;
  for (auto depth : sorted_unique(space.max_tree_depth))
    for (auto min_len : sorted_unique(space.min_id_len))
      for (auto max_len : sorted_unique(space.max_id_len))
        for (auto eps_a : sorted_unique(space.eps_a))
          for (auto eps_m : sorted_unique(space.eps_m)) {
            SourceConfig cfg = base;
            cfg.max_tree_depth = depth;
            cfg.min_id_len = min_len;
            cfg.max_id_len = max_len;
            cfg.eps_a = eps_a;
            cfg.eps_m = eps_m;
            cfg.eps_e = std::min(cfg.eps_e, cfg.eps_m);
            try {
              cfg.validate();
            } catch (const ConfigError&) {
              ++result.skipped;
              continue;
            }
            Session session(cfg, {});
            for (const auto& m : sample.messages) session.process(m);
            const EvalReport report = evaluate(session, sample.truth);
            GridPoint p{cfg, objective == Objective::GroupingAccuracy ? report.grouping_accuracy
                                                                      : report.templates.f1};
            if (!have_best || p.score > result.best.score) {
              result.best = p;
              have_best = true;
            }
            result.evaluated.push_back(std::move(p));
          }
  if (!have_best) throw ConfigError("grid", "no grid point satisfies the config invariants");
  return result;
}

}  // namespace hybridlog

#include "hybridlog/template_engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "hybridlog/aggregation.hpp"
#include "hybridlog/errors.hpp"

namespace hybridlog {

std::string_view to_string(GroupOrigin origin) {
  switch (origin) {
    case GroupOrigin::New:
      return "NEW";
    case GroupOrigin::Auto:
      return "AUTO";
    case GroupOrigin::Rejection:
      return "REJECTION";
  }
  return "?";
}

std::string_view to_string(Decision d) { return d == Decision::Accept ? "ACCEPT" : "REJECT"; }

std::optional<Decision> parse_decision(std::string_view text) {
  if (text == "ACCEPT") return Decision::Accept;
  if (text == "REJECT") return Decision::Reject;
  return std::nullopt;
}

MatchResult match(std::span<const TemplateGroup* const> groups, const Identifier& id) {
  MatchResult best;
  for (const TemplateGroup* g : groups) {
    if (g->tmpl.size() != id.tokens.size()) continue;
    const double sim = similarity(g->tmpl, id.tokens);
    if (!best.group || sim > best.similarity ||
        (sim == best.similarity && g->group_id < best.group->group_id)) {
      best.group = g;
      best.similarity = sim;
    }
  }
  return best;
}

std::vector<std::size_t> changed_positions(const TokenSequence& tmpl, const TokenSequence& id) {
  std::vector<std::size_t> out;
  const std::size_t n = std::min(tmpl.size(), id.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (tmpl[i].is_wildcard()) continue;
    if (!token_equal(tmpl[i], id[i])) out.push_back(i);
  }
  return out;
}

std::string render_template(const TemplateGroup& g) {
  const auto& toks = g.tmpl.tokens;
  if (g.log_type != LogType::Text || g.split >= toks.size()) return render(g.tmpl);
  return render(toks, 0, g.split) + "\n" + render(toks, g.split, toks.size());
}

TemplateEngine::TemplateEngine(const SourceConfig& cfg, EngineOptions opts) : cfg_(cfg), opts_(opts) {
  cfg_.validate();
  if (opts_.mode == UpdateMode::Guided && !opts_.channel)
    throw ConfigError("mode", "guided mode needs a feedback channel");
}

std::optional<std::size_t> TemplateEngine::remaining_budget() const {
  if (!opts_.query_limit) return std::nullopt;
  return *opts_.query_limit > queries_ ? *opts_.query_limit - queries_ : 0;
}

bool TemplateEngine::budget_left() const {
  return !opts_.query_limit || queries_ < *opts_.query_limit;
}

std::vector<const TemplateGroup*> TemplateEngine::candidates(const std::vector<GroupId>& slot) const {
  std::vector<const TemplateGroup*> out;
  out.reserve(slot.size());
  for (GroupId gid : slot) out.push_back(&groups_[gid - 1]);
  return out;
}

GroupId TemplateEngine::create_group(std::vector<GroupId>& slot, const Identifier& id, MessageId message_id,
                                     GroupOrigin origin) {
  TemplateGroup g;
  g.group_id = groups_.size() + 1;
  g.tmpl = id.tokens;
  g.log_type = id.log_type;
  g.member_ids.push_back(message_id);
  g.created_by = origin;
  g.split = id.split;
  groups_.push_back(std::move(g));
  slot.push_back(groups_.back().group_id);
  return groups_.back().group_id;
}

void TemplateEngine::merge_into(TemplateGroup& g, const Identifier& id, MessageId message_id, UpdateResult& r) {
  r.group_id = g.group_id;
  r.before = g.tmpl;
  g.tmpl = common_sequence(g.tmpl, id.tokens);
  g.member_ids.push_back(message_id);
  r.after = g.tmpl;
}

UpdateResult TemplateEngine::add(const Identifier& id, MessageId message_id) {
  auto slot = tree_.route(id, cfg_);
  if (opts_.mode == UpdateMode::Guided) return guided_update(*slot.groups, id, message_id);
  return auto_update(*slot.groups, id, message_id, cfg_.eps_m);
}

UpdateResult TemplateEngine::auto_update(std::vector<GroupId>& slot, const Identifier& id, MessageId message_id,
                                         double eps_m) {
  UpdateResult r;
  auto cands = candidates(slot);
  auto best = match(cands, id);
  if (best.group && best.similarity >= eps_m) {
    merge_into(groups_[best.group->group_id - 1], id, message_id, r);
    return r;
  }
  r.created = true;
  r.group_id = create_group(slot, id, message_id, cands.empty() ? GroupOrigin::New : GroupOrigin::Auto);
  r.after = id.tokens;
  return r;
}

UpdateResult TemplateEngine::guided_update(std::vector<GroupId>& slot, const Identifier& id,
                                           MessageId message_id) {
  // Spent budget or a dead channel: the rest of the session runs as auto.
  if (channel_failed_ || !budget_left()) {
    std::vector<std::size_t> changed;
    auto cands = candidates(slot);
    auto best = match(cands, id);
    if (best.group && best.similarity >= cfg_.eps_m) changed = changed_positions(best.group->tmpl, id.tokens);
    UpdateResult r = auto_update(slot, id, message_id, cfg_.eps_m);
    if (!r.created) {
      const auto& before = r.before;
      r.unasked = std::any_of(changed.begin(), changed.end(), [&](std::size_t i) { return before[i].is_literal(); });
      if (r.unasked) ++unasked_;
    }
    return r;
  }

  UpdateResult r;
  auto cands = candidates(slot);
  auto best = match(cands, id);
  if (!best.group || best.similarity < cfg_.eps_guided()) {
    r.created = true;
    r.group_id = create_group(slot, id, message_id, cands.empty() ? GroupOrigin::New : GroupOrigin::Auto);
    r.after = id.tokens;
    return r;
  }

  TemplateGroup& g = groups_[best.group->group_id - 1];
  auto changed = changed_positions(g.tmpl, id.tokens);
  const bool needs_query =
      std::any_of(changed.begin(), changed.end(), [&](std::size_t i) { return g.tmpl[i].is_literal(); });
  if (!needs_query) {
    merge_into(g, id, message_id, r);
    return r;
  }

  MergeQuery q;
  q.query_id = queries_ + 1;
  q.group_id = g.group_id;
  q.current_template = render(g.tmpl);
  q.incoming_identifier = render(id.tokens);
  // Key positions generalize silently, so only literals are put to the user.
  for (std::size_t i : changed)
    if (g.tmpl[i].is_literal()) q.changed_positions.push_back({i, g.tmpl[i].render(), std::string(kWildcard)});
  q.similarity = best.similarity;
  q.message_id = message_id;
  q.group_first_member = g.member_ids.front();
  for (const auto& t : g.tmpl.tokens) q.template_tokens.push_back(t.render());
  for (const auto& t : id.tokens.tokens) q.identifier_tokens.push_back(t.render());
  q.remaining_budget = remaining_budget();

  Decision d;
  try {
    d = opts_.channel->ask(q);
  } catch (const ChannelError& e) {
    channel_failed_ = true;
    channel_error_ = e.what();
    return guided_update(slot, id, message_id);
  }
  ++queries_;
  r.query_raised = true;
  r.decision = d;
  if (d == Decision::Accept) {
    merge_into(g, id, message_id, r);
  } else {
    r.created = true;
    r.group_id = create_group(slot, id, message_id, GroupOrigin::Rejection);
    r.after = id.tokens;
  }
  return r;
}

std::vector<FinalTemplate> TemplateEngine::finalize() const {
  std::vector<FinalTemplate> out;
  out.reserve(groups_.size());
  for (const auto& g : groups_) out.push_back({g.group_id, g.log_type, render_template(g), g.member_ids});
  return out;
}

}  // namespace hybridlog

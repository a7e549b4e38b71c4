#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hybridlog/config.hpp"
#include "hybridlog/grouping_tree.hpp"
#include "hybridlog/token.hpp"

namespace hybridlog {

enum class GroupOrigin : std::uint8_t { New, Auto, Rejection };
std::string_view to_string(GroupOrigin origin);

struct TemplateGroup {
  GroupId group_id = 0;
  TokenSequence tmpl;
  LogType log_type = LogType::Event;
  std::vector<MessageId> member_ids;
  GroupOrigin created_by = GroupOrigin::New;
  std::size_t split = 0;  // TEXT head length, taken from the founding identifier
};

/// A template position that a merge would turn into "<*>".
struct ChangedPosition {
  std::size_t index = 0;
  std::string old_token;
  std::string new_value{kWildcard};
};

struct MergeQuery {
  std::uint64_t query_id = 0;
  GroupId group_id = 0;
  std::string current_template;
  std::string incoming_identifier;
  std::vector<ChangedPosition> changed_positions;
  double similarity = 0.0;
  // Extra context for answering parties.
  MessageId message_id = 0;
  MessageId group_first_member = 0;
  std::vector<std::string> template_tokens;
  std::vector<std::string> identifier_tokens;
  std::optional<std::size_t> remaining_budget;  // before this query; nullopt = unlimited
};

enum class Decision : std::uint8_t { Accept, Reject };
std::string_view to_string(Decision d);
std::optional<Decision> parse_decision(std::string_view text);

/// Blocking rendezvous with whoever answers merge queries. Implementations
/// throw ChannelError once they can no longer answer.
class FeedbackChannel {
 public:
  virtual ~FeedbackChannel() = default;
  virtual Decision ask(const MergeQuery& q) = 0;
};

/// Best-matching group by similarity, ties to the lowest group id. Groups
/// whose template length differs from the identifier are ignored.
struct MatchResult {
  const TemplateGroup* group = nullptr;
  double similarity = 0.0;
};
MatchResult match(std::span<const TemplateGroup* const> groups, const Identifier& id);

enum class UpdateMode : std::uint8_t { Auto, Guided };

struct EngineOptions {
  UpdateMode mode = UpdateMode::Auto;
  FeedbackChannel* channel = nullptr;          // required in guided mode
  std::optional<std::size_t> query_limit;      // nullopt = unlimited
};

struct UpdateResult {
  GroupId group_id = 0;
  TokenSequence before;  // template before the update (empty for new groups)
  TokenSequence after;
  bool created = false;
  bool query_raised = false;
  std::optional<Decision> decision;
  /// A literal-generalizing merge went through without asking because the
  /// budget was spent or the channel had failed.
  bool unasked = false;
};

struct FinalTemplate {
  GroupId group_id = 0;
  LogType log_type = LogType::Event;
  std::string text;
  std::vector<MessageId> member_ids;
};

/// Template renderer shared by finalize and the output files: TEXT templates
/// join head and tail with a line break.
std::string render_template(const TemplateGroup& g);

/// Owns the grouping tree and every template group of one session.
class TemplateEngine {
 public:
  TemplateEngine(const SourceConfig& cfg, EngineOptions opts);

  TemplateEngine(TemplateEngine&&) noexcept = default;

  /// Routes the identifier and updates the reached leaf (or fallback list).
  UpdateResult add(const Identifier& id, MessageId message_id);

  /// Candidate-list updates, exposed for direct testing.
  UpdateResult auto_update(std::vector<GroupId>& slot, const Identifier& id, MessageId message_id,
                           double eps_m);
  UpdateResult guided_update(std::vector<GroupId>& slot, const Identifier& id, MessageId message_id);

  const std::vector<TemplateGroup>& groups() const { return groups_; }
  const TemplateGroup& group(GroupId id) const { return groups_.at(id - 1); }
  const ParseTree& tree() const { return tree_; }
  const SourceConfig& config() const { return cfg_; }
  const EngineOptions& options() const { return opts_; }

  std::size_t queries_asked() const { return queries_; }
  std::size_t unasked_merges() const { return unasked_; }
  bool channel_failed() const { return channel_failed_; }
  const std::string& channel_error() const { return channel_error_; }
  std::optional<std::size_t> remaining_budget() const;

  /// Groups in id order with rendered templates.
  std::vector<FinalTemplate> finalize() const;

 private:
  std::vector<const TemplateGroup*> candidates(const std::vector<GroupId>& slot) const;
  GroupId create_group(std::vector<GroupId>& slot, const Identifier& id, MessageId message_id,
                       GroupOrigin origin);
  void merge_into(TemplateGroup& g, const Identifier& id, MessageId message_id, UpdateResult& r);
  bool budget_left() const;

  SourceConfig cfg_;
  EngineOptions opts_;
  ParseTree tree_;
  std::vector<TemplateGroup> groups_;
  std::size_t queries_ = 0;
  std::size_t unasked_ = 0;
  bool channel_failed_ = false;
  std::string channel_error_;
};

/// Positions where merging `id` into `tmpl` would generalize a non-wildcard
/// token. Both sequences must have equal length.
std::vector<std::size_t> changed_positions(const TokenSequence& tmpl, const TokenSequence& id);

}  // namespace hybridlog

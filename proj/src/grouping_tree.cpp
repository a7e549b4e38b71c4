#include "hybridlog/grouping_tree.hpp"

#include <algorithm>

#include "hybridlog/casting.hpp"

namespace hybridlog {

Identifier make_identifier(TokenSequence tokens, LogType type, std::size_t split) {
  Identifier id;
  id.n_t = tokens.size();
  id.n_k = key_count(tokens);
  id.split = std::min(split, id.n_t);
  id.log_type = type;
  id.tokens = std::move(tokens);
  return id;
}

Identifier extract_identifier(const AggregationResult& agg, IdentifierSource* source) {
  IdentifierSource src;
  const auto& blocks = agg.blocks;
  auto single_line = [](const Block& b) -> std::optional<std::size_t> {
    if (b.size() == 1) return b.members.front();
    return std::nullopt;
  };

  Identifier id;
  if (blocks.empty()) {
    id = make_identifier({}, agg.log_type, 0);
  } else if (agg.log_type == LogType::Event) {
    src.head_line = single_line(blocks.front());
    id = make_identifier(blocks.front().common, LogType::Event, blocks.front().common.size());
  } else if (agg.log_type == LogType::Text) {
    const Block& first = blocks.front();
    src.head_line = single_line(first);
    if (blocks.size() == 1) {
      id = make_identifier(first.common, LogType::Text, first.common.size());
    } else {
      const Block& last = blocks.back();
      src.tail_line = single_line(last);
      TokenSequence joined = first.common;
      joined.tokens.insert(joined.tokens.end(), last.common.tokens.begin(), last.common.tokens.end());
      id = make_identifier(std::move(joined), LogType::Text, first.common.size());
    }
  } else {
    auto multi = std::find_if(blocks.begin(), blocks.end(), [](const Block& b) { return b.size() >= 2; });
    const Block* header = &blocks.front();
    if (multi != blocks.end() && multi != blocks.begin()) header = &*(multi - 1);
    src.head_line = single_line(*header);
    id = make_identifier(header->common, LogType::Table, header->common.size());
  }
  if (source) *source = src;
  return id;
}

std::vector<std::string> fork_labels(const Identifier& id, std::size_t max_tree_depth) {
  const std::size_t depth = std::min(max_tree_depth, id.n_t);
  std::vector<std::string> labels;
  labels.reserve(depth);
  for (const auto& t : id.tokens.tokens) {
    if (labels.size() == depth) return labels;
    if (t.is_key()) labels.push_back("<*" + t.key_kind + ">");
  }
  for (const auto& t : id.tokens.tokens) {
    if (labels.size() == depth) break;
    if (!t.is_key()) labels.push_back(t.text);
  }
  return labels;
}

ParseTree::Slot ParseTree::route(const Identifier& id, const SourceConfig& cfg) {
  if (id.n_t < cfg.min_id_len || id.n_t > cfg.max_id_len)
    return {&fallback_[static_cast<std::size_t>(id.log_type)], true};

  auto& root = roots_[RootKey{id.log_type, id.n_t, id.n_k}];
  if (!root) root = std::make_unique<Node>();
  Node* node = root.get();
  for (auto& label : fork_labels(id, cfg.max_tree_depth)) {
    auto& child = node->children[label];
    if (!child) child = std::make_unique<Node>();
    node = child.get();
  }
  return {&node->groups, false};
}

namespace {

std::size_t count_nodes(const ParseTree::Node& node) {
  std::size_t n = 1;
  for (const auto& [label, child] : node.children) n += count_nodes(*child);
  return n;
}

std::size_t count_leaves(const ParseTree::Node& node) {
  if (node.children.empty()) return 1;
  std::size_t n = 0;
  for (const auto& [label, child] : node.children) n += count_leaves(*child);
  return n;
}

void dump_node(std::ostream& out, const ParseTree::Node& node, std::size_t depth) {
  for (const auto& [label, child] : node.children) {
    out << std::string(2 * depth, ' ') << label;
    if (child->children.empty()) out << " (groups: " << child->groups.size() << ')';
    out << '\n';
    dump_node(out, *child, depth + 1);
  }
}

}  // namespace

std::size_t ParseTree::node_count() const {
  std::size_t n = 0;
  for (const auto& [key, root] : roots_) n += count_nodes(*root);
  return n;
}

std::size_t ParseTree::leaf_count() const {
  std::size_t n = 0;
  for (const auto& [key, root] : roots_) n += count_leaves(*root);
  return n;
}

void ParseTree::dump(std::ostream& out) const {
  for (const auto& [key, root] : roots_) {
    const auto& [type, n_t, n_k] = key;
    out << '[' << to_string(type) << " n_t=" << n_t << " n_k=" << n_k << ']';
    if (root->children.empty()) out << " (groups: " << root->groups.size() << ')';
    out << '\n';
    dump_node(out, *root, 1);
  }
  for (auto type : kAllLogTypes) {
    const auto& list = fallback(type);
    if (!list.empty()) out << "[fallback " << to_string(type) << "] (groups: " << list.size() << ")\n";
  }
}

}  // namespace hybridlog

#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace csmaa {

/// Positional identifier of a criterion: the sequence of 1-based child
/// indices from the root. The empty path is the root g_0.
struct CriterionId {
  std::vector<int> path;

  bool is_root() const { return path.empty(); }
  std::size_t depth() const { return path.size(); }
  std::string to_string() const;

  friend bool operator==(const CriterionId&, const CriterionId&) = default;
  friend auto operator<=>(const CriterionId&, const CriterionId&) = default;
};

enum class Direction { Increasing, Decreasing };

/// Index into Hierarchy::nodes(), stable for the lifetime of the hierarchy.
using NodeIndex = std::size_t;

struct CriterionNode {
  CriterionId id;
  std::string label;
  std::string description;
  Direction direction = Direction::Increasing;  // meaningful on leaves only
  std::optional<NodeIndex> parent;
  std::vector<NodeIndex> children;
  // Leaves below this node occupy the contiguous range
  // [leaf_begin, leaf_end) of the preorder leaf numbering.
  std::size_t leaf_begin = 0;
  std::size_t leaf_end = 0;

  bool is_leaf() const { return children.empty(); }
  std::size_t level() const { return id.depth(); }
};

/// Input description of one node, as read from a hierarchy file.
struct NodeSpec {
  std::string label;
  std::string description;
  std::optional<Direction> direction;
  std::optional<std::vector<NodeSpec>> children;  // absent on leaves
};

struct HierarchySpec {
  NodeSpec root;
  std::optional<std::size_t> declared_levels;
};

/// Criteria tree g_0 ... g_t. Immutable after construction. Nodes are stored
/// in preorder, so node 0 is the root and leaves appear in declaration order.
class Hierarchy {
 public:
  static Hierarchy build(const HierarchySpec& spec);

  const std::vector<CriterionNode>& nodes() const { return nodes_; }
  const CriterionNode& node(NodeIndex i) const { return nodes_.at(i); }
  const CriterionNode& root() const { return nodes_.front(); }
  NodeIndex root_index() const { return 0; }

  /// Number of levels below the root; the deepest leaves sit at this level.
  std::size_t levels() const { return levels_; }
  std::size_t leaf_count() const { return leaves_.size(); }
  /// Node index of the i-th elementary criterion.
  NodeIndex leaf_node(std::size_t leaf) const { return leaves_.at(leaf); }
  const CriterionNode& leaf(std::size_t leaf) const { return nodes_[leaves_.at(leaf)]; }

  NodeIndex index_of(const CriterionId& id) const;
  NodeIndex index_of_label(const std::string& label) const;
  std::optional<NodeIndex> find_label(const std::string& label) const;
  /// Accepts a node label, or "root" for g_0.
  NodeIndex resolve(const std::string& name) const;
  std::optional<std::size_t> leaf_index_of_label(const std::string& label) const;

  /// E(g_r): leaf indices (preorder numbering) of the elementary criteria
  /// descending from r.
  std::vector<std::size_t> elementary_descendants(const CriterionId& r) const;
  std::vector<std::size_t> elementary_descendants(NodeIndex r) const;

  /// G_r^l: descendants of r sitting at level l, in declaration order.
  std::vector<CriterionId> children_at(const CriterionId& r, std::size_t level) const;
  std::vector<NodeIndex> children_at(NodeIndex r, std::size_t level) const;

  bool is_ancestor(NodeIndex ancestor, NodeIndex node) const;

 private:
  std::vector<CriterionNode> nodes_;
  std::vector<NodeIndex> leaves_;
  std::map<CriterionId, NodeIndex> by_id_;
  std::map<std::string, NodeIndex> by_label_;
  std::size_t levels_ = 0;
};

/// Parses the JSON hierarchy document described in docs/formats.md.
HierarchySpec parse_hierarchy_spec(std::istream& in);
Hierarchy load_hierarchy(const std::string& path);

}  // namespace csmaa

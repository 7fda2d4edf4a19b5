#include "csmaa/hierarchy.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "csmaa/error.hpp"
#include "json.hpp"

namespace csmaa {

std::string CriterionId::to_string() const {
  if (path.empty()) return "g0";
  std::ostringstream os;
  os << "g(";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) os << ',';
    os << path[i];
  }
  os << ')';
  return os.str();
}

namespace {

struct Builder {
  std::vector<CriterionNode>& nodes;
  std::vector<NodeIndex>& leaves;
  std::set<std::string> seen;
  std::size_t max_depth = 0;

  NodeIndex add(const NodeSpec& spec, CriterionId id, std::optional<NodeIndex> parent) {
    if (spec.label.empty())
      throw Error(ErrorCode::Parse, "criterion at " + id.to_string() + " has an empty label");
    if (!seen.insert(spec.label).second)
      throw Error(ErrorCode::Parse, "duplicate criterion label '" + spec.label + "'");
    const bool leaf = !spec.children.has_value();
    if (!leaf && spec.direction)
      throw Error(ErrorCode::Parse,
                  "direction declared on non-leaf criterion '" + spec.label + "'");
    if (!leaf && spec.children->empty())
      throw Error(ErrorCode::Parse, "criterion '" + spec.label + "' has no sub-criteria");

    const NodeIndex self = nodes.size();
    CriterionNode node;
    node.id = id;
    node.label = spec.label;
    node.description = spec.description;
    node.direction = spec.direction.value_or(Direction::Increasing);
    node.parent = parent;
    node.leaf_begin = leaves.size();
    nodes.push_back(std::move(node));
    max_depth = std::max(max_depth, id.depth());

    if (leaf) {
      leaves.push_back(self);
    } else {
      int k = 0;
      for (const NodeSpec& child : *spec.children) {
        CriterionId cid = id;
        cid.path.push_back(++k);
        const NodeIndex c = add(child, std::move(cid), self);
        nodes[self].children.push_back(c);
      }
    }
    nodes[self].leaf_end = leaves.size();
    return self;
  }
};

}  // namespace

Hierarchy Hierarchy::build(const HierarchySpec& spec) {
  Hierarchy h;
  Builder b{h.nodes_, h.leaves_, {}, 0};
  b.add(spec.root, CriterionId{}, std::nullopt);
  h.levels_ = b.max_depth;
  if (spec.declared_levels && *spec.declared_levels != h.levels_) {
    throw Error(ErrorCode::Parse, "declared level count " + std::to_string(*spec.declared_levels) +
                                      " does not match the tree depth " +
                                      std::to_string(h.levels_));
  }
  for (NodeIndex i = 0; i < h.nodes_.size(); ++i) {
    h.by_id_.emplace(h.nodes_[i].id, i);
    h.by_label_.emplace(h.nodes_[i].label, i);
  }
  return h;
}

NodeIndex Hierarchy::index_of(const CriterionId& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end())
    throw Error(ErrorCode::InvalidArgument, "unknown criterion " + id.to_string());
  return it->second;
}

std::optional<NodeIndex> Hierarchy::find_label(const std::string& label) const {
  auto it = by_label_.find(label);
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

NodeIndex Hierarchy::index_of_label(const std::string& label) const {
  if (auto i = find_label(label)) return *i;
  throw Error(ErrorCode::InvalidArgument, "unknown criterion '" + label + "'");
}

NodeIndex Hierarchy::resolve(const std::string& name) const {
  if (name == "root") return root_index();
  return index_of_label(name);
}

std::optional<std::size_t> Hierarchy::leaf_index_of_label(const std::string& label) const {
  auto i = find_label(label);
  if (!i || !nodes_[*i].is_leaf()) return std::nullopt;
  return nodes_[*i].leaf_begin;
}

std::vector<std::size_t> Hierarchy::elementary_descendants(NodeIndex r) const {
  const CriterionNode& n = nodes_.at(r);
  std::vector<std::size_t> out;
  out.reserve(n.leaf_end - n.leaf_begin);
  for (std::size_t t = n.leaf_begin; t < n.leaf_end; ++t) out.push_back(t);
  return out;
}

std::vector<std::size_t> Hierarchy::elementary_descendants(const CriterionId& r) const {
  return elementary_descendants(index_of(r));
}

bool Hierarchy::is_ancestor(NodeIndex ancestor, NodeIndex node) const {
  std::optional<NodeIndex> cur = nodes_.at(node).parent;
  while (cur) {
    if (*cur == ancestor) return true;
    cur = nodes_[*cur].parent;
  }
  return false;
}

std::vector<NodeIndex> Hierarchy::children_at(NodeIndex r, std::size_t level) const {
  const CriterionNode& n = nodes_.at(r);
  if (n.is_leaf() || level <= n.level() || level > levels_) {
    throw Error(ErrorCode::InvalidArgument,
                "level " + std::to_string(level) + " is not strictly below " +
                    n.id.to_string());
  }
  std::vector<NodeIndex> out;
  // Preorder storage: the subtree of r is the contiguous block after r.
  for (NodeIndex i = r + 1; i < nodes_.size() && nodes_[i].id.depth() > n.level(); ++i) {
    if (nodes_[i].level() == level) out.push_back(i);
  }
  return out;
}

std::vector<CriterionId> Hierarchy::children_at(const CriterionId& r, std::size_t level) const {
  std::vector<CriterionId> out;
  for (NodeIndex i : children_at(index_of(r), level)) out.push_back(nodes_[i].id);
  return out;
}

namespace {

NodeSpec parse_node(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, where + ": expected an object");
  NodeSpec spec;
  if (!j.contains("label") || !j["label"].is_string())
    throw Error(ErrorCode::Parse, where + ": missing string field 'label'");
  spec.label = j["label"].get<std::string>();
  if (j.contains("description")) spec.description = j["description"].get<std::string>();
  if (j.contains("direction")) {
    const std::string d = j["direction"].get<std::string>();
    if (d == "max") spec.direction = Direction::Increasing;
    else if (d == "min") spec.direction = Direction::Decreasing;
    else throw Error(ErrorCode::Parse, where + ": direction must be \"max\" or \"min\"");
  }
  if (j.contains("children")) {
    if (!j["children"].is_array())
      throw Error(ErrorCode::Parse, where + ": 'children' must be an array");
    std::vector<NodeSpec> kids;
    for (const auto& c : j["children"]) kids.push_back(parse_node(c, where + "/" + spec.label));
    spec.children = std::move(kids);
  }
  return spec;
}

}  // namespace

HierarchySpec parse_hierarchy_spec(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("hierarchy: ") + e.what());
  }
  HierarchySpec spec;
  try {
    spec.root = parse_node(doc, "hierarchy");
    if (doc.contains("levels")) spec.declared_levels = doc["levels"].get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("hierarchy: ") + e.what());
  }
  return spec;
}

Hierarchy load_hierarchy(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open hierarchy file " + path);
  try {
    return Hierarchy::build(parse_hierarchy_spec(in));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

}  // namespace csmaa

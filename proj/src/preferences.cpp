#include "csmaa/preferences.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "csmaa/error.hpp"
#include "text_util.hpp"

namespace csmaa {

namespace {

struct ClauseParser {
  const Hierarchy& h;
  std::span<const std::string> alternatives;
  std::string where;

  Error fail(const std::string& msg) const { return Error(ErrorCode::Parse, where + ": " + msg); }

  NodeIndex criterion(const std::string& label) const {
    auto i = label == "root" ? std::optional<NodeIndex>(h.root_index()) : h.find_label(label);
    if (!i) throw fail("unknown criterion '" + label + "'");
    return *i;
  }

  std::string alternative(const std::string& label) const {
    if (!alternatives.empty() &&
        std::find(alternatives.begin(), alternatives.end(), label) == alternatives.end())
      throw fail("unknown alternative '" + label + "'");
    return label;
  }

  // Resolves the common parent node: explicit node= must be an ancestor of
  // every operand, all operands on one level; otherwise operands must be
  // siblings and their parent is used.
  NodeIndex common_node(std::optional<NodeIndex> explicit_node,
                        const std::vector<NodeIndex>& ops) const {
    if (ops.empty()) throw fail("no criteria given");
    const std::size_t level = h.node(ops.front()).level();
    for (NodeIndex o : ops) {
      if (o == h.root_index()) throw fail("the root cannot be compared");
      if (h.node(o).level() != level)
        throw fail("criteria '" + h.node(ops.front()).label + "' and '" + h.node(o).label +
                   "' are not on the same level");
    }
    if (explicit_node) {
      for (NodeIndex o : ops)
        if (!h.is_ancestor(*explicit_node, o))
          throw fail("'" + h.node(o).label + "' is not a sub-criterion of '" +
                     h.node(*explicit_node).label + "'");
      return *explicit_node;
    }
    const NodeIndex parent = *h.node(ops.front()).parent;
    for (NodeIndex o : ops)
      if (h.node(o).parent != parent)
        throw fail("criteria '" + h.node(ops.front()).label + "' and '" + h.node(o).label +
                   "' are not siblings");
    return parent;
  }

  std::vector<std::vector<std::string>> groups(const std::string& body, char sep) const {
    std::vector<std::vector<std::string>> out;
    for (const auto& g : detail::split(body, sep)) {
      auto words = detail::split_ws(g);
      if (words.empty()) throw fail("empty operand group");
      out.push_back(std::move(words));
    }
    return out;
  }

  void parse(const std::string& clause, std::vector<Preference>& out) const {
    const auto colon = clause.find(':');
    if (colon == std::string::npos) throw fail("missing ':' before operands");
    auto head = detail::split_ws(clause.substr(0, colon));
    const std::string body = clause.substr(colon + 1);
    if (head.empty() || (head.size() < 2 && head[0] != "prefer"))
      throw fail("expected '<kind> <op> [node=LABEL] : ...'");
    const std::string kind = head[0];
    const std::string op = head.size() > 1 ? head[1] : ">";
    std::optional<NodeIndex> node;
    for (std::size_t i = 2; i < head.size(); ++i) {
      if (head[i].rfind("node=", 0) != 0) throw fail("unexpected token '" + head[i] + "'");
      node = criterion(head[i].substr(5));
    }

    if (kind == "importance") {
      if (op != ">" && op != "=") throw fail("importance takes '>' or '='");
      auto gs = groups(body, '|');
      if (gs.size() < 2) throw fail("importance needs at least two groups separated by '|'");
      std::vector<std::vector<NodeIndex>> ids;
      std::vector<NodeIndex> all;
      for (const auto& g : gs) {
        ids.emplace_back();
        for (const auto& l : g) {
          ids.back().push_back(criterion(l));
          all.push_back(ids.back().back());
        }
      }
      const NodeIndex r = common_node(node, all);
      const auto k = op == ">" ? PreferenceKind::ImportanceGreater : PreferenceKind::ImportanceEqual;
      for (std::size_t g = 0; g + 1 < ids.size(); ++g)
        for (NodeIndex a : ids[g])
          for (NodeIndex b : ids[g + 1]) {
            if (a == b) throw fail("criterion compared with itself");
            out.push_back(Preference{k, r, {a, b}, {}});
          }
    } else if (kind == "interaction") {
      if (op != "+" && op != "-") throw fail("interaction takes '+' or '-'");
      auto words = detail::split_ws(body);
      if (words.size() != 2) throw fail("interaction needs exactly two criteria");
      std::vector<NodeIndex> ids{criterion(words[0]), criterion(words[1])};
      if (ids[0] == ids[1]) throw fail("criterion paired with itself");
      const NodeIndex r = common_node(node, ids);
      out.push_back(Preference{op == "+" ? PreferenceKind::PositiveInteraction
                                         : PreferenceKind::NegativeInteraction,
                               r, ids, {}});
    } else if (kind == "intensity") {
      if (op != ">") throw fail("intensity takes '>'");
      const auto bar = body.find('|');
      if (bar == std::string::npos) throw fail("intensity needs 'A B | C D'");
      auto lhs = detail::split_ws(body.substr(0, bar));
      if (lhs.size() != 2) throw fail("intensity: left side must name two criteria");
      std::vector<std::vector<std::string>> rhs = groups(body.substr(bar + 1), ',');
      std::vector<NodeIndex> all{criterion(lhs[0]), criterion(lhs[1])};
      for (const auto& g : rhs) {
        if (g.size() != 2) throw fail("intensity: each right-hand pair must name two criteria");
        all.push_back(criterion(g[0]));
        all.push_back(criterion(g[1]));
      }
      for (std::size_t i = 0; i < all.size(); i += 2)
        if (all[i] == all[i + 1]) throw fail("criterion paired with itself");
      const NodeIndex r = common_node(node, all);
      for (std::size_t i = 2; i < all.size(); i += 2)
        out.push_back(Preference{PreferenceKind::InteractionIntensity, r,
                                 {all[0], all[1], all[i], all[i + 1]}, {}});
    } else if (kind == "prefer") {
      if (op.rfind("node=", 0) == 0) {
        node = criterion(op.substr(5));
      } else if (op != ">") {
        throw fail("prefer takes '>'");
      }
      auto gs = groups(body, '|');
      if (gs.size() < 2) throw fail("prefer needs at least two alternatives separated by '|'");
      const NodeIndex r = node.value_or(h.root_index());
      for (std::size_t g = 0; g + 1 < gs.size(); ++g)
        for (const auto& a : gs[g])
          for (const auto& b : gs[g + 1]) {
            if (a == b) throw fail("alternative compared with itself");
            out.push_back(Preference{PreferenceKind::AlternativeComparison, r, {},
                                     {alternative(a), alternative(b)}});
          }
    } else {
      throw fail("unknown statement kind '" + kind + "'");
    }
  }
};

}  // namespace

PreferenceProfile parse_profile(std::istream& in, const Hierarchy& h,
                                std::span<const std::string> alternatives,
                                const std::string& source_name) {
  PreferenceProfile p;
  std::set<std::string> ids;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line{detail::trim(raw.substr(0, raw.find('#')))};
    if (line.empty()) continue;
    const std::string where = source_name + ":" + std::to_string(line_no);
    if (line.front() == '@') {
      auto words = detail::split_ws(line);
      if (words.size() != 2 || words[0] != "@profile")
        throw Error(ErrorCode::Parse, where + ": expected '@profile NAME'");
      p.name = words[1];
      continue;
    }

    PreferenceStatement st;
    st.line = line_no;
    st.text = line;
    // Optional "ID:" prefix; the id is a single token directly before ':'.
    const auto colon = line.find(':');
    if (colon != std::string::npos) {
      const std::string prefix{detail::trim(line.substr(0, colon))};
      const bool keyword = prefix == "importance" || prefix == "interaction" ||
                           prefix == "intensity" || prefix == "prefer";
      if (!prefix.empty() && !keyword && prefix.find_first_of(" \t") == std::string::npos &&
          prefix.find('=') == std::string::npos) {
        st.id = prefix;
        line = std::string(detail::trim(line.substr(colon + 1)));
      }
    }
    if (st.id.empty()) st.id = "S" + std::to_string(p.statements.size() + 1);
    if (!ids.insert(st.id).second)
      throw Error(ErrorCode::Parse, where + ": duplicate statement id '" + st.id + "'");

    ClauseParser cp{h, alternatives, where};
    for (const auto& clause : detail::split(line, ';')) {
      if (detail::trim(clause).empty()) continue;
      cp.parse(std::string(detail::trim(clause)), st.preferences);
    }
    if (st.preferences.empty()) throw Error(ErrorCode::Parse, where + ": empty statement");
    p.statements.push_back(std::move(st));
  }
  return p;
}

PreferenceProfile load_profile(const std::string& path, const Hierarchy& h,
                               std::span<const std::string> alternatives) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open preference file " + path);
  PreferenceProfile p = parse_profile(in, h, alternatives, path);
  if (p.name.empty()) p.name = std::filesystem::path(path).stem().string();
  return p;
}

ConstraintSet compile(const PreferenceProfile& p, const Hierarchy& h, const NormalizedTable* table) {
  ConstraintSet c{h.leaf_count(), false, {}};
  const std::size_t dim = c.dimension();
  auto row_of = [&](std::vector<double> coeffs, double eps, Comparator cmp,
                    const std::string& tag) {
    c.add(ConstraintRow{std::move(coeffs), eps, cmp, 0.0, tag});
  };
  auto diff = [&](const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> d(dim);
    for (std::size_t k = 0; k < dim; ++k) d[k] = a[k] - b[k];
    return d;
  };
  auto negate = [](std::vector<double> v) {
    for (double& x : v) x = -x;
    return v;
  };

  for (const auto& st : p.statements) {
    for (const auto& pref : st.preferences) {
      const NodeIndex r = pref.node;
      switch (pref.kind) {
        case PreferenceKind::AlternativeComparison: {
          if (!table)
            throw Error(ErrorCode::InvalidArgument,
                        "statement " + st.id + " compares alternatives but no table was given");
          auto a = table->find_alternative(pref.alternatives[0]);
          auto b = table->find_alternative(pref.alternatives[1]);
          if (!a || !b)
            throw Error(ErrorCode::InvalidArgument,
                        "statement " + st.id + " names an alternative missing from the table");
          row_of(diff(choquet_form(h, r, table->row(*a)), choquet_form(h, r, table->row(*b))),
                 -1.0, Comparator::GreaterEqual, st.id);
          break;
        }
        case PreferenceKind::ImportanceGreater:
        case PreferenceKind::ImportanceEqual: {
          auto d = diff(shapley_numerator_form(h, r, pref.criteria[0]),
                        shapley_numerator_form(h, r, pref.criteria[1]));
          if (pref.kind == PreferenceKind::ImportanceGreater)
            row_of(std::move(d), -1.0, Comparator::GreaterEqual, st.id);
          else
            row_of(std::move(d), 0.0, Comparator::Equal, st.id);
          break;
        }
        case PreferenceKind::PositiveInteraction:
          row_of(interaction_numerator_form(h, r, pref.criteria[0], pref.criteria[1]), -1.0,
                 Comparator::GreaterEqual, st.id);
          break;
        case PreferenceKind::NegativeInteraction:
          row_of(negate(interaction_numerator_form(h, r, pref.criteria[0], pref.criteria[1])),
                 -1.0, Comparator::GreaterEqual, st.id);
          break;
        case PreferenceKind::InteractionIntensity:
          row_of(diff(interaction_numerator_form(h, r, pref.criteria[0], pref.criteria[1]),
                      interaction_numerator_form(h, r, pref.criteria[2], pref.criteria[3])),
                 -1.0, Comparator::GreaterEqual, st.id);
          break;
      }
    }
  }
  return c;
}

}  // namespace csmaa

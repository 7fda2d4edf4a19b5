#pragma once

#include <istream>
#include <span>
#include <string>
#include <vector>

#include "csmaa/capacity.hpp"
#include "csmaa/dataset.hpp"
#include "csmaa/hierarchy.hpp"

namespace csmaa {

enum class PreferenceKind {
  AlternativeComparison,  // a preferred to b on node
  ImportanceGreater,      // criteria[0] more important than criteria[1]
  ImportanceEqual,        // criteria[0] as important as criteria[1]
  PositiveInteraction,    // criteria[0], criteria[1]
  NegativeInteraction,    // criteria[0], criteria[1]
  InteractionIntensity,   // pair (criteria[0], criteria[1]) > pair (criteria[2], criteria[3])
};

/// One atomic preference over the sub-criteria of `node` (or over two
/// alternatives evaluated on `node`).
struct Preference {
  PreferenceKind kind;
  NodeIndex node = 0;
  std::vector<NodeIndex> criteria;
  std::vector<std::string> alternatives;
};

/// One line of a statement file. Group statements such as "X and Y are more
/// important than Z" expand into several atomic preferences that share the id.
struct PreferenceStatement {
  std::string id;
  std::string text;
  std::size_t line = 0;
  std::vector<Preference> preferences;
};

struct PreferenceProfile {
  std::string name;
  std::vector<PreferenceStatement> statements;
};

/// Parses the line-oriented statement grammar documented in docs/formats.md.
/// When `alternatives` is non-empty, alternative labels are checked against it.
PreferenceProfile parse_profile(std::istream& in, const Hierarchy& h,
                                std::span<const std::string> alternatives = {},
                                const std::string& source_name = "<prefs>");
PreferenceProfile load_profile(const std::string& path, const Hierarchy& h,
                               std::span<const std::string> alternatives = {});

/// Translates every statement into rows over (m, eps), tagged with the
/// statement id. Importance and interaction statements use the numerators of
/// the Shapley and interaction indices: both share the positive denominator
/// mu(E(g_r)) within one node, so orderings and signs are preserved while the
/// rows stay linear in m.
ConstraintSet compile(const PreferenceProfile& p, const Hierarchy& h, const NormalizedTable* table);

}  // namespace csmaa

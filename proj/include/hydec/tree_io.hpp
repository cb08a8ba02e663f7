#pragma once

#include <string>

#include "hydec/closure.hpp"
#include "hydec/decomposition.hpp"
#include "hydec/htree.hpp"

namespace hydec {

// "(5 6 -> 2)"
std::string edge_to_text(const Dihypergraph& h, EdgeId e);

// Compact single-line JSON in the fixed schema:
//   leaf      {"leaf": "<name>"}
//   interior  {"label": [{"body": [...], "head": ...}, ...],
//              "left": ..., "right": ...}
//   factor    {"factor": {"vertices": [...], "edges": [...]}}
// Key order as listed; node order follows the tree, labels follow edge id
// order. Writers are iterative, so arbitrarily deep trees are fine.
std::string tree_to_json(const Dihypergraph& h, const HTree& t);
std::string tree_to_json(const Dihypergraph& h, const FactorTree& t);

// Indented listing, one node per line.
std::string tree_to_text(const Dihypergraph& h, const HTree& t);
std::string tree_to_text(const Dihypergraph& h, const FactorTree& t);

// Graphviz rendering: interior nodes carry their edge labels, leaves their
// vertex names, parent -> child arcs.
std::string tree_to_dot(const Dihypergraph& h, const HTree& t);
std::string tree_to_dot(const Dihypergraph& h, const FactorTree& t);

// Parses a serialized tree (either kind) and validates it against the
// instance. Malformed JSON or schema violations throw syntax_error; trees
// that are well-formed but wrong yield a failing report.
ValidationReport verify_json_tree(const Dihypergraph& h, const std::string& json_text);

std::string closure_system_to_text(const Dihypergraph& h, const ClosureSystem& f);
std::string closure_system_to_json(const Dihypergraph& h, const ClosureSystem& f);

} // namespace hydec

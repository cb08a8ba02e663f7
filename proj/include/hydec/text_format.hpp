#pragma once

#include <string>
#include <string_view>

#include "hydec/dihypergraph.hpp"

namespace hydec {

// Line-oriented instance format:
//
//   # comment (a token starting with '#' comments out the rest of the line)
//   vertices: 1 2 3 4 5 6 7
//   edge: 1 2 -> 3
//   edge: 5 -> 7
//
// The first significant line must be the single `vertices:` line; names are
// whitespace-free tokens other than `->`. Errors carry 1-based line/column.
Dihypergraph parse_instance(std::string_view text);

// Canonical form: vertices in declaration order, edges in id order, bodies
// ascending. parse_instance(serialize_instance(h)) reproduces h.
std::string serialize_instance(const Dihypergraph& h);

} // namespace hydec

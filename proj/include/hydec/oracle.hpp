#pragma once

#include <optional>
#include <utility>

#include "hydec/closure.hpp"
#include "hydec/connectivity.hpp"

namespace hydec {

// Deliberately simple exponential reference implementations, used by the
// test suites and the `oracle` CLI command. Hard size limits keep them from
// dominating test time.

inline constexpr std::size_t oracle_component_limit = 12;
inline constexpr std::size_t oracle_split_limit = 12;
inline constexpr std::size_t oracle_tree_limit = 8;
inline constexpr std::size_t oracle_closure_limit = 12;

// Components of the graph joining vertices that share an edge body; plain
// BFS, no union-find.
Partition oracle_body_components(const Dihypergraph& h);

// Scans all nontrivial bipartitions in a fixed order, first split wins.
std::optional<std::pair<std::vector<VertexId>, std::vector<VertexId>>>
oracle_has_split(const Dihypergraph& h);

// Recursion over all splits of all vertex subsets, memoized by subset mask.
bool oracle_is_hdecomposable(const Dihypergraph& h);

// Filters the full powerset through is_closed.
ClosureSystem oracle_closed_sets(const Dihypergraph& h);

} // namespace hydec

#pragma once

#include <optional>
#include <string>
#include <utility>

#include "hydec/htree.hpp"

namespace hydec {

// True iff every edge body lies entirely within one side of the bipartition.
bool is_split(const Dihypergraph& h, std::span<const VertexId> u1, std::span<const VertexId> u2);

// Canonical split (block containing the smallest vertex, complement), or
// nullopt when h is body-connected. Requires at least two vertices.
std::optional<std::pair<std::vector<VertexId>, std::vector<VertexId>>>
find_split(const Dihypergraph& h);

// Recursive split decomposition; nullopt when some subproblem is
// body-connected with more than one vertex. Deterministic: the peeled
// component is always the one containing the smallest vertex and becomes
// the left child.
std::optional<HTree> build_tree(const Dihypergraph& h);

// Relaxation of build_tree that never fails: a body-connected subproblem
// with more than one vertex becomes a factor leaf carrying its edges.
FactorTree build_factor_tree(const Dihypergraph& h);

struct ValidationReport {
    bool ok = true;
    int condition = 0;  // 1..4 on failure (definition conditions i..iv)
    std::string detail; // witnessing node / edge / vertex
};

// Checks the four tree conditions: leaf labels are vertices, interior labels
// are edge sets, each labelled edge separates body from head across the two
// children, and the labels partition U ∪ E exactly. Reports the first
// violation found, in condition order (iv)'s vertex part is checked before
// (iii) so that leaf-set membership is well defined.
ValidationReport validate_htree(const Dihypergraph& h, const HTree& t);

// Same conditions over a factor tree, plus: factor leaves are body-connected,
// leaf grounds are disjoint and cover U, and interior labels together with
// factor edge sets partition E.
ValidationReport validate_factor_tree(const Dihypergraph& h, const FactorTree& t);

struct RestrictedTree {
    Dihypergraph graph; // induced(h, subset)
    HTree tree;         // valid tree of `graph`, edge ids into `graph`
};

// Restriction of a valid tree of h to induced(h, subset): interior nodes
// keep the surviving part of their label, nodes with one relevant child are
// contracted away.
RestrictedTree restrict_htree(const Dihypergraph& h, const HTree& t,
                              std::span<const VertexId> subset);

// Inverse of the decomposition: vertices from the leaves, edges from the
// labels (and factor leaves). Throws inconsistent_tree when leaves repeat or
// labels overlap.
Dihypergraph reconstruct(const Dihypergraph& h, const HTree& t);
Dihypergraph reconstruct(const Dihypergraph& h, const FactorTree& t);

} // namespace hydec

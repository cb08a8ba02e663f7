#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "hydec/dihypergraph.hpp"

namespace hydec {

using NodeId = std::uint32_t;
inline constexpr NodeId no_node = std::numeric_limits<NodeId>::max();

// Full rooted binary tree over a Dihypergraph: leaves carry one vertex each,
// interior nodes carry a (possibly empty) set of edge ids. Labels of all
// nodes together partition U ∪ E, and every labelled edge has its body under
// one child and its head under the other.
//
// Nodes are stored in preorder (parent before children, left subtree before
// right), so the root is node 0 and plain index iteration is the stable
// traversal order.
struct HTree {
    struct Node {
        bool is_leaf = false;
        VertexId leaf = 0;          // leaf payload
        std::vector<EdgeId> label;  // interior payload, ascending edge ids
        NodeId left = no_node;
        NodeId right = no_node;
    };

    std::vector<Node> nodes;

    NodeId root() const { return 0; }
    const Node& node(NodeId id) const { return nodes[id]; }
    std::size_t node_count() const { return nodes.size(); }
};

// Variant used by the relaxed decomposition: a leaf is either a single
// vertex or a body-connected subhypergraph (ground vertices + its edges,
// both by id into the decomposed Dihypergraph).
struct FactorTree {
    enum class Kind : std::uint8_t { leaf, factor, internal };

    struct Node {
        Kind kind = Kind::leaf;
        VertexId leaf = 0;                      // kind == leaf
        std::vector<VertexId> factor_vertices;  // kind == factor, ascending
        std::vector<EdgeId> factor_edges;       // kind == factor, ascending
        std::vector<EdgeId> label;              // kind == internal, ascending
        NodeId left = no_node;
        NodeId right = no_node;
    };

    std::vector<Node> nodes; // preorder, root first

    NodeId root() const { return 0; }
    const Node& node(NodeId id) const { return nodes[id]; }
    std::size_t node_count() const { return nodes.size(); }
};

// Ground vertices of each node's subtree, ascending (indexed by NodeId).
std::vector<std::vector<VertexId>> subtree_grounds(const HTree& t);
std::vector<std::vector<VertexId>> subtree_grounds(const FactorTree& t);

} // namespace hydec

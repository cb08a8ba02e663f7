#pragma once

#include <optional>
#include <vector>

#include "hydec/dihypergraph.hpp"

namespace hydec {

// Partition of the vertex set into maximal body-connected blocks.
// Canonical form: blocks ordered by their smallest vertex, block members
// ascending.
struct Partition {
    std::vector<std::vector<VertexId>> blocks;

    bool operator==(const Partition& o) const { return blocks == o.blocks; }
};

// Two vertices are body-connected when they are linked by a chain of edge
// bodies sharing vertices pairwise; unit edges never merge anything.
Partition body_connected_components(const Dihypergraph& h);

bool is_body_connected(const Dihypergraph& h);

// Alternating witness v0, e0, v1, ..., e_{k-1}, v_k with distinct vertices
// and edges and {v_i, v_{i+1}} inside body(e_i).
struct BodyPath {
    std::vector<VertexId> vertices;
    std::vector<EdgeId> edges;
};

// Empty path when from == to; nullopt when the endpoints are not
// body-connected.
std::optional<BodyPath> body_path(const Dihypergraph& h, VertexId from, VertexId to);

} // namespace hydec

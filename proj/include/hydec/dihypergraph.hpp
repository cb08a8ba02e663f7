#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hydec/errors.hpp"

namespace hydec {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

// A directed hyperedge: a nonempty body driving a single head vertex,
// with the head never part of the body.
struct Edge {
    std::vector<VertexId> body; // sorted ascending, no duplicates
    VertexId head = 0;

    bool is_unit() const { return body.size() == 1; }
    bool operator==(const Edge& o) const { return head == o.head && body == o.body; }
};

// Immutable directed hypergraph over an interned vertex universe.
// Vertex names are arbitrary tokens; each is assigned a dense index in
// declaration order, stable for the lifetime of the object. Edges are
// deduplicated at construction and keep their first-occurrence order.
class Dihypergraph {
public:
    // Name-based construction. Duplicate vertex names collapse; duplicate
    // edge specs collapse to one edge.
    static Dihypergraph from_names(
        const std::vector<std::string>& vertex_names,
        const std::vector<std::pair<std::vector<std::string>, std::string>>& edge_specs);

    // Index-based construction; `names[i]` names vertex i. Bodies may be
    // unsorted and may repeat vertices (set semantics). Throws on empty
    // vertex set, empty bodies, head-in-body, or out-of-range ids.
    Dihypergraph(std::vector<std::string> names, std::vector<Edge> edges);

    std::size_t vertex_count() const { return names_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_[e]; }
    const std::string& name(VertexId v) const { return names_[v]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<VertexId> find_vertex(std::string_view name) const;

    // |U| + sum of body sizes + 1
    std::size_t size() const;

    // Edges whose body contains v / whose head is v.
    std::span<const EdgeId> body_edges(VertexId v) const;
    std::span<const EdgeId> head_edges(VertexId v) const;

    // Semantic equality: same vertex name set and same edge set (compared
    // through names), regardless of declaration or edge order.
    bool operator==(const Dihypergraph& other) const;

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, VertexId> index_;
    std::vector<Edge> edges_;
    // CSR incidence
    std::vector<std::uint32_t> body_offsets_, head_offsets_;
    std::vector<EdgeId> body_incidence_, head_incidence_;

    void build_incidence();
};

// Sorted ids of the edges contained in `subset` (body and head inside).
std::vector<EdgeId> edges_within(const Dihypergraph& h, std::span<const VertexId> subset);

// Subhypergraph induced by a nonempty subset of the vertices. Vertices keep
// their names and relative order; surviving edges keep their relative order.
Dihypergraph induced(const Dihypergraph& h, std::span<const VertexId> subset);

// Edges crossing a bipartition (contained in neither side). (u1, u2) must
// partition the vertex set with both sides nonempty.
std::vector<EdgeId> bipartite_part(const Dihypergraph& h,
                                   std::span<const VertexId> u1,
                                   std::span<const VertexId> u2);

// Normalizes a vertex-id list: sorted, deduplicated, all ids in range.
std::vector<VertexId> normalize_vertex_set(const Dihypergraph& h, std::span<const VertexId> vs);

} // namespace hydec

#include "hydec/connectivity.hpp"

#include <algorithm>
#include <deque>

#include "hydec/union_find.hpp"

namespace hydec {

Partition body_connected_components(const Dihypergraph& h) {
    const std::size_t n = h.vertex_count();
    UnionFind uf(n);
    for (const Edge& e : h.edges()) {
        if (e.body.size() < 2) continue;
        for (std::size_t i = 1; i < e.body.size(); ++i)
            uf.unite(e.body[0], e.body[i]);
    }

    // first pass fixes block order by smallest member
    std::vector<std::uint32_t> slot(n, UINT32_MAX);
    Partition p;
    for (VertexId v = 0; v < n; ++v) {
        std::uint32_t root = uf.find(v);
        if (slot[root] == UINT32_MAX) {
            slot[root] = static_cast<std::uint32_t>(p.blocks.size());
            p.blocks.emplace_back();
        }
        p.blocks[slot[root]].push_back(v);
    }
    return p;
}

bool is_body_connected(const Dihypergraph& h) {
    return body_connected_components(h).blocks.size() == 1;
}

std::optional<BodyPath> body_path(const Dihypergraph& h, VertexId from, VertexId to) {
    const std::size_t n = h.vertex_count();
    if (from >= n || to >= n)
        throw Error(errc::unknown_vertex, "body_path endpoint out of range");
    if (from == to) return BodyPath{};

    // BFS over the body-sharing relation; each edge expands once.
    std::vector<char> vertex_seen(n, 0), edge_seen(h.edge_count(), 0);
    std::vector<VertexId> parent_vertex(n, 0);
    std::vector<EdgeId> parent_edge(n, 0);
    std::deque<VertexId> queue;
    vertex_seen[from] = 1;
    queue.push_back(from);
    bool found = false;
    while (!queue.empty() && !found) {
        VertexId v = queue.front();
        queue.pop_front();
        for (EdgeId id : h.body_edges(v)) {
            if (edge_seen[id]) continue;
            edge_seen[id] = 1;
            const Edge& e = h.edge(id);
            if (e.body.size() < 2) continue;
            for (VertexId u : e.body) {
                if (vertex_seen[u]) continue;
                vertex_seen[u] = 1;
                parent_vertex[u] = v;
                parent_edge[u] = id;
                if (u == to) { found = true; break; }
                queue.push_back(u);
            }
            if (found) break;
        }
    }
    if (!found) return std::nullopt;

    BodyPath path;
    for (VertexId v = to; v != from; v = parent_vertex[v]) {
        path.vertices.push_back(v);
        path.edges.push_back(parent_edge[v]);
    }
    path.vertices.push_back(from);
    std::reverse(path.vertices.begin(), path.vertices.end());
    std::reverse(path.edges.begin(), path.edges.end());
    return path;
}

} // namespace hydec

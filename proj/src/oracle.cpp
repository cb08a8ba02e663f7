#include "hydec/oracle.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <unordered_map>

namespace hydec {

namespace {

void check_limit(const Dihypergraph& h, std::size_t limit, const char* what) {
    if (h.vertex_count() > limit)
        throw Error(errc::instance_too_large,
                    std::string(what) + " oracle is limited to " + std::to_string(limit) +
                        " vertices");
}

std::vector<VertexId> mask_to_vertices(std::uint64_t mask) {
    std::vector<VertexId> out;
    while (mask) {
        out.push_back(static_cast<VertexId>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

} // namespace

Partition oracle_body_components(const Dihypergraph& h) {
    check_limit(h, oracle_component_limit, "component");
    const std::size_t n = h.vertex_count();
    std::vector<std::vector<VertexId>> adj(n);
    for (const Edge& e : h.edges()) {
        for (std::size_t i = 0; i < e.body.size(); ++i)
            for (std::size_t j = i + 1; j < e.body.size(); ++j) {
                adj[e.body[i]].push_back(e.body[j]);
                adj[e.body[j]].push_back(e.body[i]);
            }
    }
    std::vector<char> seen(n, 0);
    Partition p;
    for (VertexId v = 0; v < n; ++v) {
        if (seen[v]) continue;
        std::vector<VertexId> block;
        std::deque<VertexId> queue{v};
        seen[v] = 1;
        while (!queue.empty()) {
            VertexId u = queue.front();
            queue.pop_front();
            block.push_back(u);
            for (VertexId w : adj[u]) {
                if (!seen[w]) {
                    seen[w] = 1;
                    queue.push_back(w);
                }
            }
        }
        std::sort(block.begin(), block.end());
        p.blocks.push_back(std::move(block));
    }
    return p;
}

std::optional<std::pair<std::vector<VertexId>, std::vector<VertexId>>>
oracle_has_split(const Dihypergraph& h) {
    const std::size_t n = h.vertex_count();
    if (n < 2)
        throw Error(errc::too_few_vertices, "a split needs at least two vertices");
    check_limit(h, oracle_split_limit, "split");

    std::vector<std::uint64_t> bodies;
    bodies.reserve(h.edge_count());
    for (const Edge& e : h.edges()) bodies.push_back(vertex_mask(e.body));

    const std::uint64_t all = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    // vertex 0 stays on the u1 side; the mask enumerates u2 candidates
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << (n - 1)); ++m) {
        std::uint64_t u2 = m << 1;
        std::uint64_t u1 = all & ~u2;
        bool split = true;
        for (std::uint64_t body : bodies) {
            if ((body & ~u1) != 0 && (body & ~u2) != 0) { split = false; break; }
        }
        if (split) return std::make_pair(mask_to_vertices(u1), mask_to_vertices(u2));
    }
    return std::nullopt;
}

bool oracle_is_hdecomposable(const Dihypergraph& h) {
    check_limit(h, oracle_tree_limit, "decomposability");
    const std::size_t n = h.vertex_count();
    std::vector<std::uint64_t> bodies, edges_full;
    for (const Edge& e : h.edges()) {
        bodies.push_back(vertex_mask(e.body));
        edges_full.push_back(bodies.back() | (std::uint64_t{1} << e.head));
    }

    std::unordered_map<std::uint64_t, bool> memo;
    auto rec = [&](auto&& self, std::uint64_t verts) -> bool {
        if (std::popcount(verts) == 1) return true;
        auto it = memo.find(verts);
        if (it != memo.end()) return it->second;

        bool ok = false;
        std::uint64_t low = verts & (~verts + 1);
        std::uint64_t rest = verts & ~low;
        // u1 always contains the lowest vertex; u2 runs over nonempty subsets
        for (std::uint64_t u2 = rest; u2 != 0 && !ok; u2 = (u2 - 1) & rest) {
            std::uint64_t u1 = verts & ~u2;
            bool split = true;
            for (std::size_t i = 0; i < bodies.size(); ++i) {
                if ((edges_full[i] & ~verts) != 0) continue; // edge not in this subgraph
                if ((bodies[i] & ~u1) != 0 && (bodies[i] & ~u2) != 0) { split = false; break; }
            }
            if (split && self(self, u1) && self(self, u2)) ok = true;
        }
        memo.emplace(verts, ok);
        return ok;
    };
    const std::uint64_t all = (std::uint64_t{1} << n) - 1;
    return rec(rec, all);
}

ClosureSystem oracle_closed_sets(const Dihypergraph& h) {
    check_limit(h, oracle_closure_limit, "closed-set");
    const std::size_t n = h.vertex_count();
    std::vector<std::uint64_t> bodies, heads;
    for (const Edge& e : h.edges()) {
        bodies.push_back(vertex_mask(e.body));
        heads.push_back(std::uint64_t{1} << e.head);
    }
    std::vector<std::uint64_t> closed;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        bool ok = true;
        for (std::size_t i = 0; i < bodies.size(); ++i) {
            if ((bodies[i] & s) == bodies[i] && (s & heads[i]) == 0) { ok = false; break; }
        }
        if (ok) closed.push_back(s);
    }
    std::vector<VertexId> ground(n);
    for (std::size_t i = 0; i < n; ++i) ground[i] = static_cast<VertexId>(i);
    return ClosureSystem(std::move(ground), std::move(closed));
}

} // namespace hydec

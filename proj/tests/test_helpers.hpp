#pragma once

#include <random>
#include <string>
#include <vector>

#include "hydec/decomposition.hpp"
#include "hydec/dihypergraph.hpp"

namespace hydec::testing {

// Instance over names "1".."n"; edges in 1-based vertex numbers, so vertex
// number k interns to id k-1.
inline Dihypergraph make(std::size_t n,
                         const std::vector<std::pair<std::vector<int>, int>>& edges = {}) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) names.push_back(std::to_string(i));
    std::vector<Edge> es;
    es.reserve(edges.size());
    for (const auto& [body, head] : edges) {
        Edge e;
        for (int b : body) e.body.push_back(static_cast<VertexId>(b - 1));
        e.head = static_cast<VertexId>(head - 1);
        es.push_back(std::move(e));
    }
    return Dihypergraph(std::move(names), std::move(es));
}

inline std::vector<VertexId> ids(const std::vector<int>& one_based) {
    std::vector<VertexId> out;
    out.reserve(one_based.size());
    for (int v : one_based) out.push_back(static_cast<VertexId>(v - 1));
    return out;
}

inline Dihypergraph example1() {
    return make(7, {{{1, 2}, 3}, {{3}, 1}, {{5, 6}, 2}, {{2, 3}, 7}, {{4, 5}, 6}, {{5}, 7}});
}

inline Dihypergraph triangle() { return make(3, {{{1, 2}, 3}, {{1, 3}, 2}}); }

inline Dihypergraph chain8() {
    return make(8, {{{1, 2}, 3}, {{2, 3}, 4}, {{3, 4}, 5}, {{5, 6}, 7}, {{6, 7}, 8}});
}

// closed sets {}, {1}, {3}, {1 2}, {1 2 3}: the pentagon lattice
inline Dihypergraph pentagon() { return make(3, {{{2}, 1}, {{1, 3}, 2}}); }

// Two k-vertex sides, no internal edges, and every two-element body of one
// side driving every vertex of the other. The whole family has k*k + 2k + 2
// closed sets while each side alone has 2^k.
inline Dihypergraph exp_family(int k) {
    std::vector<std::pair<std::vector<int>, int>> edges;
    for (int v = 1; v <= k; ++v)
        for (int w = v + 1; w <= k; ++w)
            for (int u = k + 1; u <= 2 * k; ++u) edges.push_back({{v, w}, u});
    for (int v = k + 1; v <= 2 * k; ++v)
        for (int w = v + 1; w <= 2 * k; ++w)
            for (int u = 1; u <= k; ++u) edges.push_back({{v, w}, u});
    return make(static_cast<std::size_t>(2 * k), edges);
}

struct RandomOptions {
    std::size_t min_vertices = 2;
    std::size_t max_vertices = 8;
    std::size_t max_edges = 6;
    std::size_t max_body = 3;
};

inline Dihypergraph random_instance(std::mt19937& rng, const RandomOptions& opt = {}) {
    std::uniform_int_distribution<std::size_t> nd(opt.min_vertices, opt.max_vertices);
    const std::size_t n = nd(rng);
    std::uniform_int_distribution<std::size_t> md(0, opt.max_edges);
    const std::size_t m = n == 1 ? 0 : md(rng); // an edge needs two distinct vertices

    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back(std::to_string(i));
    std::vector<Edge> edges;
    std::uniform_int_distribution<VertexId> vd(0, static_cast<VertexId>(n - 1));
    for (std::size_t i = 0; i < m; ++i) {
        std::uniform_int_distribution<std::size_t> bd(1, std::min(opt.max_body, n - 1));
        const std::size_t bsize = bd(rng);
        Edge e;
        e.head = vd(rng);
        while (e.body.size() < bsize) {
            VertexId v = vd(rng);
            if (v == e.head) continue;
            if (std::find(e.body.begin(), e.body.end(), v) == e.body.end()) e.body.push_back(v);
        }
        edges.push_back(std::move(e));
    }
    return Dihypergraph(std::move(names), std::move(edges));
}

inline Dihypergraph random_decomposable(std::mt19937& rng, const RandomOptions& opt = {}) {
    for (;;) {
        Dihypergraph h = random_instance(rng, opt);
        if (h.vertex_count() >= 2 && build_tree(h)) return h;
    }
}

inline std::string fixture_path(const std::string& name) {
    return std::string(HYDEC_FIXTURE_DIR) + "/" + name;
}

} // namespace hydec::testing

#include <doctest.h>

#include <algorithm>
#include <random>

#include "hydec/connectivity.hpp"
#include "hydec/oracle.hpp"
#include "test_helpers.hpp"

using namespace hydec;
using namespace hydec::testing;

namespace {

Partition blocks_of(const std::vector<std::vector<int>>& one_based) {
    Partition p;
    for (const auto& b : one_based) p.blocks.push_back(ids(b));
    return p;
}

} // namespace

TEST_CASE("body-connected components merge bodies only") {
    CHECK(body_connected_components(example1()) == blocks_of({{1, 2, 3}, {4, 5, 6}, {7}}));
    CHECK(body_connected_components(triangle()) == blocks_of({{1, 2, 3}}));
    // unit edges never merge anything
    CHECK(body_connected_components(make(4, {{{1}, 2}, {{2}, 3}})) ==
          blocks_of({{1}, {2}, {3}, {4}}));
}

TEST_CASE("body-connectivity predicate") {
    CHECK(is_body_connected(triangle()));
    CHECK(is_body_connected(make(1)));
    CHECK(!is_body_connected(example1()));
}

TEST_CASE("body paths are alternating witnesses") {
    Dihypergraph h = example1();

    auto p = body_path(h, 3, 5); // vertices 4 and 6
    REQUIRE(p);
    CHECK(p->vertices == std::vector<VertexId>{3, 4, 5});
    CHECK(p->edges == std::vector<EdgeId>{4, 2}); // (4 5 -> 6), (5 6 -> 2)

    CHECK(!body_path(h, 0, 4)); // vertices 1 and 5 sit in different blocks

    auto empty = body_path(h, 2, 2);
    REQUIRE(empty);
    CHECK(empty->vertices.empty());
    CHECK(empty->edges.empty());

    CHECK_THROWS_AS(body_path(h, 0, 99), Error);
}

TEST_CASE("body paths really alternate through shared bodies") {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        Dihypergraph h = random_instance(rng, {2, 9, 8, 4});
        Partition p = body_connected_components(h);
        const std::size_t n = h.vertex_count();
        std::uniform_int_distribution<VertexId> vd(0, static_cast<VertexId>(n - 1));
        VertexId a = vd(rng), b = vd(rng);
        auto path = body_path(h, a, b);

        bool same_block = false;
        for (const auto& blk : p.blocks)
            if (std::binary_search(blk.begin(), blk.end(), a) &&
                std::binary_search(blk.begin(), blk.end(), b))
                same_block = true;
        REQUIRE(path.has_value() == same_block);
        if (!path || a == b) continue;

        REQUIRE(path->vertices.size() == path->edges.size() + 1);
        CHECK(path->vertices.front() == a);
        CHECK(path->vertices.back() == b);
        auto sorted_v = path->vertices;
        std::sort(sorted_v.begin(), sorted_v.end());
        CHECK(std::adjacent_find(sorted_v.begin(), sorted_v.end()) == sorted_v.end());
        auto sorted_e = path->edges;
        std::sort(sorted_e.begin(), sorted_e.end());
        CHECK(std::adjacent_find(sorted_e.begin(), sorted_e.end()) == sorted_e.end());
        for (std::size_t i = 0; i < path->edges.size(); ++i) {
            const auto& body = h.edge(path->edges[i]).body;
            CHECK(std::binary_search(body.begin(), body.end(), path->vertices[i]));
            CHECK(std::binary_search(body.begin(), body.end(), path->vertices[i + 1]));
        }
    }
}

TEST_CASE("components match the brute-force reference on small instances") {
    std::mt19937 rng(2024);
    for (int iter = 0; iter < 300; ++iter) {
        Dihypergraph h = random_instance(rng, {1, 10, 8, 4});
        CHECK(body_connected_components(h) == oracle_body_components(h));
    }
}

TEST_CASE("components are insensitive to edge order and to unit edges") {
    std::mt19937 rng(5150);
    for (int iter = 0; iter < 200; ++iter) {
        Dihypergraph h = random_instance(rng, {2, 9, 8, 4});
        Partition base = body_connected_components(h);

        std::vector<Edge> shuffled = h.edges();
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        Dihypergraph permuted(h.names(), shuffled);
        CHECK(body_connected_components(permuted) == base);

        std::vector<Edge> no_units;
        for (const Edge& e : h.edges())
            if (!e.is_unit()) no_units.push_back(e);
        Dihypergraph stripped(h.names(), no_units);
        CHECK(body_connected_components(stripped) == base);

        // bodies never straddle a block
        for (const auto& block : base.blocks) {
            for (const Edge& e : h.edges()) {
                bool any = false, all = true;
                for (VertexId v : e.body) {
                    bool in = std::binary_search(block.begin(), block.end(), v);
                    any = any || in;
                    all = all && in;
                }
                CHECK((!any || all));
            }
        }
    }
}

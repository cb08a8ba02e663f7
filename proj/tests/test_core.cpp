#include <doctest.h>

#include <random>

#include "hydec/dihypergraph.hpp"
#include "test_helpers.hpp"

using namespace hydec;
using namespace hydec::testing;

TEST_CASE("construction interns vertices and deduplicates edges") {
    Dihypergraph h = example1();
    CHECK(h.vertex_count() == 7);
    CHECK(h.edge_count() == 6);
    CHECK(h.name(0) == "1");
    CHECK(h.find_vertex("7") == VertexId{6});
    CHECK(!h.find_vertex("8"));

    Dihypergraph single = make(1);
    CHECK(single.vertex_count() == 1);
    CHECK(single.edge_count() == 0);

    Dihypergraph dup = make(3, {{{1, 3}, 2}, {{3, 1}, 2}});
    CHECK(dup.edge_count() == 1);

    Dihypergraph dup_names = Dihypergraph::from_names({"a", "b", "a"}, {{{"a"}, "b"}});
    CHECK(dup_names.vertex_count() == 2);
}

TEST_CASE("construction rejects malformed input") {
    CHECK_THROWS_AS(make(0), Error);
    CHECK_THROWS_AS(make(3, {{{1, 2}, 1}}), Error); // head in body
    CHECK_THROWS_AS(make(3, {{{}, 1}}), Error);     // empty body

    try {
        Dihypergraph::from_names({"a"}, {{{"a"}, "b"}});
        FAIL("expected unknown_vertex");
    } catch (const Error& e) {
        CHECK(e.code() == errc::unknown_vertex);
    }
    try {
        make(3, {{{1, 2}, 1}});
        FAIL("expected head_in_body");
    } catch (const Error& e) {
        CHECK(e.code() == errc::head_in_body);
    }
    try {
        Dihypergraph::from_names({}, {});
        FAIL("expected empty_vertex_set");
    } catch (const Error& e) {
        CHECK(e.code() == errc::empty_vertex_set);
    }
}

TEST_CASE("size counts vertices, body entries, and one") {
    CHECK(example1().size() == 18);
    CHECK(make(1).size() == 2);
    CHECK(make(3, {{{1, 2}, 3}}).size() == 6);
}

TEST_CASE("induced keeps exactly the contained edges") {
    Dihypergraph h = example1();

    Dihypergraph left = induced(h, ids({1, 2, 3}));
    CHECK(left == make(3, {{{1, 2}, 3}, {{3}, 1}}));

    Dihypergraph right = induced(h, ids({4, 5, 6, 7}));
    CHECK(right.vertex_count() == 4);
    CHECK(right.edge_count() == 2);
    CHECK(right == Dihypergraph::from_names({"4", "5", "6", "7"},
                                            {{{"4", "5"}, "6"}, {{"5"}, "7"}}));

    std::vector<VertexId> all = ids({1, 2, 3, 4, 5, 6, 7});
    CHECK(induced(h, all) == h);

    CHECK_THROWS_AS(induced(h, std::vector<VertexId>{}), Error);
    CHECK_THROWS_AS(induced(h, std::vector<VertexId>{42}), Error);
}

TEST_CASE("bipartite part collects the crossing edges") {
    Dihypergraph h = example1();
    auto crossing = bipartite_part(h, ids({1, 2, 3}), ids({4, 5, 6, 7}));
    CHECK(crossing == std::vector<EdgeId>{2, 3}); // (5 6 -> 2) and (2 3 -> 7)

    Dihypergraph edgeless = make(4);
    CHECK(bipartite_part(edgeless, ids({1, 2}), ids({3, 4})).empty());

    Dihypergraph one = make(3, {{{1, 2}, 3}});
    CHECK(bipartite_part(one, ids({1, 2}), ids({3})) == std::vector<EdgeId>{0});

    CHECK_THROWS_AS(bipartite_part(h, ids({1, 2}), ids({2, 3, 4, 5, 6, 7})), Error);
    CHECK_THROWS_AS(bipartite_part(h, ids({1, 2}), ids({4, 5, 6, 7})), Error);
    CHECK_THROWS_AS(bipartite_part(h, std::vector<VertexId>{}, ids({1, 2, 3, 4, 5, 6, 7})),
                    Error);
}

TEST_CASE("edge partition across a bipartition is exact") {
    std::mt19937 rng(1234);
    for (int iter = 0; iter < 200; ++iter) {
        Dihypergraph h = random_instance(rng, {2, 8, 8, 4});
        const std::size_t n = h.vertex_count();
        std::uniform_int_distribution<std::uint32_t> md(1, (1u << n) - 2);
        std::uint32_t mask = md(rng);
        std::vector<VertexId> u1, u2;
        for (VertexId v = 0; v < n; ++v) (mask >> v & 1 ? u1 : u2).push_back(v);

        auto e1 = edges_within(h, u1);
        auto e2 = edges_within(h, u2);
        auto cross = bipartite_part(h, u1, u2);
        std::vector<EdgeId> all;
        all.insert(all.end(), e1.begin(), e1.end());
        all.insert(all.end(), e2.begin(), e2.end());
        all.insert(all.end(), cross.begin(), cross.end());
        std::sort(all.begin(), all.end());
        REQUIRE(all.size() == h.edge_count());
        for (EdgeId e = 0; e < h.edge_count(); ++e) REQUIRE(all[e] == e);
    }
}

TEST_CASE("induced composes and size is tight exactly for edgeless instances") {
    std::mt19937 rng(99);
    for (int iter = 0; iter < 200; ++iter) {
        Dihypergraph h = random_instance(rng, {2, 8, 8, 4});
        const std::size_t n = h.vertex_count();

        CHECK(h.size() >= n + 1);
        CHECK((h.size() == n + 1) == (h.edge_count() == 0));

        std::uniform_int_distribution<std::uint32_t> md(1, (1u << n) - 1);
        std::uint32_t a_mask = md(rng);
        std::uint32_t b_mask = a_mask & md(rng);
        if (b_mask == 0) b_mask = a_mask & (~a_mask + 1);
        std::vector<VertexId> a, b;
        for (VertexId v = 0; v < n; ++v) {
            if (a_mask >> v & 1) a.push_back(v);
            if (b_mask >> v & 1) b.push_back(v);
        }
        Dihypergraph ha = induced(h, a);
        // map b into ha's ids through the names
        std::vector<VertexId> b_in_a;
        for (VertexId v : b) b_in_a.push_back(*ha.find_vertex(h.name(v)));
        CHECK(induced(ha, b_in_a) == induced(h, b));
    }
}

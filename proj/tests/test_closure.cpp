#include <doctest.h>

#include <random>

#include "hydec/closure.hpp"
#include "hydec/oracle.hpp"
#include "test_helpers.hpp"

using namespace hydec;
using namespace hydec::testing;

namespace {

std::uint64_t m(const std::vector<int>& one_based) { return vertex_mask(ids(one_based)); }

std::vector<std::uint64_t> masks(const std::vector<std::vector<int>>& sets) {
    std::vector<std::uint64_t> out;
    for (const auto& s : sets) out.push_back(m(s));
    std::sort(out.begin(), out.end(), canonical_set_less);
    return out;
}

} // namespace

TEST_CASE("forward chaining reaches the least fixed point") {
    Dihypergraph h = example1();
    CHECK(forward_chain(h, ids({5, 6})) == ids({2, 5, 6, 7}));
    CHECK(forward_chain(h, std::vector<VertexId>{}) == std::vector<VertexId>{});
    CHECK(forward_chain(h, ids({1, 2, 3, 4, 5, 6, 7})) == ids({1, 2, 3, 4, 5, 6, 7}));

    Dihypergraph g = pentagon();
    CHECK(forward_chain(g, ids({2})) == ids({1, 2}));

    CHECK_THROWS_AS(forward_chain(h, std::vector<VertexId>{42}), Error);
}

TEST_CASE("closedness predicate") {
    Dihypergraph g = pentagon();
    CHECK(!is_closed(g, ids({1, 3}))); // (1 3 -> 2) fires
    CHECK(is_closed(g, ids({1, 2, 3})));
    CHECK(is_closed(example1(), std::vector<VertexId>{}));
}

TEST_CASE("closed-set enumeration matches the expected families") {
    CHECK(enumerate_closed_sets(pentagon()).sets() ==
          masks({{}, {1}, {3}, {1, 2}, {1, 2, 3}}));
    CHECK(enumerate_closed_sets(make(2)).sets() == masks({{}, {1}, {2}, {1, 2}}));
    CHECK(enumerate_closed_sets(make(2, {{{1}, 2}})).sets() == masks({{}, {2}, {1, 2}}));

    CHECK_THROWS_AS(enumerate_closed_sets(make(4), 3), Error);
    CHECK_THROWS_AS(enumerate_closed_sets(make(25)), Error);
    CHECK_THROWS_AS(enumerate_closed_sets(make(4), 100), Error);
}

TEST_CASE("trace intersects every closed set with the sub-ground") {
    ClosureSystem f = enumerate_closed_sets(pentagon());
    CHECK(trace(f, ids({1, 3})).sets() == masks({{}, {1}, {3}, {1, 3}}));
    CHECK(trace(f, ids({2})).sets() == masks({{}, {2}}));
    CHECK(trace(f, f.ground()) == f);
    CHECK_THROWS_AS(trace(f, std::vector<VertexId>{12}), Error);
}

TEST_CASE("product takes pairwise unions over disjoint grounds") {
    Dihypergraph g = pentagon();
    ClosureSystem f1 = closed_sets_within(g, ids({1, 3}));
    ClosureSystem f2 = closed_sets_within(g, ids({2}));
    ClosureSystem p = product(f1, f2);
    CHECK(p.sets() == masks({{}, {1}, {3}, {1, 3}, {2}, {1, 2}, {2, 3}, {1, 2, 3}}));
    CHECK(p.count() == f1.count() * f2.count());

    CHECK_THROWS_AS(product(f1, f1), Error);
}

TEST_CASE("meet and join in a family") {
    ClosureSystem f = enumerate_closed_sets(pentagon());
    CHECK(meet(f, m({1}), m({1, 2})) == m({1}));
    CHECK(join(f, m({1}), m({1, 2})) == m({1, 2}));
    CHECK(join(f, m({1}), m({3})) == m({1, 2, 3}));
    CHECK(meet(f, m({1}), m({1})) == m({1}));
    CHECK(join(f, m({1}), m({1})) == m({1}));
    CHECK_THROWS_AS(meet(f, m({2}), m({1})), Error); // {2} is not closed here
}

TEST_CASE("the reference family is a meet-sublattice but not a sublattice of the product") {
    Dihypergraph g = pentagon();
    ClosureSystem f = enumerate_closed_sets(g);
    ClosureSystem p = product(closed_sets_within(g, ids({1, 3})), closed_sets_within(g, ids({2})));

    CHECK(is_meet_sublattice(f, p).holds);

    auto sub = is_sublattice(f, p);
    CHECK(!sub.holds);
    CHECK(sub.witness_a == m({1}));
    CHECK(sub.witness_b == m({3}));
    CHECK(sub.ambient_value == m({1, 3}));
    CHECK(join(p, m({1}), m({3})) == m({1, 3}));
    CHECK(join(f, m({1}), m({3})) == m({1, 2, 3}));

    CHECK(is_meet_sublattice(f, f).holds);
    CHECK(is_sublattice(f, f).holds);
    ClosureSystem chain({0, 1, 2}, {0, m({1, 2, 3})});
    CHECK(is_sublattice(chain, f).holds);
}

TEST_CASE("split-theorem checks on the known instances") {
    SUBCASE("the seven-vertex instance") {
        auto rep = check_split_theorem(example1(), ids({1, 2, 3}), ids({4, 5, 6, 7}));
        CHECK(rep.item_i == TheoremItem::holds);
        CHECK(rep.item_ii == TheoremItem::not_applicable);  // two crossing edges
        CHECK(rep.item_iii == TheoremItem::not_applicable); // one body on each side
        CHECK(rep.item_iv == TheoremItem::not_applicable);
        CHECK(!rep.any_violation());
    }
    SUBCASE("an edgeless instance: every item holds") {
        auto rep = check_split_theorem(make(4), ids({1, 2}), ids({3, 4}));
        CHECK(rep.item_i == TheoremItem::holds);
        CHECK(rep.item_ii == TheoremItem::holds);
        CHECK(rep.item_iii == TheoremItem::holds);
        CHECK(rep.item_iv == TheoremItem::holds);
    }
    SUBCASE("the three-vertex reference split") {
        auto rep = check_split_theorem(pentagon(), ids({1, 3}), ids({2}));
        CHECK(rep.item_i == TheoremItem::holds);
        CHECK(rep.item_ii == TheoremItem::not_applicable);
        CHECK(rep.part1.sets() == masks({{}, {1}, {3}, {1, 3}}));
        CHECK(rep.part2.sets() == masks({{}, {2}}));
    }
    SUBCASE("a non-split is rejected") {
        CHECK_THROWS_AS(check_split_theorem(example1(), ids({1, 3}), ids({2, 4, 5, 6, 7})),
                        Error);
    }
}

TEST_CASE("closure decomposition annotates every node") {
    SUBCASE("three vertices") {
        auto cd = decompose_closure(pentagon());
        CHECK(cd.systems[cd.tree.root()].sets() == masks({{}, {1}, {3}, {1, 2}, {1, 2, 3}}));
        bool saw_left = false, saw_two = false;
        auto grounds = subtree_grounds(cd.tree);
        for (NodeId id = 0; id < cd.tree.node_count(); ++id) {
            if (grounds[id] == ids({1, 3})) {
                saw_left = true;
                CHECK(cd.systems[id].sets() == masks({{}, {1}, {3}, {1, 3}}));
            }
            if (grounds[id] == ids({2})) {
                saw_two = true;
                CHECK(cd.systems[id].sets() == masks({{}, {2}}));
            }
        }
        CHECK(saw_left);
        CHECK(saw_two);
    }
    SUBCASE("single vertex") {
        auto cd = decompose_closure(make(1));
        CHECK(cd.tree.node_count() == 1);
        CHECK(cd.systems[0].sets() == masks({{}, {1}}));
    }
    SUBCASE("root annotation is the instance family") {
        auto cd = decompose_closure(example1());
        CHECK(cd.systems[cd.tree.root()] == enumerate_closed_sets(example1()));
    }
}

TEST_CASE("forward chaining is a closure operator") {
    std::mt19937 rng(90210);
    for (int iter = 0; iter < 150; ++iter) {
        Dihypergraph h = random_instance(rng, {1, 10, 8, 4});
        const std::size_t n = h.vertex_count();
        std::uniform_int_distribution<std::uint32_t> md(0, (1u << n) - 1);
        for (int rep = 0; rep < 20; ++rep) {
            std::uint32_t xm = md(rng), ym_extra = md(rng);
            std::vector<VertexId> x, y;
            for (VertexId v = 0; v < n; ++v) {
                if (xm >> v & 1) x.push_back(v);
                if ((xm | ym_extra) >> v & 1) y.push_back(v); // X ⊆ Y
            }
            auto cx = forward_chain(h, x);
            CHECK(std::includes(cx.begin(), cx.end(), x.begin(), x.end()));
            auto cy = forward_chain(h, y);
            CHECK(std::includes(cy.begin(), cy.end(), cx.begin(), cx.end()));
            CHECK(forward_chain(h, cx) == cx);
            CHECK(is_closed(h, cx));
        }
    }
}

TEST_CASE("enumeration agrees with the powerset reference") {
    std::mt19937 rng(112);
    for (int iter = 0; iter < 150; ++iter) {
        Dihypergraph h = random_instance(rng, {1, 12, 9, 4});
        ClosureSystem fast = enumerate_closed_sets(h);
        ClosureSystem slow = oracle_closed_sets(h);
        REQUIRE(fast == slow);
        REQUIRE(is_closure_system(fast));
    }
}

TEST_CASE("trace and product outputs satisfy the family invariants") {
    std::mt19937 rng(787);
    for (int iter = 0; iter < 100; ++iter) {
        Dihypergraph h = random_instance(rng, {2, 8, 6, 3});
        ClosureSystem f = enumerate_closed_sets(h);
        const std::size_t n = h.vertex_count();
        std::uniform_int_distribution<std::uint32_t> md(1, (1u << n) - 1);
        std::uint32_t mask = md(rng);
        std::vector<VertexId> sub;
        for (VertexId v = 0; v < n; ++v)
            if (mask >> v & 1) sub.push_back(v);
        CHECK(is_closure_system(trace(f, sub)));
    }
}

TEST_CASE("the two-sided complete-cross family blows up the factor systems") {
    Dihypergraph h = exp_family(2);
    CHECK(enumerate_closed_sets(h).count() == 10); // 2*2 + 4 + 2
    CHECK(closed_sets_within(h, ids({1, 2})).count() == 4);
    CHECK(closed_sets_within(h, ids({3, 4})).count() == 4);
}

TEST_CASE("every instance is a meet-sublattice of its factor product") {
    std::mt19937 rng(5600);
    for (int iter = 0; iter < 100; ++iter) {
        Dihypergraph h = random_instance(rng, {1, 8, 7, 4});
        CorollaryReport rep = check_meet_corollary(h);
        REQUIRE(rep.meet_check.holds);
        REQUIRE(rep.system_size <= rep.product_size);
    }
}

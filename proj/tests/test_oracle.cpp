#include <doctest.h>

#include "hydec/oracle.hpp"
#include "test_helpers.hpp"

using namespace hydec;
using namespace hydec::testing;

TEST_CASE("reference components") {
    Partition p = oracle_body_components(example1());
    REQUIRE(p.blocks.size() == 3);
    CHECK(p.blocks[0] == ids({1, 2, 3}));
    CHECK(p.blocks[1] == ids({4, 5, 6}));
    CHECK(p.blocks[2] == ids({7}));

    CHECK(oracle_body_components(make(4, {{{1}, 2}, {{2}, 3}})).blocks.size() == 4);
    CHECK(oracle_body_components(triangle()).blocks.size() == 1);

    CHECK_THROWS_AS(oracle_body_components(make(13)), Error);
}

TEST_CASE("reference split search") {
    auto split = oracle_has_split(example1());
    REQUIRE(split);
    CHECK(is_split(example1(), split->first, split->second));

    CHECK(!oracle_has_split(triangle()));

    auto pair = oracle_has_split(make(2));
    REQUIRE(pair);
    CHECK(pair->first == ids({1}));
    CHECK(pair->second == ids({2}));

    CHECK_THROWS_AS(oracle_has_split(make(1)), Error);
    CHECK_THROWS_AS(oracle_has_split(make(13)), Error);
}

TEST_CASE("reference decomposability") {
    CHECK(oracle_is_hdecomposable(example1()));
    CHECK(!oracle_is_hdecomposable(triangle()));
    CHECK(oracle_is_hdecomposable(chain8()));
    CHECK(oracle_is_hdecomposable(make(1)));

    CHECK_THROWS_AS(oracle_is_hdecomposable(make(9)), Error);
}

TEST_CASE("reference closed sets") {
    CHECK(oracle_closed_sets(pentagon()).count() == 5);
    CHECK(oracle_closed_sets(make(3)).count() == 8);
    CHECK(oracle_closed_sets(exp_family(2)).count() == 10);

    CHECK_THROWS_AS(oracle_closed_sets(make(13)), Error);
}

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hydec/dihypergraph.hpp"
#include "hydec/htree.hpp"

namespace hydec {

// Least superset of `seed` closed under all edges: an edge fires when its
// whole body is present and contributes its head. Linear in the instance
// size; works for any instance.
std::vector<VertexId> forward_chain(const Dihypergraph& h, std::span<const VertexId> seed);

// True iff no edge has its body inside `f` and its head outside.
bool is_closed(const Dihypergraph& h, std::span<const VertexId> f);

// Closed-set families are kept as 64-bit vertex masks, so every operation
// below requires vertex ids < 64. The enumeration limit defaults to 24 and
// can be raised up to 64.
inline constexpr std::size_t default_ground_limit = 24;
inline constexpr std::size_t max_ground_limit = 64;

std::uint64_t vertex_mask(std::span<const VertexId> vs);
std::vector<VertexId> mask_vertices(std::uint64_t mask);

// Intersection-closed family of subsets of a ground set, containing the
// ground set. Canonical order: by set size, then lexicographically on the
// ascending vertex indices.
class ClosureSystem {
public:
    ClosureSystem(); // {∅} on the empty ground
    ClosureSystem(std::vector<VertexId> ground, std::vector<std::uint64_t> sets);

    const std::vector<VertexId>& ground() const { return ground_; }
    std::uint64_t ground_mask() const { return ground_mask_; }
    const std::vector<std::uint64_t>& sets() const { return sets_; }
    std::size_t count() const { return sets_.size(); }
    bool contains(std::uint64_t set) const;

    bool operator==(const ClosureSystem& o) const {
        return ground_ == o.ground_ && sets_ == o.sets_;
    }

private:
    std::vector<VertexId> ground_;
    std::uint64_t ground_mask_ = 0;
    std::vector<std::uint64_t> sets_; // canonical order
};

// Strict weak order behind the canonical family order.
bool canonical_set_less(std::uint64_t a, std::uint64_t b);

// Full invariant check (ground present, pairwise intersections present);
// quadratic, intended for test-scale systems.
bool is_closure_system(const ClosureSystem& f);

// All fixed points of forward chaining, by closure-lattice search from the
// closure of ∅ (output-sensitive; the powerset is never materialized).
ClosureSystem enumerate_closed_sets(const Dihypergraph& h,
                                    std::size_t limit = default_ground_limit);

// Closed sets of the subhypergraph induced by `ground`, expressed over the
// parent instance's vertex ids (so systems of disjoint grounds compose).
ClosureSystem closed_sets_within(const Dihypergraph& h, std::span<const VertexId> ground,
                                 std::size_t limit = default_ground_limit);

// {F ∩ ground | F ∈ f} on the sub-ground.
ClosureSystem trace(const ClosureSystem& f, std::span<const VertexId> ground);

// Pairwise unions over disjoint grounds.
ClosureSystem product(const ClosureSystem& f1, const ClosureSystem& f2);

// Meet = intersection; join = intersection of all members containing a ∪ b.
// Both require a and b to be members.
std::uint64_t meet(const ClosureSystem& f, std::uint64_t a, std::uint64_t b);
std::uint64_t join(const ClosureSystem& f, std::uint64_t a, std::uint64_t b);

struct SublatticeReport {
    bool holds = true;
    std::string reason;
    std::uint64_t witness_a = 0;
    std::uint64_t witness_b = 0;
    std::uint64_t ambient_value = 0; // the meet/join in g that escapes f
};

// f is contained in g and closed under g's meets (= intersections).
SublatticeReport is_meet_sublattice(const ClosureSystem& f, const ClosureSystem& g);
// Additionally closed under g's joins.
SublatticeReport is_sublattice(const ClosureSystem& f, const ClosureSystem& g);

enum class TheoremItem { holds, not_applicable, violation };

// Relations between the closure system of the whole instance and the systems
// of the two sides of a split:
//   (i)   restrictions of closed sets are closed per side, and the whole
//         family embeds in the product — always applicable;
//   (ii)  with no crossing edge the family equals the product;
//   (iii) with every crossing body inside u1, both traces equal the side
//         systems;
//   (iv)  mirror image of (iii).
// Any applicable item that fails indicates an implementation bug.
struct SplitTheoremReport {
    TheoremItem item_i = TheoremItem::holds;
    TheoremItem item_ii = TheoremItem::not_applicable;
    TheoremItem item_iii = TheoremItem::not_applicable;
    TheoremItem item_iv = TheoremItem::not_applicable;
    ClosureSystem whole, part1, part2;
    std::vector<EdgeId> crossing;
    std::string violation;

    bool any_violation() const {
        return item_i == TheoremItem::violation || item_ii == TheoremItem::violation ||
               item_iii == TheoremItem::violation || item_iv == TheoremItem::violation;
    }
};

SplitTheoremReport check_split_theorem(const Dihypergraph& h, std::span<const VertexId> u1,
                                       std::span<const VertexId> u2,
                                       std::size_t limit = default_ground_limit);

// Factor tree with every node annotated by the closure system of the
// subhypergraph induced by the node's subtree ground.
struct ClosureDecomposition {
    FactorTree tree;
    std::vector<ClosureSystem> systems; // indexed by NodeId
};

ClosureDecomposition decompose_closure(const Dihypergraph& h,
                                       std::size_t limit = default_ground_limit);

// Whole-instance system against the iterated product of the factor-tree leaf
// systems: the former must be a meet-sublattice of the latter.
struct CorollaryReport {
    SublatticeReport meet_check;
    std::size_t leaf_count = 0;
    std::size_t system_size = 0;
    std::size_t product_size = 0;
};

CorollaryReport check_meet_corollary(const Dihypergraph& h,
                                     std::size_t limit = default_ground_limit);

} // namespace hydec

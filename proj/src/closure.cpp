#include "hydec/closure.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <stdexcept>
#include <unordered_set>

#include "hydec/decomposition.hpp"

namespace hydec {

std::vector<VertexId> forward_chain(const Dihypergraph& h, std::span<const VertexId> seed) {
    auto start = normalize_vertex_set(h, seed);
    const std::size_t n = h.vertex_count(), m = h.edge_count();
    std::vector<char> in(n, 0);
    std::vector<std::uint32_t> missing(m);
    for (EdgeId e = 0; e < m; ++e) missing[e] = static_cast<std::uint32_t>(h.edge(e).body.size());

    std::vector<VertexId> queue(start.begin(), start.end());
    for (VertexId v : queue) in[v] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        VertexId v = queue[qi];
        for (EdgeId e : h.body_edges(v)) {
            if (--missing[e] == 0) {
                VertexId head = h.edge(e).head;
                if (!in[head]) {
                    in[head] = 1;
                    queue.push_back(head);
                }
            }
        }
    }
    std::vector<VertexId> out;
    for (VertexId v = 0; v < n; ++v)
        if (in[v]) out.push_back(v);
    return out;
}

bool is_closed(const Dihypergraph& h, std::span<const VertexId> f) {
    auto fs = normalize_vertex_set(h, f);
    std::vector<char> in(h.vertex_count(), 0);
    for (VertexId v : fs) in[v] = 1;
    for (const Edge& e : h.edges()) {
        if (in[e.head]) continue;
        bool body_in = true;
        for (VertexId v : e.body)
            if (!in[v]) { body_in = false; break; }
        if (body_in) return false;
    }
    return true;
}

std::uint64_t vertex_mask(std::span<const VertexId> vs) {
    std::uint64_t mask = 0;
    for (VertexId v : vs) {
        if (v >= max_ground_limit)
            throw Error(errc::ground_set_too_large,
                        "closure-system operations support at most 64 vertices");
        mask |= std::uint64_t{1} << v;
    }
    return mask;
}

std::vector<VertexId> mask_vertices(std::uint64_t mask) {
    std::vector<VertexId> out;
    while (mask) {
        out.push_back(static_cast<VertexId>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

bool canonical_set_less(std::uint64_t a, std::uint64_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    while (a && b) {
        int ia = std::countr_zero(a), ib = std::countr_zero(b);
        if (ia != ib) return ia < ib;
        a &= a - 1;
        b &= b - 1;
    }
    return false;
}

ClosureSystem::ClosureSystem() : sets_{0} {}

ClosureSystem::ClosureSystem(std::vector<VertexId> ground, std::vector<std::uint64_t> sets)
    : ground_(std::move(ground)), sets_(std::move(sets)) {
    std::sort(ground_.begin(), ground_.end());
    ground_.erase(std::unique(ground_.begin(), ground_.end()), ground_.end());
    ground_mask_ = vertex_mask(ground_);
    for (std::uint64_t s : sets_)
        if ((s & ~ground_mask_) != 0)
            throw Error(errc::unknown_vertex, "closed set leaves the ground set");
    std::sort(sets_.begin(), sets_.end(), canonical_set_less);
    sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
    if (sets_.empty() || sets_.back() != ground_mask_) {
        if (!std::binary_search(sets_.begin(), sets_.end(), ground_mask_, canonical_set_less))
            throw Error(errc::not_a_member, "closure system must contain its ground set");
    }
}

bool ClosureSystem::contains(std::uint64_t set) const {
    return std::binary_search(sets_.begin(), sets_.end(), set, canonical_set_less);
}

bool is_closure_system(const ClosureSystem& f) {
    if (!f.contains(f.ground_mask())) return false;
    const auto& sets = f.sets();
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j)
            if (!f.contains(sets[i] & sets[j])) return false;
    return true;
}

namespace {

// Edge rules over masks, restricted to edges contained in a ground mask.
struct MaskRules {
    struct Rule {
        std::uint64_t body;
        std::uint64_t head;
    };
    std::vector<Rule> rules;

    MaskRules(const Dihypergraph& h, std::uint64_t ground) {
        for (const Edge& e : h.edges()) {
            std::uint64_t body = vertex_mask(e.body);
            std::uint64_t head = std::uint64_t{1} << e.head;
            if ((body | head) & ~ground) continue;
            rules.push_back({body, head});
        }
    }

    std::uint64_t close(std::uint64_t x) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const Rule& r : rules) {
                if ((r.body & x) == r.body && (x & r.head) == 0) {
                    x |= r.head;
                    changed = true;
                }
            }
        }
        return x;
    }
};

ClosureSystem enumerate_masks(const Dihypergraph& h, std::vector<VertexId> ground,
                              std::size_t limit) {
    if (limit > max_ground_limit)
        throw Error(errc::ground_set_too_large, "enumeration limit cannot exceed 64");
    if (ground.size() > limit)
        throw Error(errc::ground_set_too_large,
                    "ground set has " + std::to_string(ground.size()) +
                        " vertices, enumeration limit is " + std::to_string(limit));
    std::uint64_t gmask = vertex_mask(ground);
    MaskRules rules(h, gmask);

    std::vector<std::uint64_t> found;
    std::unordered_set<std::uint64_t> seen;
    std::uint64_t start = rules.close(0);
    seen.insert(start);
    found.push_back(start);
    for (std::size_t qi = 0; qi < found.size(); ++qi) {
        std::uint64_t f = found[qi];
        std::uint64_t rest = gmask & ~f;
        while (rest) {
            std::uint64_t bit = rest & (~rest + 1);
            rest &= rest - 1;
            std::uint64_t next = rules.close(f | bit);
            if (seen.insert(next).second) found.push_back(next);
        }
    }
    return ClosureSystem(std::move(ground), std::move(found));
}

// trace/product outputs are closure systems by construction; the quadratic
// re-check is only run at test-friendly sizes.
void check_invariants_capped(const ClosureSystem& f, const char* producer) {
    if (f.count() > 4096) return;
    if (!is_closure_system(f))
        throw std::logic_error(std::string(producer) + " produced a non-closure family");
}

} // namespace

ClosureSystem enumerate_closed_sets(const Dihypergraph& h, std::size_t limit) {
    std::vector<VertexId> ground(h.vertex_count());
    for (std::size_t i = 0; i < ground.size(); ++i) ground[i] = static_cast<VertexId>(i);
    return enumerate_masks(h, std::move(ground), limit);
}

ClosureSystem closed_sets_within(const Dihypergraph& h, std::span<const VertexId> ground,
                                 std::size_t limit) {
    auto g = normalize_vertex_set(h, ground);
    if (g.empty())
        throw Error(errc::empty_vertex_set, "closure system needs a nonempty ground set");
    return enumerate_masks(h, std::move(g), limit);
}

ClosureSystem trace(const ClosureSystem& f, std::span<const VertexId> ground) {
    std::vector<VertexId> g(ground.begin(), ground.end());
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    std::uint64_t gmask = vertex_mask(g);
    if ((gmask & ~f.ground_mask()) != 0)
        throw Error(errc::unknown_vertex, "trace ground is not a subset of the system's ground");
    std::vector<std::uint64_t> sets;
    sets.reserve(f.count());
    for (std::uint64_t s : f.sets()) sets.push_back(s & gmask);
    ClosureSystem out(std::move(g), std::move(sets));
    check_invariants_capped(out, "trace");
    return out;
}

ClosureSystem product(const ClosureSystem& f1, const ClosureSystem& f2) {
    if ((f1.ground_mask() & f2.ground_mask()) != 0)
        throw Error(errc::overlapping_grounds, "product requires disjoint ground sets");
    std::vector<VertexId> ground = f1.ground();
    ground.insert(ground.end(), f2.ground().begin(), f2.ground().end());
    std::vector<std::uint64_t> sets;
    sets.reserve(f1.count() * f2.count());
    for (std::uint64_t a : f1.sets())
        for (std::uint64_t b : f2.sets()) sets.push_back(a | b);
    ClosureSystem out(std::move(ground), std::move(sets));
    check_invariants_capped(out, "product");
    return out;
}

std::uint64_t meet(const ClosureSystem& f, std::uint64_t a, std::uint64_t b) {
    if (!f.contains(a) || !f.contains(b))
        throw Error(errc::not_a_member, "meet arguments must be members of the family");
    std::uint64_t m = a & b;
    if (!f.contains(m))
        throw Error(errc::not_a_member, "family is not intersection-closed at this pair");
    return m;
}

std::uint64_t join(const ClosureSystem& f, std::uint64_t a, std::uint64_t b) {
    if (!f.contains(a) || !f.contains(b))
        throw Error(errc::not_a_member, "join arguments must be members of the family");
    std::uint64_t target = a | b;
    std::uint64_t inter = f.ground_mask();
    for (std::uint64_t s : f.sets())
        if ((target & ~s) == 0) inter &= s;
    if (!f.contains(inter))
        throw Error(errc::not_a_member, "family has no unique minimal superset for this pair");
    return inter;
}

SublatticeReport is_meet_sublattice(const ClosureSystem& f, const ClosureSystem& g) {
    SublatticeReport r;
    for (std::uint64_t s : f.sets()) {
        if (!g.contains(s)) {
            r.holds = false;
            r.reason = "a member of the family is missing from the ambient family";
            r.witness_a = r.witness_b = s;
            return r;
        }
    }
    const auto& sets = f.sets();
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            std::uint64_t m = sets[i] & sets[j];
            if (!f.contains(m)) {
                r.holds = false;
                r.reason = "ambient meet escapes the family";
                r.witness_a = sets[i];
                r.witness_b = sets[j];
                r.ambient_value = m;
                return r;
            }
        }
    }
    return r;
}

SublatticeReport is_sublattice(const ClosureSystem& f, const ClosureSystem& g) {
    SublatticeReport r = is_meet_sublattice(f, g);
    if (!r.holds) return r;
    const auto& sets = f.sets();
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            std::uint64_t jn = join(g, sets[i], sets[j]);
            if (!f.contains(jn)) {
                r.holds = false;
                r.reason = "ambient join escapes the family";
                r.witness_a = sets[i];
                r.witness_b = sets[j];
                r.ambient_value = jn;
                return r;
            }
        }
    }
    return r;
}

SplitTheoremReport check_split_theorem(const Dihypergraph& h, std::span<const VertexId> u1,
                                       std::span<const VertexId> u2, std::size_t limit) {
    if (!is_split(h, u1, u2))
        throw Error(errc::not_a_split, "the given bipartition is not a split");

    SplitTheoremReport rep;
    rep.whole = enumerate_closed_sets(h, limit);
    rep.part1 = closed_sets_within(h, u1, limit);
    rep.part2 = closed_sets_within(h, u2, limit);
    rep.crossing = bipartite_part(h, u1, u2);

    const std::uint64_t m1 = rep.part1.ground_mask(), m2 = rep.part2.ground_mask();

    rep.item_i = TheoremItem::holds;
    ClosureSystem prod = product(rep.part1, rep.part2);
    for (std::uint64_t s : rep.whole.sets()) {
        if (!rep.part1.contains(s & m1) || !rep.part2.contains(s & m2) || !prod.contains(s)) {
            rep.item_i = TheoremItem::violation;
            rep.violation = "item (i): a closed set does not restrict into the side systems";
            break;
        }
    }

    if (rep.crossing.empty()) {
        rep.item_ii = rep.whole.sets() == prod.sets() ? TheoremItem::holds
                                                      : TheoremItem::violation;
        if (rep.item_ii == TheoremItem::violation)
            rep.violation = "item (ii): family differs from the product despite no crossing edge";
    }

    bool bodies_in_1 = true, bodies_in_2 = true;
    for (EdgeId e : rep.crossing) {
        std::uint64_t body = vertex_mask(h.edge(e).body);
        bodies_in_1 = bodies_in_1 && (body & ~m1) == 0;
        bodies_in_2 = bodies_in_2 && (body & ~m2) == 0;
    }
    if (bodies_in_1 || bodies_in_2) {
        bool traces_match = trace(rep.whole, rep.part1.ground()) == rep.part1 &&
                            trace(rep.whole, rep.part2.ground()) == rep.part2;
        if (bodies_in_1) {
            rep.item_iii = traces_match ? TheoremItem::holds : TheoremItem::violation;
            if (!traces_match)
                rep.violation = "item (iii): a trace differs from its side system";
        }
        if (bodies_in_2) {
            rep.item_iv = traces_match ? TheoremItem::holds : TheoremItem::violation;
            if (!traces_match && rep.violation.empty())
                rep.violation = "item (iv): a trace differs from its side system";
        }
    }
    return rep;
}

ClosureDecomposition decompose_closure(const Dihypergraph& h, std::size_t limit) {
    ClosureDecomposition out{build_factor_tree(h), {}};
    auto grounds = subtree_grounds(out.tree);
    out.systems.reserve(grounds.size());
    for (const auto& g : grounds) out.systems.push_back(closed_sets_within(h, g, limit));
    return out;
}

CorollaryReport check_meet_corollary(const Dihypergraph& h, std::size_t limit) {
    ClosureDecomposition cd = decompose_closure(h, limit);
    CorollaryReport rep;

    std::optional<ClosureSystem> prod;
    for (NodeId id = 0; id < cd.tree.node_count(); ++id) {
        if (cd.tree.node(id).kind == FactorTree::Kind::internal) continue;
        ++rep.leaf_count;
        if (!prod) prod = cd.systems[id];
        else
            prod = product(*prod, cd.systems[id]);
    }
    const ClosureSystem& whole = cd.systems[cd.tree.root()];
    rep.system_size = whole.count();
    rep.product_size = prod->count();
    rep.meet_check = is_meet_sublattice(whole, *prod);
    return rep;
}

} // namespace hydec

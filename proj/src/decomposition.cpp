#include "hydec/decomposition.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "hydec/connectivity.hpp"
#include "hydec/union_find.hpp"

namespace hydec {

namespace {

// side[v] = 1 or 2; throws when (u1, u2) is not a bipartition of U.
std::vector<char> bipartition_sides(const Dihypergraph& h,
                                    std::span<const VertexId> u1,
                                    std::span<const VertexId> u2) {
    auto a = normalize_vertex_set(h, u1);
    auto b = normalize_vertex_set(h, u2);
    if (a.empty() || b.empty())
        throw Error(errc::not_a_bipartition, "both parts of a bipartition must be nonempty");
    if (a.size() + b.size() != h.vertex_count())
        throw Error(errc::not_a_bipartition, "parts do not cover the vertex set");
    std::vector<char> side(h.vertex_count(), 0);
    for (VertexId v : a) side[v] = 1;
    for (VertexId v : b) {
        if (side[v] != 0)
            throw Error(errc::not_a_bipartition, "parts overlap");
        side[v] = 2;
    }
    return side;
}

struct RawNode {
    enum class Kind : std::uint8_t { leaf, factor, internal };
    Kind kind = Kind::leaf;
    VertexId leaf = 0; // leaf vertex, or payload index for factor nodes
    std::vector<EdgeId> label;
    NodeId left = no_node;
    NodeId right = no_node;
};

// factor-leaf contents, stored out of line so plain nodes stay small
struct FactorPayload {
    std::vector<VertexId> vertices;
    std::vector<EdgeId> edges;
};

// Renumbers an arbitrary arena into preorder (root = 0, left before right).
std::vector<std::uint32_t> preorder_map(const std::vector<RawNode>& raw, NodeId root) {
    std::vector<std::uint32_t> order(raw.size(), 0);
    std::vector<NodeId> stack{root};
    std::uint32_t next = 0;
    while (!stack.empty()) {
        NodeId id = stack.back();
        stack.pop_back();
        order[id] = next++;
        if (raw[id].kind == RawNode::Kind::internal) {
            stack.push_back(raw[id].right);
            stack.push_back(raw[id].left);
        }
    }
    return order;
}

HTree finalize_htree(std::vector<RawNode>&& raw, NodeId root) {
    auto order = preorder_map(raw, root);
    HTree t;
    t.nodes.resize(raw.size());
    for (NodeId id = 0; id < raw.size(); ++id) {
        HTree::Node& n = t.nodes[order[id]];
        if (raw[id].kind == RawNode::Kind::leaf) {
            n.is_leaf = true;
            n.leaf = raw[id].leaf;
        } else {
            assert(raw[id].kind == RawNode::Kind::internal);
            n.label = std::move(raw[id].label);
            n.left = order[raw[id].left];
            n.right = order[raw[id].right];
        }
    }
    return t;
}

FactorTree finalize_factor_tree(std::vector<RawNode>&& raw, std::vector<FactorPayload>&& payloads,
                                NodeId root) {
    auto order = preorder_map(raw, root);
    FactorTree t;
    t.nodes.resize(raw.size());
    for (NodeId id = 0; id < raw.size(); ++id) {
        FactorTree::Node& n = t.nodes[order[id]];
        switch (raw[id].kind) {
        case RawNode::Kind::leaf:
            n.kind = FactorTree::Kind::leaf;
            n.leaf = raw[id].leaf;
            break;
        case RawNode::Kind::factor:
            n.kind = FactorTree::Kind::factor;
            n.factor_vertices = std::move(payloads[raw[id].leaf].vertices);
            n.factor_edges = std::move(payloads[raw[id].leaf].edges);
            break;
        case RawNode::Kind::internal:
            n.kind = FactorTree::Kind::internal;
            n.label = std::move(raw[id].label);
            n.left = order[raw[id].left];
            n.right = order[raw[id].right];
            break;
        }
    }
    return t;
}

// Iterative split recursion. Per subproblem the body-connected blocks are
// computed once and peeled in min-vertex order; an edge dies exactly once
// (when it gets labelled), and connectivity is recomputed only inside blocks
// that actually lost a body-merging edge. This keeps digraph-like inputs
// near-linear where a per-level recomputation would be quadratic, while
// producing the same tree as the plain recursion with the canonical
// component choice.
class TreeBuilder {
public:
    TreeBuilder(const Dihypergraph& h, bool strict)
        : h_(h), strict_(strict),
          edge_alive_(h.edge_count(), 1),
          edge_mark_(h.edge_count(), 0),
          vertex_tag_(h.vertex_count(), 0),
          uf_parent_(h.vertex_count(), 0),
          uf_rank_(h.vertex_count(), 0),
          root_slot_(h.vertex_count(), 0),
          root_epoch_(h.vertex_count(), 0),
          block_of_(h.vertex_count(), 0) {
        // flat copies of the per-edge fields the hot loops touch
        const std::size_t m = h.edge_count();
        ebody0_.resize(m);
        ebodysize_.resize(m);
        ehead_.resize(m);
        for (EdgeId e = 0; e < m; ++e) {
            ebody0_[e] = h.edge(e).body[0];
            ebodysize_[e] = static_cast<std::uint32_t>(h.edge(e).body.size());
            ehead_[e] = h.edge(e).head;
        }
    }

    // Root id into raw() on success; nullopt only in strict mode.
    std::optional<NodeId> run() {
        const std::size_t n = h_.vertex_count();
        raw_.reserve(2 * n);
        pool_.reserve(n + n / 4);
        registry_.reserve(n + n / 4);
        Frame root;
        root.verts.resize(n);
        for (std::size_t i = 0; i < n; ++i) root.verts[i] = static_cast<VertexId>(i);
        stack_.push_back(std::move(root));

        std::optional<NodeId> completed;
        while (!stack_.empty()) {
            if (failed_) return std::nullopt;
            if (completed) {
                stack_.back().steps.back().left = *completed;
                completed.reset();
            }
            completed = advance();
        }
        if (failed_) return std::nullopt;
        return completed;
    }

    std::vector<RawNode>& raw() { return raw_; }
    std::vector<FactorPayload>& payloads() { return payloads_; }

private:
    struct Block {
        std::uint32_t pool_begin = 0;
        std::uint32_t size = 0;
        VertexId min_vertex = 0;
        bool alive = true;
        bool dirty = false;
    };

    struct HeapEntry {
        VertexId key;
        std::uint32_t block;
    };
    struct HeapGreater {
        bool operator()(const HeapEntry& a, const HeapEntry& b) const { return a.key > b.key; }
    };

    struct Step {
        std::vector<EdgeId> label;
        NodeId left = no_node;
    };

    struct Frame {
        std::vector<VertexId> verts; // ascending; only used on entry
        std::vector<HeapEntry> heap;
        std::size_t live = 0;
        std::vector<Step> steps;
        bool entered = false;
    };

    const Dihypergraph& h_;
    bool strict_;
    bool failed_ = false;

    std::vector<char> edge_alive_;
    std::vector<std::uint32_t> edge_mark_;
    std::vector<VertexId> ebody0_, ehead_;
    std::vector<std::uint32_t> ebodysize_;
    std::uint32_t scan_epoch_ = 0;
    std::vector<std::uint32_t> vertex_tag_;
    std::uint32_t tag_epoch_ = 0;

    std::vector<VertexId> uf_parent_; // reset lazily per compute_blocks
    std::vector<std::uint8_t> uf_rank_;
    std::vector<std::uint32_t> root_slot_, root_epoch_;
    std::uint32_t gather_epoch_ = 0;

    std::vector<VertexId> pool_;
    std::vector<Block> registry_;
    std::vector<std::uint32_t> block_of_;

    std::vector<std::uint32_t> dirty_list_;
    std::vector<VertexId> scratch_;

    std::vector<Frame> stack_;
    std::vector<RawNode> raw_;
    std::vector<FactorPayload> payloads_;

    std::span<const VertexId> members(std::uint32_t blk) const {
        const Block& b = registry_[blk];
        return {pool_.data() + b.pool_begin, b.size};
    }

    VertexId uf_find(VertexId x) {
        VertexId root = x;
        while (uf_parent_[root] != root) root = uf_parent_[root];
        while (uf_parent_[x] != root) {
            VertexId next = uf_parent_[x];
            uf_parent_[x] = root;
            x = next;
        }
        return root;
    }

    // Body-connected blocks of the live subhypergraph on `verts` (ascending,
    // must not alias pool_). Appends blocks to the registry, ordered by
    // smallest vertex, members ascending; updates block_of_.
    std::vector<std::uint32_t> compute_blocks(std::span<const VertexId> verts) {
        for (VertexId v : verts) {
            uf_parent_[v] = v;
            uf_rank_[v] = 0;
        }
        ++scan_epoch_;
        for (VertexId v : verts) {
            for (EdgeId e : h_.body_edges(v)) {
                if (!edge_alive_[e] || edge_mark_[e] == scan_epoch_) continue;
                edge_mark_[e] = scan_epoch_;
                if (ebodysize_[e] < 2) continue;
                const auto& body = h_.edge(e).body;
                for (std::size_t i = 1; i < body.size(); ++i) {
                    VertexId a = uf_find(body[0]), b = uf_find(body[i]);
                    if (a == b) continue;
                    if (uf_rank_[a] < uf_rank_[b]) std::swap(a, b);
                    uf_parent_[b] = a;
                    if (uf_rank_[a] == uf_rank_[b]) ++uf_rank_[a];
                }
            }
        }

        ++gather_epoch_;
        std::vector<std::uint32_t> ids;
        const std::uint32_t first = static_cast<std::uint32_t>(registry_.size());
        for (VertexId v : verts) {
            VertexId root = uf_find(v);
            if (root_epoch_[root] != gather_epoch_) {
                root_epoch_[root] = gather_epoch_;
                root_slot_[root] = static_cast<std::uint32_t>(registry_.size());
                ids.push_back(root_slot_[root]);
                registry_.push_back(Block{0, 0, v, true, false});
            }
            ++registry_[root_slot_[root]].size;
        }
        std::uint32_t base = static_cast<std::uint32_t>(pool_.size());
        pool_.resize(pool_.size() + verts.size());
        for (std::uint32_t id : ids) {
            registry_[id].pool_begin = base;
            base += registry_[id].size;
        }
        std::vector<std::uint32_t> cursor(ids.size(), 0);
        for (VertexId v : verts) {
            std::uint32_t id = root_slot_[uf_find(v)];
            pool_[registry_[id].pool_begin + cursor[id - first]++] = v;
            block_of_[v] = id;
        }
        return ids;
    }

    NodeId emit_leaf(VertexId v) {
        raw_.push_back(RawNode{RawNode::Kind::leaf, v, {}, no_node, no_node});
        return static_cast<NodeId>(raw_.size() - 1);
    }

    NodeId emit_internal(std::vector<EdgeId> label, NodeId left, NodeId right) {
        raw_.push_back(RawNode{RawNode::Kind::internal, 0, std::move(label), left, right});
        return static_cast<NodeId>(raw_.size() - 1);
    }

    // Terminal for a body-connected vertex set: a leaf for one vertex, a
    // factor leaf otherwise (which in strict mode is the FAIL outcome).
    NodeId emit_terminal(std::span<const VertexId> verts) {
        if (verts.size() == 1) return emit_leaf(verts[0]);
        if (strict_) {
            failed_ = true;
            return no_node;
        }
        std::vector<EdgeId> edges;
        ++scan_epoch_;
        for (VertexId v : verts) {
            for (EdgeId e : h_.body_edges(v)) {
                if (!edge_alive_[e] || edge_mark_[e] == scan_epoch_) continue;
                edge_mark_[e] = scan_epoch_;
                edges.push_back(e);
            }
            for (EdgeId e : h_.head_edges(v)) {
                if (!edge_alive_[e] || edge_mark_[e] == scan_epoch_) continue;
                edge_mark_[e] = scan_epoch_;
                edges.push_back(e);
            }
        }
        std::sort(edges.begin(), edges.end());
        payloads_.push_back(
            FactorPayload{std::vector<VertexId>(verts.begin(), verts.end()), std::move(edges)});
        raw_.push_back(RawNode{RawNode::Kind::factor,
                               static_cast<VertexId>(payloads_.size() - 1), {}, no_node,
                               no_node});
        return static_cast<NodeId>(raw_.size() - 1);
    }

    // Kills every live edge crossing the popped block and returns the label.
    // Blocks whose body lost a merge edge are queued into dirty_list_.
    std::vector<EdgeId> peel(std::uint32_t blk) {
        auto cv = members(blk);
        ++tag_epoch_;
        for (VertexId v : cv) vertex_tag_[v] = tag_epoch_;
        ++scan_epoch_;
        std::vector<EdgeId> label;
        auto visit = [&](EdgeId e) {
            if (!edge_alive_[e] || edge_mark_[e] == scan_epoch_) return;
            edge_mark_[e] = scan_epoch_;
            // a live body never straddles block boundaries
            const bool body_in = vertex_tag_[ebody0_[e]] == tag_epoch_;
            const bool head_in = vertex_tag_[ehead_[e]] == tag_epoch_;
            if (body_in && head_in) return; // internal, descends with the block
            edge_alive_[e] = 0;
            label.push_back(e);
            if (!body_in && ebodysize_[e] >= 2) {
                std::uint32_t other = block_of_[ebody0_[e]];
                if (registry_[other].alive && !registry_[other].dirty) {
                    registry_[other].dirty = true;
                    dirty_list_.push_back(other);
                }
            }
        };
        for (VertexId v : cv) {
            for (EdgeId e : h_.body_edges(v)) visit(e);
            for (EdgeId e : h_.head_edges(v)) visit(e);
        }
        std::sort(label.begin(), label.end());
        return label;
    }

    // Either completes the top frame (returns its node) or pushes a child
    // frame (returns nullopt).
    std::optional<NodeId> advance() {
        Frame& f = stack_.back();
        if (!f.entered) {
            f.entered = true;
            if (f.verts.size() == 1) {
                NodeId n = emit_leaf(f.verts[0]);
                stack_.pop_back();
                return n;
            }
            auto ids = compute_blocks(f.verts);
            if (ids.size() == 1) {
                NodeId n = emit_terminal(members(ids[0]));
                stack_.pop_back();
                return n;
            }
            f.live = ids.size();
            f.heap.reserve(ids.size());
            for (std::uint32_t id : ids)
                f.heap.push_back(HeapEntry{registry_[id].min_vertex, id});
            std::make_heap(f.heap.begin(), f.heap.end(), HeapGreater{});
            f.verts.clear();
            f.verts.shrink_to_fit();
        }

        for (;;) {
            // skip heap entries whose block was replaced by fragments
            std::uint32_t blk;
            do {
                std::pop_heap(stack_.back().heap.begin(), stack_.back().heap.end(), HeapGreater{});
                blk = stack_.back().heap.back().block;
                stack_.back().heap.pop_back();
            } while (!registry_[blk].alive);

            if (stack_.back().live == 1) {
                // last remaining block closes the comb
                NodeId node = emit_terminal(members(blk));
                if (failed_) return std::nullopt;
                Frame& fr = stack_.back();
                for (std::size_t i = fr.steps.size(); i-- > 0;)
                    node = emit_internal(std::move(fr.steps[i].label), fr.steps[i].left, node);
                stack_.pop_back();
                return node;
            }

            registry_[blk].alive = false;
            --stack_.back().live;
            std::vector<EdgeId> label = peel(blk);

            for (std::uint32_t dirty : dirty_list_) {
                registry_[dirty].dirty = false;
                registry_[dirty].alive = false;
                scratch_.assign(members(dirty).begin(), members(dirty).end());
                auto parts = compute_blocks(scratch_);
                stack_.back().live += parts.size() - 1;
                for (std::uint32_t id : parts) {
                    stack_.back().heap.push_back(HeapEntry{registry_[id].min_vertex, id});
                    std::push_heap(stack_.back().heap.begin(), stack_.back().heap.end(),
                                   HeapGreater{});
                }
            }
            dirty_list_.clear();

            stack_.back().steps.push_back(Step{std::move(label), no_node});
            auto cv = members(blk);
            if (cv.size() == 1) {
                stack_.back().steps.back().left = emit_leaf(cv[0]);
                continue;
            }
            Frame child;
            child.verts.assign(cv.begin(), cv.end());
            stack_.push_back(std::move(child));
            return std::nullopt;
        }
    }
};

} // namespace

bool is_split(const Dihypergraph& h, std::span<const VertexId> u1, std::span<const VertexId> u2) {
    auto side = bipartition_sides(h, u1, u2);
    for (const Edge& e : h.edges()) {
        char s = side[e.body[0]];
        for (VertexId v : e.body) {
            if (side[v] != s) { s = 0; break; }
        }
        if (s == 0) return false;
    }
    return true;
}

std::optional<std::pair<std::vector<VertexId>, std::vector<VertexId>>>
find_split(const Dihypergraph& h) {
    if (h.vertex_count() < 2)
        throw Error(errc::too_few_vertices, "a split needs at least two vertices");
    Partition p = body_connected_components(h);
    if (p.blocks.size() == 1) return std::nullopt;
    std::vector<VertexId> rest;
    for (std::size_t i = 1; i < p.blocks.size(); ++i)
        rest.insert(rest.end(), p.blocks[i].begin(), p.blocks[i].end());
    std::sort(rest.begin(), rest.end());
    return std::make_pair(p.blocks[0], std::move(rest));
}

std::optional<HTree> build_tree(const Dihypergraph& h) {
    TreeBuilder builder(h, /*strict=*/true);
    auto root = builder.run();
    if (!root) return std::nullopt;
    return finalize_htree(std::move(builder.raw()), *root);
}

FactorTree build_factor_tree(const Dihypergraph& h) {
    TreeBuilder builder(h, /*strict=*/false);
    auto root = builder.run();
    assert(root);
    return finalize_factor_tree(std::move(builder.raw()), std::move(builder.payloads()), *root);
}

namespace {

// Leaf-slot intervals: node v covers slots [in[v], out[v]), leaves get one
// slot each in left-to-right order. Membership of a vertex in a child's
// subtree is then a range test on the vertex's leaf slot.
struct SlotIntervals {
    std::vector<std::uint32_t> in, out;
    std::vector<std::uint32_t> slot_of_vertex; // UINT32_MAX = not a leaf label
};

std::string describe_edge(const Dihypergraph& h, EdgeId id) {
    std::ostringstream os;
    os << '(';
    const Edge& e = h.edge(id);
    for (std::size_t i = 0; i < e.body.size(); ++i) {
        if (i) os << ' ';
        os << h.name(e.body[i]);
    }
    os << " -> " << h.name(e.head) << ')';
    return os.str();
}

// Walks the arena from the root; fails on shared nodes, dangling child ids,
// or nodes unreachable from the root.
template <typename Tree, typename IsLeafFn>
bool check_structure(const Tree& t, IsLeafFn is_leaf, std::string& detail) {
    if (t.nodes.empty()) {
        detail = "tree has no nodes";
        return false;
    }
    std::vector<char> seen(t.nodes.size(), 0);
    std::vector<NodeId> stack{t.root()};
    std::size_t visited = 0;
    while (!stack.empty()) {
        NodeId id = stack.back();
        stack.pop_back();
        if (id >= t.nodes.size()) {
            detail = "child id out of range";
            return false;
        }
        if (seen[id]) {
            detail = "node " + std::to_string(id) + " reached twice";
            return false;
        }
        seen[id] = 1;
        ++visited;
        const auto& n = t.nodes[id];
        if (is_leaf(n)) {
            if (n.left != no_node || n.right != no_node) {
                detail = "leaf node " + std::to_string(id) + " has children";
                return false;
            }
        } else {
            if (n.left == no_node || n.right == no_node) {
                detail = "interior node " + std::to_string(id) + " lacks a child";
                return false;
            }
            stack.push_back(n.right);
            stack.push_back(n.left);
        }
    }
    if (visited != t.nodes.size()) {
        detail = "arena contains nodes unreachable from the root";
        return false;
    }
    return true;
}

// DFS computing slot intervals; `assign(node, slot)` is called once per leaf.
template <typename Tree, typename IsLeafFn, typename AssignFn>
SlotIntervals compute_slots(const Tree& t, std::size_t vertex_count, IsLeafFn is_leaf,
                            AssignFn assign) {
    SlotIntervals s;
    s.in.assign(t.nodes.size(), 0);
    s.out.assign(t.nodes.size(), 0);
    s.slot_of_vertex.assign(vertex_count, UINT32_MAX);
    struct Item {
        NodeId id;
        bool exit;
    };
    std::vector<Item> stack{{t.root(), false}};
    std::uint32_t next = 0;
    while (!stack.empty()) {
        auto [id, exit] = stack.back();
        stack.pop_back();
        if (exit) {
            s.out[id] = next;
            continue;
        }
        s.in[id] = next;
        const auto& n = t.nodes[id];
        if (is_leaf(n)) {
            assign(id, next, s);
            s.out[id] = ++next;
        } else {
            stack.push_back({id, true});
            stack.push_back({n.right, false});
            stack.push_back({n.left, false});
        }
    }
    return s;
}

enum class Side { left, right, outside };

template <typename Tree>
Side slot_side(const Tree& t, const SlotIntervals& s, NodeId node, std::uint32_t slot) {
    const auto& n = t.nodes[node];
    if (slot >= s.in[n.left] && slot < s.out[n.left]) return Side::left;
    if (slot >= s.in[n.right] && slot < s.out[n.right]) return Side::right;
    return Side::outside;
}

// Condition (iii) for one labelled edge; writes a witness into `detail`.
template <typename Tree>
bool edge_separated(const Dihypergraph& h, const Tree& t, const SlotIntervals& s, NodeId node,
                    EdgeId e, std::string& detail) {
    const Edge& edge = h.edge(e);
    Side body_side = Side::outside;
    for (VertexId v : edge.body) {
        std::uint32_t slot = s.slot_of_vertex[v];
        Side side = slot == UINT32_MAX ? Side::outside : slot_side(t, s, node, slot);
        if (side == Side::outside) {
            detail = "edge " + describe_edge(h, e) + " at node " + std::to_string(node) +
                     ": body vertex " + h.name(v) + " is not below the node";
            return false;
        }
        if (body_side == Side::outside) body_side = side;
        if (side != body_side) {
            detail = "edge " + describe_edge(h, e) + " at node " + std::to_string(node) +
                     ": body straddles the two children";
            return false;
        }
    }
    std::uint32_t hslot = s.slot_of_vertex[edge.head];
    Side head_side = hslot == UINT32_MAX ? Side::outside : slot_side(t, s, node, hslot);
    if (head_side == Side::outside) {
        detail = "edge " + describe_edge(h, e) + " at node " + std::to_string(node) +
                 ": head is not below the node";
        return false;
    }
    if (head_side == body_side) {
        detail = "edge " + describe_edge(h, e) + " at node " + std::to_string(node) +
                 ": body and head are under the same child";
        return false;
    }
    return true;
}

ValidationReport fail_report(int condition, std::string detail) {
    return ValidationReport{false, condition, std::move(detail)};
}

} // namespace

ValidationReport validate_htree(const Dihypergraph& h, const HTree& t) {
    auto is_leaf = [](const HTree::Node& n) { return n.is_leaf; };
    std::string detail;
    if (!check_structure(t, is_leaf, detail)) return fail_report(0, std::move(detail));

    const std::size_t n = h.vertex_count(), m = h.edge_count();
    // (i) and (ii): labels name actual vertices / edges
    for (NodeId id = 0; id < t.nodes.size(); ++id) {
        const auto& node = t.nodes[id];
        if (node.is_leaf) {
            if (node.leaf >= n)
                return fail_report(1, "leaf node " + std::to_string(id) +
                                          " does not name a vertex of the instance");
        } else {
            for (EdgeId e : node.label)
                if (e >= m)
                    return fail_report(2, "node " + std::to_string(id) +
                                              " labels an edge that is not in the instance");
        }
    }

    // (iv), vertex part: each vertex exactly one leaf
    bool dup = false;
    VertexId dup_vertex = 0;
    auto slots = compute_slots(t, n, is_leaf,
                               [&](NodeId id, std::uint32_t slot, SlotIntervals& s) {
                                   VertexId v = t.nodes[id].leaf;
                                   if (s.slot_of_vertex[v] != UINT32_MAX && !dup) {
                                       dup = true;
                                       dup_vertex = v;
                                   }
                                   s.slot_of_vertex[v] = slot;
                               });
    if (dup)
        return fail_report(4, "vertex " + h.name(dup_vertex) + " labels more than one leaf");
    for (VertexId v = 0; v < n; ++v)
        if (slots.slot_of_vertex[v] == UINT32_MAX)
            return fail_report(4, "vertex " + h.name(v) + " labels no leaf");

    // (iii): every labelled edge separates body from head
    for (NodeId id = 0; id < t.nodes.size(); ++id) {
        const auto& node = t.nodes[id];
        if (node.is_leaf) continue;
        for (EdgeId e : node.label)
            if (!edge_separated(h, t, slots, id, e, detail))
                return fail_report(3, std::move(detail));
    }

    // (iv), edge part: labels partition E
    std::vector<char> labelled(m, 0);
    for (const auto& node : t.nodes) {
        if (node.is_leaf) continue;
        for (EdgeId e : node.label) {
            if (labelled[e])
                return fail_report(4, "edge " + describe_edge(h, e) + " is labelled twice");
            labelled[e] = 1;
        }
    }
    for (EdgeId e = 0; e < m; ++e)
        if (!labelled[e])
            return fail_report(4, "edge " + describe_edge(h, e) + " appears in no label");

    return ValidationReport{};
}

ValidationReport validate_factor_tree(const Dihypergraph& h, const FactorTree& t) {
    auto is_leaf = [](const FactorTree::Node& n) { return n.kind != FactorTree::Kind::internal; };
    std::string detail;
    if (!check_structure(t, is_leaf, detail)) return fail_report(0, std::move(detail));

    const std::size_t n = h.vertex_count(), m = h.edge_count();
    for (NodeId id = 0; id < t.nodes.size(); ++id) {
        const auto& node = t.nodes[id];
        switch (node.kind) {
        case FactorTree::Kind::leaf:
            if (node.leaf >= n)
                return fail_report(1, "leaf node " + std::to_string(id) +
                                          " does not name a vertex of the instance");
            break;
        case FactorTree::Kind::factor: {
            if (node.factor_vertices.empty())
                return fail_report(1, "factor leaf " + std::to_string(id) + " has no vertices");
            std::vector<char> inside(n, 0);
            for (VertexId v : node.factor_vertices) {
                if (v >= n)
                    return fail_report(1, "factor leaf " + std::to_string(id) +
                                              " names a vertex outside the instance");
                inside[v] = 1;
            }
            UnionFind uf(n);
            for (EdgeId e : node.factor_edges) {
                if (e >= m)
                    return fail_report(1, "factor leaf " + std::to_string(id) +
                                              " names an edge outside the instance");
                const Edge& edge = h.edge(e);
                bool within = inside[edge.head];
                for (VertexId v : edge.body) within = within && inside[v];
                if (!within)
                    return fail_report(1, "factor leaf " + std::to_string(id) + ": edge " +
                                              describe_edge(h, e) +
                                              " leaves the leaf's ground set");
                if (edge.body.size() >= 2)
                    for (std::size_t i = 1; i < edge.body.size(); ++i)
                        uf.unite(edge.body[0], edge.body[i]);
            }
            VertexId root = uf.find(node.factor_vertices[0]);
            for (VertexId v : node.factor_vertices)
                if (uf.find(v) != root)
                    return fail_report(1, "factor leaf " + std::to_string(id) +
                                              " is not body-connected");
            break;
        }
        case FactorTree::Kind::internal:
            for (EdgeId e : node.label)
                if (e >= m)
                    return fail_report(2, "node " + std::to_string(id) +
                                              " labels an edge that is not in the instance");
            break;
        }
    }

    bool dup = false;
    VertexId dup_vertex = 0;
    auto slots = compute_slots(t, n, is_leaf,
                               [&](NodeId id, std::uint32_t slot, SlotIntervals& s) {
                                   const auto& node = t.nodes[id];
                                   auto place = [&](VertexId v) {
                                       if (s.slot_of_vertex[v] != UINT32_MAX && !dup) {
                                           dup = true;
                                           dup_vertex = v;
                                       }
                                       s.slot_of_vertex[v] = slot;
                                   };
                                   if (node.kind == FactorTree::Kind::leaf) place(node.leaf);
                                   else
                                       for (VertexId v : node.factor_vertices) place(v);
                               });
    if (dup)
        return fail_report(4, "vertex " + h.name(dup_vertex) + " occurs in more than one leaf");
    for (VertexId v = 0; v < n; ++v)
        if (slots.slot_of_vertex[v] == UINT32_MAX)
            return fail_report(4, "vertex " + h.name(v) + " occurs in no leaf");

    for (NodeId id = 0; id < t.nodes.size(); ++id) {
        const auto& node = t.nodes[id];
        if (node.kind != FactorTree::Kind::internal) continue;
        for (EdgeId e : node.label)
            if (!edge_separated(h, t, slots, id, e, detail))
                return fail_report(3, std::move(detail));
    }

    std::vector<char> covered(m, 0);
    auto mark = [&](EdgeId e, const char* what) -> std::optional<ValidationReport> {
        if (covered[e])
            return fail_report(4, std::string("edge ") + describe_edge(h, e) + " appears in " +
                                      what + " twice");
        covered[e] = 1;
        return std::nullopt;
    };
    for (const auto& node : t.nodes) {
        if (node.kind == FactorTree::Kind::internal) {
            for (EdgeId e : node.label)
                if (auto r = mark(e, "the labels")) return *r;
        } else if (node.kind == FactorTree::Kind::factor) {
            for (EdgeId e : node.factor_edges)
                if (auto r = mark(e, "the leaves")) return *r;
        }
    }
    for (EdgeId e = 0; e < m; ++e)
        if (!covered[e])
            return fail_report(4, "edge " + describe_edge(h, e) + " appears nowhere");

    return ValidationReport{};
}

RestrictedTree restrict_htree(const Dihypergraph& h, const HTree& t,
                              std::span<const VertexId> subset) {
    auto report = validate_htree(h, t);
    if (!report.ok)
        throw Error(errc::invalid_tree, "tree is not a valid decomposition: " + report.detail);
    auto vs = normalize_vertex_set(h, subset);
    if (vs.empty())
        throw Error(errc::empty_vertex_set, "restriction needs a nonempty vertex set");

    std::vector<VertexId> vmap(h.vertex_count(), UINT32_MAX);
    for (std::size_t i = 0; i < vs.size(); ++i) vmap[vs[i]] = static_cast<VertexId>(i);
    auto kept = edges_within(h, vs);
    std::vector<EdgeId> emap(h.edge_count(), UINT32_MAX);
    for (std::size_t i = 0; i < kept.size(); ++i) emap[kept[i]] = static_cast<EdgeId>(i);

    // post-order: child results first, contract single-sided nodes
    std::vector<NodeId> result(t.nodes.size(), no_node);
    std::vector<RawNode> raw;
    struct Item {
        NodeId id;
        bool exit;
    };
    std::vector<Item> stack{{t.root(), false}};
    while (!stack.empty()) {
        auto [id, exit] = stack.back();
        stack.pop_back();
        const auto& node = t.nodes[id];
        if (!exit) {
            if (node.is_leaf) {
                if (vmap[node.leaf] != UINT32_MAX) {
                    raw.push_back(
                        RawNode{RawNode::Kind::leaf, vmap[node.leaf], {}, no_node, no_node});
                    result[id] = static_cast<NodeId>(raw.size() - 1);
                }
            } else {
                stack.push_back({id, true});
                stack.push_back({node.right, false});
                stack.push_back({node.left, false});
            }
            continue;
        }
        NodeId l = result[node.left], r = result[node.right];
        if (l != no_node && r != no_node) {
            std::vector<EdgeId> label;
            for (EdgeId e : node.label)
                if (emap[e] != UINT32_MAX) label.push_back(emap[e]);
            raw.push_back(RawNode{RawNode::Kind::internal, 0, std::move(label), l, r});
            result[id] = static_cast<NodeId>(raw.size() - 1);
        } else {
            result[id] = l != no_node ? l : r;
        }
    }

    RestrictedTree out{induced(h, vs), finalize_htree(std::move(raw), result[t.root()])};
    return out;
}

namespace {

Dihypergraph rebuild_from_parts(const Dihypergraph& h, const std::vector<char>& vertex_used,
                                const std::vector<char>& edge_used) {
    std::vector<VertexId> vmap(h.vertex_count(), UINT32_MAX);
    std::vector<std::string> names;
    for (VertexId v = 0; v < h.vertex_count(); ++v) {
        if (!vertex_used[v]) continue;
        vmap[v] = static_cast<VertexId>(names.size());
        names.push_back(h.name(v));
    }
    std::vector<Edge> edges;
    for (EdgeId e = 0; e < h.edge_count(); ++e) {
        if (!edge_used[e]) continue;
        Edge edge = h.edge(e);
        for (VertexId& b : edge.body) {
            if (vmap[b] == UINT32_MAX)
                throw Error(errc::inconsistent_tree,
                            "labelled edge references a vertex missing from the leaves");
            b = vmap[b];
        }
        if (vmap[edge.head] == UINT32_MAX)
            throw Error(errc::inconsistent_tree,
                        "labelled edge references a vertex missing from the leaves");
        edge.head = vmap[edge.head];
        edges.push_back(std::move(edge));
    }
    if (names.empty())
        throw Error(errc::inconsistent_tree, "tree has no leaves");
    return Dihypergraph(std::move(names), std::move(edges));
}

void note_vertex(std::vector<char>& used, VertexId v, std::size_t n) {
    if (v >= n) throw Error(errc::inconsistent_tree, "leaf vertex id out of range");
    if (used[v]) throw Error(errc::inconsistent_tree, "vertex appears in two leaves");
    used[v] = 1;
}

void note_edge(std::vector<char>& used, EdgeId e, std::size_t m) {
    if (e >= m) throw Error(errc::inconsistent_tree, "edge id out of range");
    if (used[e]) throw Error(errc::inconsistent_tree, "edge appears in two labels");
    used[e] = 1;
}

} // namespace

Dihypergraph reconstruct(const Dihypergraph& h, const HTree& t) {
    std::vector<char> vused(h.vertex_count(), 0), eused(h.edge_count(), 0);
    for (const auto& node : t.nodes) {
        if (node.is_leaf) note_vertex(vused, node.leaf, h.vertex_count());
        else
            for (EdgeId e : node.label) note_edge(eused, e, h.edge_count());
    }
    return rebuild_from_parts(h, vused, eused);
}

Dihypergraph reconstruct(const Dihypergraph& h, const FactorTree& t) {
    std::vector<char> vused(h.vertex_count(), 0), eused(h.edge_count(), 0);
    for (const auto& node : t.nodes) {
        switch (node.kind) {
        case FactorTree::Kind::leaf:
            note_vertex(vused, node.leaf, h.vertex_count());
            break;
        case FactorTree::Kind::factor:
            for (VertexId v : node.factor_vertices) note_vertex(vused, v, h.vertex_count());
            for (EdgeId e : node.factor_edges) note_edge(eused, e, h.edge_count());
            break;
        case FactorTree::Kind::internal:
            for (EdgeId e : node.label) note_edge(eused, e, h.edge_count());
            break;
        }
    }
    return rebuild_from_parts(h, vused, eused);
}

} // namespace hydec

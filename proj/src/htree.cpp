#include "hydec/htree.hpp"

#include <algorithm>

namespace hydec {

namespace {

template <typename Tree, typename LeafGroundFn, typename IsLeafFn>
std::vector<std::vector<VertexId>> grounds(const Tree& t, IsLeafFn is_leaf,
                                           LeafGroundFn leaf_ground) {
    std::vector<std::vector<VertexId>> out(t.nodes.size());
    struct Item {
        NodeId id;
        bool exit;
    };
    std::vector<Item> stack{{t.root(), false}};
    while (!stack.empty()) {
        auto [id, exit] = stack.back();
        stack.pop_back();
        const auto& n = t.nodes[id];
        if (!exit) {
            if (is_leaf(n)) {
                out[id] = leaf_ground(n);
            } else {
                stack.push_back({id, true});
                stack.push_back({n.right, false});
                stack.push_back({n.left, false});
            }
            continue;
        }
        const auto& l = out[n.left];
        const auto& r = out[n.right];
        out[id].resize(l.size() + r.size());
        std::merge(l.begin(), l.end(), r.begin(), r.end(), out[id].begin());
    }
    return out;
}

} // namespace

std::vector<std::vector<VertexId>> subtree_grounds(const HTree& t) {
    return grounds(
        t, [](const HTree::Node& n) { return n.is_leaf; },
        [](const HTree::Node& n) { return std::vector<VertexId>{n.leaf}; });
}

std::vector<std::vector<VertexId>> subtree_grounds(const FactorTree& t) {
    return grounds(
        t, [](const FactorTree::Node& n) { return n.kind != FactorTree::Kind::internal; },
        [](const FactorTree::Node& n) {
            if (n.kind == FactorTree::Kind::leaf) return std::vector<VertexId>{n.leaf};
            return n.factor_vertices;
        });
}

} // namespace hydec

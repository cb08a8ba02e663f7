#include "hydec/tree_io.hpp"

#include <map>
#include <sstream>

#include <json.hpp>

namespace hydec {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string edge_json(const Dihypergraph& h, EdgeId id) {
    const Edge& e = h.edge(id);
    std::string out = "{\"body\":[";
    for (std::size_t i = 0; i < e.body.size(); ++i) {
        if (i) out += ',';
        out += json_string(h.name(e.body[i]));
    }
    out += "],\"head\":";
    out += json_string(h.name(e.head));
    out += '}';
    return out;
}

std::string label_json(const Dihypergraph& h, const std::vector<EdgeId>& label) {
    std::string out = "[";
    for (std::size_t i = 0; i < label.size(); ++i) {
        if (i) out += ',';
        out += edge_json(h, label[i]);
    }
    out += ']';
    return out;
}

// Iterative writer: a work item is either literal text or a node to expand.
template <typename Tree, typename EmitNodeFn>
std::string write_tree(const Tree& t, EmitNodeFn emit) {
    struct Item {
        NodeId node = no_node;
        std::string text;
    };
    std::string out;
    std::vector<Item> stack;
    stack.push_back(Item{t.root(), {}});
    while (!stack.empty()) {
        Item item = std::move(stack.back());
        stack.pop_back();
        if (item.node == no_node) {
            out += item.text;
            continue;
        }
        emit(item.node, out, stack);
    }
    return out;
}

} // namespace

std::string edge_to_text(const Dihypergraph& h, EdgeId id) {
    const Edge& e = h.edge(id);
    std::string out = "(";
    for (std::size_t i = 0; i < e.body.size(); ++i) {
        if (i) out += ' ';
        out += h.name(e.body[i]);
    }
    out += " -> ";
    out += h.name(e.head);
    out += ')';
    return out;
}

std::string tree_to_json(const Dihypergraph& h, const HTree& t) {
    auto result = write_tree(t, [&](NodeId id, std::string& out, auto& stack) {
        const auto& n = t.node(id);
        if (n.is_leaf) {
            out += "{\"leaf\":" + json_string(h.name(n.leaf)) + "}";
            return;
        }
        out += "{\"label\":" + label_json(h, n.label) + ",\"left\":";
        using Item = std::remove_reference_t<decltype(stack.back())>;
        stack.push_back(Item{no_node, "}"});
        stack.push_back(Item{n.right, {}});
        stack.push_back(Item{no_node, ",\"right\":"});
        stack.push_back(Item{n.left, {}});
    });
    return result + "\n";
}

std::string tree_to_json(const Dihypergraph& h, const FactorTree& t) {
    auto result = write_tree(t, [&](NodeId id, std::string& out, auto& stack) {
        const auto& n = t.node(id);
        switch (n.kind) {
        case FactorTree::Kind::leaf:
            out += "{\"leaf\":" + json_string(h.name(n.leaf)) + "}";
            return;
        case FactorTree::Kind::factor: {
            out += "{\"factor\":{\"vertices\":[";
            for (std::size_t i = 0; i < n.factor_vertices.size(); ++i) {
                if (i) out += ',';
                out += json_string(h.name(n.factor_vertices[i]));
            }
            out += "],\"edges\":[";
            for (std::size_t i = 0; i < n.factor_edges.size(); ++i) {
                if (i) out += ',';
                out += edge_json(h, n.factor_edges[i]);
            }
            out += "]}}";
            return;
        }
        case FactorTree::Kind::internal:
            out += "{\"label\":" + label_json(h, n.label) + ",\"left\":";
            using Item = std::remove_reference_t<decltype(stack.back())>;
            stack.push_back(Item{no_node, "}"});
            stack.push_back(Item{n.right, {}});
            stack.push_back(Item{no_node, ",\"right\":"});
            stack.push_back(Item{n.left, {}});
            return;
        }
    });
    return result + "\n";
}

namespace {

std::string label_text(const Dihypergraph& h, const std::vector<EdgeId>& label) {
    std::string out = "{";
    for (std::size_t i = 0; i < label.size(); ++i) {
        if (i) out += ' ';
        out += edge_to_text(h, label[i]);
    }
    out += '}';
    return out;
}

template <typename Tree, typename LineFn>
std::string indented_tree(const Tree& t, LineFn line) {
    struct Item {
        NodeId id;
        int depth;
    };
    std::string out;
    std::vector<Item> stack{{t.root(), 0}};
    while (!stack.empty()) {
        auto [id, depth] = stack.back();
        stack.pop_back();
        out.append(static_cast<std::size_t>(depth) * 2, ' ');
        out += "- ";
        out += line(id);
        out += '\n';
        const auto& n = t.node(id);
        if (n.left != no_node) {
            stack.push_back({n.right, depth + 1});
            stack.push_back({n.left, depth + 1});
        }
    }
    return out;
}

} // namespace

std::string tree_to_text(const Dihypergraph& h, const HTree& t) {
    return indented_tree(t, [&](NodeId id) {
        const auto& n = t.node(id);
        if (n.is_leaf) return "leaf " + h.name(n.leaf);
        return "node " + label_text(h, n.label);
    });
}

std::string tree_to_text(const Dihypergraph& h, const FactorTree& t) {
    return indented_tree(t, [&](NodeId id) {
        const auto& n = t.node(id);
        switch (n.kind) {
        case FactorTree::Kind::leaf:
            return "leaf " + h.name(n.leaf);
        case FactorTree::Kind::factor: {
            std::string out = "factor {vertices:";
            for (VertexId v : n.factor_vertices) out += ' ' + h.name(v);
            out += "; edges:";
            for (EdgeId e : n.factor_edges) out += ' ' + edge_to_text(h, e);
            out += '}';
            return out;
        }
        default:
            return "node " + label_text(h, n.label);
        }
    });
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

template <typename Tree, typename LabelFn, typename IsLeafFn>
std::string dot_render(const Tree& t, LabelFn label, IsLeafFn is_leaf) {
    std::ostringstream os;
    os << "digraph decomposition {\n";
    for (NodeId id = 0; id < t.node_count(); ++id) {
        const auto& n = t.node(id);
        os << "  n" << id << " [shape=" << (is_leaf(n) ? "ellipse" : "box") << ", label=\""
           << dot_escape(label(id)) << "\"];\n";
    }
    for (NodeId id = 0; id < t.node_count(); ++id) {
        const auto& n = t.node(id);
        if (n.left == no_node) continue;
        os << "  n" << id << " -> n" << n.left << ";\n";
        os << "  n" << id << " -> n" << n.right << ";\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace

std::string tree_to_dot(const Dihypergraph& h, const HTree& t) {
    return dot_render(
        t,
        [&](NodeId id) {
            const auto& n = t.node(id);
            return n.is_leaf ? h.name(n.leaf) : label_text(h, n.label);
        },
        [](const HTree::Node& n) { return n.is_leaf; });
}

std::string tree_to_dot(const Dihypergraph& h, const FactorTree& t) {
    return dot_render(
        t,
        [&](NodeId id) {
            const auto& n = t.node(id);
            if (n.kind == FactorTree::Kind::leaf) return h.name(n.leaf);
            if (n.kind == FactorTree::Kind::internal) return label_text(h, n.label);
            std::string out = "factor:";
            for (VertexId v : n.factor_vertices) out += ' ' + h.name(v);
            return out;
        },
        [](const FactorTree::Node& n) { return n.kind != FactorTree::Kind::internal; });
}

namespace {

// Maps a (body names, head name) JSON edge to an edge id of h; nullopt when
// the edge is not part of the instance.
class EdgeResolver {
public:
    explicit EdgeResolver(const Dihypergraph& h) : h_(h) {
        for (EdgeId id = 0; id < h.edge_count(); ++id)
            index_.emplace(std::make_pair(h.edge(id).body, h.edge(id).head), id);
    }

    std::optional<EdgeId> resolve(const ordered_json& j) const {
        if (!j.is_object() || !j.contains("body") || !j.contains("head") ||
            !j["body"].is_array() || !j["head"].is_string())
            throw Error(errc::syntax_error, "edge objects need a \"body\" array and a \"head\"");
        std::vector<VertexId> body;
        for (const auto& b : j["body"]) {
            if (!b.is_string())
                throw Error(errc::syntax_error, "edge body entries must be strings");
            auto v = h_.find_vertex(b.get<std::string>());
            if (!v) return std::nullopt;
            body.push_back(*v);
        }
        auto head = h_.find_vertex(j["head"].get<std::string>());
        if (!head) return std::nullopt;
        std::sort(body.begin(), body.end());
        body.erase(std::unique(body.begin(), body.end()), body.end());
        auto it = index_.find(std::make_pair(std::move(body), *head));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

private:
    const Dihypergraph& h_;
    std::map<std::pair<std::vector<VertexId>, VertexId>, EdgeId> index_;
};

} // namespace

ValidationReport verify_json_tree(const Dihypergraph& h, const std::string& json_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(errc::syntax_error, std::string("tree is not valid JSON: ") + e.what());
    }

    EdgeResolver edges(h);
    FactorTree t;

    // depth-first construction; children are filled in after the parent so
    // node ids follow preorder
    struct Item {
        const ordered_json* j;
        NodeId parent;
        bool is_left;
    };
    std::vector<Item> stack{{&doc, no_node, false}};
    std::optional<ValidationReport> failure;
    auto fail = [&](int cond, std::string detail) {
        if (!failure) failure = ValidationReport{false, cond, std::move(detail)};
    };

    while (!stack.empty() && !failure) {
        auto [j, parent, is_left] = stack.back();
        stack.pop_back();
        if (!j->is_object())
            throw Error(errc::syntax_error, "tree nodes must be JSON objects");

        NodeId id = static_cast<NodeId>(t.nodes.size());
        t.nodes.emplace_back();
        if (parent != no_node) {
            if (is_left) t.nodes[parent].left = id;
            else
                t.nodes[parent].right = id;
        }
        FactorTree::Node& node = t.nodes[id];

        if (j->contains("leaf")) {
            if (!(*j)["leaf"].is_string())
                throw Error(errc::syntax_error, "\"leaf\" must be a string");
            auto v = h.find_vertex((*j)["leaf"].get<std::string>());
            if (!v) {
                fail(1, "leaf names unknown vertex '" + (*j)["leaf"].get<std::string>() + "'");
                continue;
            }
            node.kind = FactorTree::Kind::leaf;
            node.leaf = *v;
        } else if (j->contains("factor")) {
            const auto& f = (*j)["factor"];
            if (!f.is_object() || !f.contains("vertices") || !f.contains("edges") ||
                !f["vertices"].is_array() || !f["edges"].is_array())
                throw Error(errc::syntax_error,
                            "\"factor\" needs \"vertices\" and \"edges\" arrays");
            node.kind = FactorTree::Kind::factor;
            for (const auto& vn : f["vertices"]) {
                if (!vn.is_string())
                    throw Error(errc::syntax_error, "factor vertices must be strings");
                auto v = h.find_vertex(vn.get<std::string>());
                if (!v) {
                    fail(1, "factor leaf names unknown vertex '" + vn.get<std::string>() + "'");
                    break;
                }
                node.factor_vertices.push_back(*v);
            }
            if (failure) continue;
            for (const auto& je : f["edges"]) {
                auto e = edges.resolve(je);
                if (!e) {
                    fail(1, "factor leaf carries an edge that is not in the instance");
                    break;
                }
                node.factor_edges.push_back(*e);
            }
            if (failure) continue;
            std::sort(node.factor_vertices.begin(), node.factor_vertices.end());
            node.factor_vertices.erase(
                std::unique(node.factor_vertices.begin(), node.factor_vertices.end()),
                node.factor_vertices.end());
            std::sort(node.factor_edges.begin(), node.factor_edges.end());
            node.factor_edges.erase(
                std::unique(node.factor_edges.begin(), node.factor_edges.end()),
                node.factor_edges.end());
        } else if (j->contains("label") && j->contains("left") && j->contains("right")) {
            if (!(*j)["label"].is_array())
                throw Error(errc::syntax_error, "\"label\" must be an array of edges");
            node.kind = FactorTree::Kind::internal;
            for (const auto& je : (*j)["label"]) {
                auto e = edges.resolve(je);
                if (!e) {
                    fail(2, "label carries an edge that is not in the instance");
                    break;
                }
                node.label.push_back(*e);
            }
            if (failure) continue;
            std::sort(node.label.begin(), node.label.end());
            stack.push_back({&(*j)["right"], id, false});
            stack.push_back({&(*j)["left"], id, true});
        } else {
            throw Error(errc::syntax_error,
                        "tree node needs \"leaf\", \"factor\", or \"label\"/\"left\"/\"right\"");
        }
    }
    if (failure) return *failure;
    return validate_factor_tree(h, t);
}

std::string closure_system_to_text(const Dihypergraph& h, const ClosureSystem& f) {
    std::string out;
    for (std::uint64_t s : f.sets()) {
        out += '{';
        auto vs = mask_vertices(s);
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (i) out += ' ';
            out += h.name(vs[i]);
        }
        out += "}\n";
    }
    return out;
}

std::string closure_system_to_json(const Dihypergraph& h, const ClosureSystem& f) {
    std::string out = "[";
    bool first_set = true;
    for (std::uint64_t s : f.sets()) {
        if (!first_set) out += ',';
        first_set = false;
        out += '[';
        auto vs = mask_vertices(s);
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (i) out += ',';
            out += json_string(h.name(vs[i]));
        }
        out += ']';
    }
    out += "]\n";
    return out;
}

} // namespace hydec

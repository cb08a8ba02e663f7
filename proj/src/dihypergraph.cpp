#include "hydec/dihypergraph.hpp"

#include <algorithm>
#include <set>

namespace hydec {

namespace {

std::vector<VertexId> normalize_body(std::vector<VertexId> body) {
    std::sort(body.begin(), body.end());
    body.erase(std::unique(body.begin(), body.end()), body.end());
    return body;
}

} // namespace

Dihypergraph Dihypergraph::from_names(
    const std::vector<std::string>& vertex_names,
    const std::vector<std::pair<std::vector<std::string>, std::string>>& edge_specs) {
    std::vector<std::string> names;
    std::unordered_map<std::string, VertexId> index;
    names.reserve(vertex_names.size());
    for (const auto& n : vertex_names) {
        if (index.emplace(n, static_cast<VertexId>(names.size())).second)
            names.push_back(n);
    }
    if (names.empty())
        throw Error(errc::empty_vertex_set, "dihypergraph has no vertices");

    auto lookup = [&](const std::string& n) -> VertexId {
        auto it = index.find(n);
        if (it == index.end())
            throw Error(errc::unknown_vertex, "unknown vertex '" + n + "'");
        return it->second;
    };

    std::vector<Edge> edges;
    edges.reserve(edge_specs.size());
    for (const auto& [body_names, head_name] : edge_specs) {
        Edge e;
        e.body.reserve(body_names.size());
        for (const auto& b : body_names) e.body.push_back(lookup(b));
        e.head = lookup(head_name);
        edges.push_back(std::move(e));
    }
    return Dihypergraph(std::move(names), std::move(edges));
}

Dihypergraph::Dihypergraph(std::vector<std::string> names, std::vector<Edge> edges)
    : names_(std::move(names)) {
    if (names_.empty())
        throw Error(errc::empty_vertex_set, "dihypergraph has no vertices");
    index_.reserve(names_.size());
    for (VertexId v = 0; v < names_.size(); ++v) {
        if (!index_.emplace(names_[v], v).second)
            throw Error(errc::unknown_vertex, "duplicate vertex name '" + names_[v] + "'");
    }

    const auto n = static_cast<VertexId>(names_.size());
    edges_.reserve(edges.size());
    std::set<std::pair<std::vector<VertexId>, VertexId>> seen;
    for (Edge& e : edges) {
        if (e.body.empty())
            throw Error(errc::empty_body, "edge has an empty body");
        for (VertexId b : e.body)
            if (b >= n) throw Error(errc::unknown_vertex, "edge body references vertex out of range");
        if (e.head >= n)
            throw Error(errc::unknown_vertex, "edge head references vertex out of range");
        e.body = normalize_body(std::move(e.body));
        if (std::binary_search(e.body.begin(), e.body.end(), e.head))
            throw Error(errc::head_in_body,
                        "edge head '" + names_[e.head] + "' occurs in its own body");
        if (seen.emplace(e.body, e.head).second)
            edges_.push_back(std::move(e));
    }
    build_incidence();
}

void Dihypergraph::build_incidence() {
    const std::size_t n = names_.size();
    body_offsets_.assign(n + 1, 0);
    head_offsets_.assign(n + 1, 0);
    for (const Edge& e : edges_) {
        for (VertexId b : e.body) ++body_offsets_[b + 1];
        ++head_offsets_[e.head + 1];
    }
    for (std::size_t i = 1; i <= n; ++i) {
        body_offsets_[i] += body_offsets_[i - 1];
        head_offsets_[i] += head_offsets_[i - 1];
    }
    body_incidence_.resize(body_offsets_[n]);
    head_incidence_.resize(head_offsets_[n]);
    std::vector<std::uint32_t> bpos(body_offsets_.begin(), body_offsets_.end() - 1);
    std::vector<std::uint32_t> hpos(head_offsets_.begin(), head_offsets_.end() - 1);
    for (EdgeId id = 0; id < edges_.size(); ++id) {
        for (VertexId b : edges_[id].body) body_incidence_[bpos[b]++] = id;
        head_incidence_[hpos[edges_[id].head]++] = id;
    }
}

std::optional<VertexId> Dihypergraph::find_vertex(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t Dihypergraph::size() const {
    std::size_t s = names_.size() + 1;
    for (const Edge& e : edges_) s += e.body.size();
    return s;
}

std::span<const EdgeId> Dihypergraph::body_edges(VertexId v) const {
    return {body_incidence_.data() + body_offsets_[v],
            body_incidence_.data() + body_offsets_[v + 1]};
}

std::span<const EdgeId> Dihypergraph::head_edges(VertexId v) const {
    return {head_incidence_.data() + head_offsets_[v],
            head_incidence_.data() + head_offsets_[v + 1]};
}

bool Dihypergraph::operator==(const Dihypergraph& other) const {
    auto sorted_names = [](const Dihypergraph& g) {
        std::vector<std::string> ns = g.names_;
        std::sort(ns.begin(), ns.end());
        return ns;
    };
    if (sorted_names(*this) != sorted_names(other)) return false;

    auto edge_key = [](const Dihypergraph& g, const Edge& e) {
        std::vector<std::string> body;
        body.reserve(e.body.size());
        for (VertexId b : e.body) body.push_back(g.names_[b]);
        std::sort(body.begin(), body.end());
        return std::make_pair(std::move(body), g.names_[e.head]);
    };
    std::set<std::pair<std::vector<std::string>, std::string>> a, b;
    for (const Edge& e : edges_) a.insert(edge_key(*this, e));
    for (const Edge& e : other.edges_) b.insert(edge_key(other, e));
    return a == b;
}

std::vector<VertexId> normalize_vertex_set(const Dihypergraph& h, std::span<const VertexId> vs) {
    std::vector<VertexId> out(vs.begin(), vs.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (!out.empty() && out.back() >= h.vertex_count())
        throw Error(errc::unknown_vertex, "vertex id out of range");
    return out;
}

std::vector<EdgeId> edges_within(const Dihypergraph& h, std::span<const VertexId> subset) {
    auto vs = normalize_vertex_set(h, subset);
    std::vector<char> inside(h.vertex_count(), 0);
    for (VertexId v : vs) inside[v] = 1;
    std::vector<EdgeId> out;
    for (EdgeId id = 0; id < h.edge_count(); ++id) {
        const Edge& e = h.edge(id);
        if (!inside[e.head]) continue;
        bool all = true;
        for (VertexId b : e.body)
            if (!inside[b]) { all = false; break; }
        if (all) out.push_back(id);
    }
    return out;
}

Dihypergraph induced(const Dihypergraph& h, std::span<const VertexId> subset) {
    auto vs = normalize_vertex_set(h, subset);
    if (vs.empty())
        throw Error(errc::empty_vertex_set, "induced subhypergraph needs a nonempty vertex set");

    std::vector<VertexId> remap(h.vertex_count(), 0);
    std::vector<std::string> names;
    names.reserve(vs.size());
    for (VertexId v : vs) {
        remap[v] = static_cast<VertexId>(names.size());
        names.push_back(h.name(v));
    }
    std::vector<Edge> edges;
    for (EdgeId id : edges_within(h, vs)) {
        Edge e = h.edge(id);
        for (VertexId& b : e.body) b = remap[b];
        e.head = remap[e.head];
        edges.push_back(std::move(e));
    }
    return Dihypergraph(std::move(names), std::move(edges));
}

std::vector<EdgeId> bipartite_part(const Dihypergraph& h,
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
        if (side[v] == 1)
            throw Error(errc::not_a_bipartition, "parts overlap");
        side[v] = 2;
    }

    std::vector<EdgeId> out;
    for (EdgeId id = 0; id < h.edge_count(); ++id) {
        const Edge& e = h.edge(id);
        // containment of e is read on body ∪ {head}
        bool all1 = side[e.head] == 1, all2 = side[e.head] == 2;
        for (VertexId v : e.body) {
            all1 = all1 && side[v] == 1;
            all2 = all2 && side[v] == 2;
        }
        if (!all1 && !all2) out.push_back(id);
    }
    return out;
}

} // namespace hydec

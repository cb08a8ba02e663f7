#include "hydec/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hydec/oracle.hpp"
#include "hydec/text_format.hpp"
#include "hydec/tree_io.hpp"

namespace hydec {

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(errc::syntax_error, "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<VertexId> resolve_names(const Dihypergraph& h, const std::vector<std::string>& names) {
    std::vector<VertexId> out;
    out.reserve(names.size());
    for (const auto& n : names) {
        auto v = h.find_vertex(n);
        if (!v) throw Error(errc::unknown_vertex, "unknown vertex '" + n + "'");
        out.push_back(*v);
    }
    return out;
}

std::string set_to_text(const Dihypergraph& h, std::span<const VertexId> vs) {
    std::string out = "{";
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += ' ';
        out += h.name(vs[i]);
    }
    out += '}';
    return out;
}

std::string set_to_json(const Dihypergraph& h, std::span<const VertexId> vs) {
    std::string out = "[";
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += ',';
        out += nlohmann::json(h.name(vs[i])).dump();
    }
    out += ']';
    return out;
}

const char* condition_name(int c) {
    switch (c) {
    case 1: return "i";
    case 2: return "ii";
    case 3: return "iii";
    case 4: return "iv";
    default: return "structure";
    }
}

const char* item_text(TheoremItem s) {
    switch (s) {
    case TheoremItem::holds: return "holds";
    case TheoremItem::not_applicable: return "does not apply";
    default: return "VIOLATION";
    }
}

std::string family_line(const Dihypergraph& h, const ClosureSystem& f) {
    std::string out;
    for (std::uint64_t s : f.sets()) {
        if (!out.empty()) out += ' ';
        out += set_to_text(h, mask_vertices(s));
    }
    return out;
}

int run_decompose(const Dihypergraph& h, const std::string& format, std::ostream& out) {
    auto tree = build_tree(h);
    if (!tree) {
        // witness: a body-connected ground set from the relaxed decomposition
        FactorTree ft = build_factor_tree(h);
        std::vector<VertexId> witness;
        for (const auto& n : ft.nodes) {
            if (n.kind == FactorTree::Kind::factor) {
                witness = n.factor_vertices;
                break;
            }
        }
        if (format == "json") {
            out << "{\"result\":\"fail\",\"witness\":" << set_to_json(h, witness) << "}\n";
        } else {
            out << "FAIL: body-connected\n";
            out << "witness: " << set_to_text(h, witness) << '\n';
        }
        return 1;
    }
    if (format == "json") out << tree_to_json(h, *tree);
    else if (format == "dot") out << tree_to_dot(h, *tree);
    else out << tree_to_text(h, *tree);
    return 0;
}

int run_factors(const Dihypergraph& h, const std::string& format, std::ostream& out) {
    FactorTree t = build_factor_tree(h);
    if (format == "json") out << tree_to_json(h, t);
    else if (format == "dot") out << tree_to_dot(h, t);
    else out << tree_to_text(h, t);
    return 0;
}

int run_closure(const Dihypergraph& h, const std::vector<std::string>& set_names,
                std::size_t limit, const std::string& format, std::ostream& out) {
    if (!set_names.empty()) {
        auto closed = forward_chain(h, resolve_names(h, set_names));
        if (format == "json") out << set_to_json(h, closed) << '\n';
        else out << set_to_text(h, closed) << '\n';
        return 0;
    }
    ClosureSystem f = enumerate_closed_sets(h, limit);
    if (format == "json") out << closure_system_to_json(h, f);
    else out << closure_system_to_text(h, f);
    return 0;
}

int run_verify(const Dihypergraph& h, const std::string& tree_text, std::ostream& out) {
    ValidationReport rep = verify_json_tree(h, tree_text);
    if (rep.ok) {
        out << "ok\n";
        return 0;
    }
    if (rep.condition == 0) out << "invalid: " << rep.detail << '\n';
    else
        out << "invalid: condition (" << condition_name(rep.condition) << "): " << rep.detail
            << '\n';
    return 1;
}

int run_check_split(const Dihypergraph& h, const std::vector<std::string>& u1_names,
                    std::size_t limit, const std::string& format, std::ostream& out) {
    auto u1 = normalize_vertex_set(h, resolve_names(h, u1_names));
    std::vector<char> in1(h.vertex_count(), 0);
    for (VertexId v : u1) in1[v] = 1;
    std::vector<VertexId> u2;
    for (VertexId v = 0; v < h.vertex_count(); ++v)
        if (!in1[v]) u2.push_back(v);

    SplitTheoremReport rep = check_split_theorem(h, u1, u2, limit);
    if (format == "json") {
        auto family_json = [&](const ClosureSystem& f) {
            std::string s = closure_system_to_json(h, f);
            if (!s.empty() && s.back() == '\n') s.pop_back();
            return s;
        };
        out << "{\"u1\":" << set_to_json(h, u1) << ",\"u2\":" << set_to_json(h, u2)
            << ",\"items\":{\"i\":\"" << item_text(rep.item_i) << "\",\"ii\":\""
            << item_text(rep.item_ii) << "\",\"iii\":\"" << item_text(rep.item_iii)
            << "\",\"iv\":\"" << item_text(rep.item_iv) << "\"},\"family\":"
            << family_json(rep.whole) << ",\"f1\":" << family_json(rep.part1)
            << ",\"f2\":" << family_json(rep.part2) << "}\n";
        return rep.any_violation() ? 1 : 0;
    }
    out << "split: " << set_to_text(h, u1) << " / " << set_to_text(h, u2) << '\n';
    out << "crossing edges:";
    for (EdgeId e : rep.crossing) out << ' ' << edge_to_text(h, e);
    out << '\n';
    out << "item (i): " << item_text(rep.item_i) << '\n';
    out << "item (ii): " << item_text(rep.item_ii) << '\n';
    out << "item (iii): " << item_text(rep.item_iii) << '\n';
    out << "item (iv): " << item_text(rep.item_iv) << '\n';
    out << "F (" << rep.whole.count() << " sets): " << family_line(h, rep.whole) << '\n';
    out << "F1 (" << rep.part1.count() << " sets): " << family_line(h, rep.part1) << '\n';
    out << "F2 (" << rep.part2.count() << " sets): " << family_line(h, rep.part2) << '\n';
    if (rep.any_violation()) out << "violation: " << rep.violation << '\n';
    return rep.any_violation() ? 1 : 0;
}

int run_check_corollary(const Dihypergraph& h, std::size_t limit, const std::string& format,
                        std::ostream& out) {
    CorollaryReport rep = check_meet_corollary(h, limit);
    bool holds = rep.meet_check.holds;
    if (format == "json") {
        out << "{\"leaves\":" << rep.leaf_count << ",\"system_size\":" << rep.system_size
            << ",\"product_size\":" << rep.product_size << ",\"meet_sublattice\":"
            << (holds ? "true" : "false") << "}\n";
        return holds ? 0 : 1;
    }
    out << "factor leaves: " << rep.leaf_count << '\n';
    out << "closure system: " << rep.system_size
        << " sets; product of factors: " << rep.product_size << " sets\n";
    out << "meet-sublattice: " << (holds ? "true" : "false") << '\n';
    if (!holds)
        out << "violation: " << rep.meet_check.reason << " at "
            << set_to_text(h, mask_vertices(rep.meet_check.witness_a)) << ", "
            << set_to_text(h, mask_vertices(rep.meet_check.witness_b)) << '\n';
    return holds ? 0 : 1;
}

int run_oracle(const Dihypergraph& h, std::ostream& out) {
    const std::size_t n = h.vertex_count();
    bool ran_any = false, all_agree = true;
    auto report = [&](const char* name, bool agree) {
        ran_any = true;
        all_agree = all_agree && agree;
        out << name << ": " << (agree ? "agree" : "MISMATCH") << '\n';
    };

    if (n <= oracle_component_limit) {
        report("components", body_connected_components(h) == oracle_body_components(h));
    } else {
        out << "components: skipped (instance too large)\n";
    }

    if (n >= 2 && n <= oracle_split_limit) {
        bool oracle_split = oracle_has_split(h).has_value();
        bool fast_split = find_split(h).has_value();
        bool connected = is_body_connected(h);
        report("split-existence", oracle_split == fast_split && fast_split == !connected);
    } else {
        out << "split-existence: skipped ("
            << (n < 2 ? "single vertex" : "instance too large") << ")\n";
    }

    if (n <= oracle_tree_limit) {
        report("decomposability", build_tree(h).has_value() == oracle_is_hdecomposable(h));
    } else {
        out << "decomposability: skipped (instance too large)\n";
    }

    if (n <= oracle_closure_limit) {
        report("closed-sets", enumerate_closed_sets(h) == oracle_closed_sets(h));
    } else {
        out << "closed-sets: skipped (instance too large)\n";
    }

    if (!ran_any)
        throw Error(errc::instance_too_large, "instance exceeds every oracle limit");
    return all_agree ? 0 : 1;
}

} // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"hierarchical decomposition of directed hypergraphs"};
    app.require_subcommand(1);

    std::string path, tree_path;
    std::string format = "text";
    std::size_t limit = default_ground_limit;
    std::vector<std::string> set_names, u1_names;

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("file", path, "instance file ('-' for stdin)")->required();
    };
    auto add_format = [&](CLI::App* cmd, std::vector<std::string> choices) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember(choices))
            ->capture_default_str();
    };
    auto add_limit = [&](CLI::App* cmd) {
        cmd->add_option("--limit", limit, "closed-set enumeration limit on |U|")
            ->capture_default_str();
    };

    CLI::App* decompose = app.add_subcommand("decompose", "compute the split decomposition tree");
    add_input(decompose);
    add_format(decompose, {"text", "json", "dot"});

    CLI::App* factors = app.add_subcommand("factors", "decompose into body-connected factors");
    add_input(factors);
    add_format(factors, {"text", "json", "dot"});

    CLI::App* closure = app.add_subcommand("closure", "closed sets, or the closure of --set");
    add_input(closure);
    add_format(closure, {"text", "json"});
    add_limit(closure);
    closure->add_option("--set", set_names, "close this vertex set instead of enumerating")
        ->delimiter(',');

    CLI::App* verify = app.add_subcommand("verify", "validate a serialized tree");
    add_input(verify);
    verify->add_option("tree", tree_path, "tree JSON file")->required();

    CLI::App* check_split = app.add_subcommand("check-split", "closure relations across a split");
    add_input(check_split);
    check_split->add_option("--u1", u1_names, "first side of the split")
        ->required()
        ->delimiter(',');
    add_format(check_split, {"text", "json"});
    add_limit(check_split);

    CLI::App* check_corollary =
        app.add_subcommand("check-corollary", "closure system vs product of its factors");
    add_input(check_corollary);
    add_format(check_corollary, {"text", "json"});
    add_limit(check_corollary);

    CLI::App* oracle = app.add_subcommand("oracle", "compare against brute-force references");
    add_input(oracle);

    std::vector<const char*> argv;
    argv.push_back("hydec");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream capture;
        int code = app.exit(e, out, capture);
        err << capture.str();
        return code == 0 ? 0 : 2;
    }

    try {
        Dihypergraph h = parse_instance(read_input(path));
        if (decompose->parsed()) return run_decompose(h, format, out);
        if (factors->parsed()) return run_factors(h, format, out);
        if (closure->parsed()) return run_closure(h, set_names, limit, format, out);
        if (verify->parsed()) return run_verify(h, read_input(tree_path), out);
        if (check_split->parsed()) return run_check_split(h, u1_names, limit, format, out);
        if (check_corollary->parsed()) return run_check_corollary(h, limit, format, out);
        if (oracle->parsed()) return run_oracle(h, out);
        err << "no command\n";
        return 2;
    } catch (const Error& e) {
        err << "error: ";
        if (e.line() > 0) err << path << ':' << e.line() << ':' << e.col() << ": ";
        err << e.what() << '\n';
        bool size_limit =
            e.code() == errc::ground_set_too_large || e.code() == errc::instance_too_large;
        return size_limit ? 3 : 2;
    }
}

} // namespace hydec

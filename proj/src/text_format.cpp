#include "hydec/text_format.hpp"

#include <sstream>
#include <vector>

namespace hydec {

namespace {

struct Token {
    std::string text;
    int line;
    int col;
};

// Whitespace-split tokens per line; a token starting with '#' drops the rest
// of its line.
std::vector<std::vector<Token>> tokenize(std::string_view text) {
    std::vector<std::vector<Token>> lines;
    std::vector<Token> current;
    int line = 1, col = 1;
    std::size_t i = 0;
    bool in_comment = false;
    while (i <= text.size()) {
        char c = i < text.size() ? text[i] : '\n';
        if (c == '\n') {
            if (!current.empty()) lines.push_back(std::move(current));
            current.clear();
            in_comment = false;
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (in_comment || c == ' ' || c == '\t' || c == '\r') {
            ++col;
            ++i;
            continue;
        }
        int start_col = col;
        std::string tok;
        while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\r' &&
               text[i] != '\n') {
            tok.push_back(text[i]);
            ++i;
            ++col;
        }
        if (tok[0] == '#') {
            in_comment = true;
            continue;
        }
        current.push_back(Token{std::move(tok), line, start_col});
    }
    return lines;
}

} // namespace

Dihypergraph parse_instance(std::string_view text) {
    auto lines = tokenize(text);
    if (lines.empty())
        throw Error(errc::syntax_error, "empty input: expected a 'vertices:' line", 1, 1);

    const auto& first = lines[0];
    if (first[0].text != "vertices:")
        throw Error(errc::syntax_error,
                    "expected 'vertices:' as the first line, got '" + first[0].text + "'",
                    first[0].line, first[0].col);
    if (first.size() == 1)
        throw Error(errc::empty_vertex_set, "the 'vertices:' line declares no vertices",
                    first[0].line, first[0].col);

    std::vector<std::string> names;
    for (std::size_t i = 1; i < first.size(); ++i) {
        if (first[i].text == "->")
            throw Error(errc::syntax_error, "'->' is not a valid vertex name", first[i].line,
                        first[i].col);
        names.push_back(first[i].text);
    }

    std::vector<std::pair<std::vector<std::string>, std::string>> specs;
    std::vector<Token> locs; // first body token of each edge, for diagnostics
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& ln = lines[li];
        if (ln[0].text == "vertices:")
            throw Error(errc::syntax_error, "duplicate 'vertices:' line", ln[0].line, ln[0].col);
        if (ln[0].text != "edge:")
            throw Error(errc::syntax_error, "expected 'edge:', got '" + ln[0].text + "'",
                        ln[0].line, ln[0].col);
        std::size_t arrow = 0;
        for (std::size_t i = 1; i < ln.size(); ++i)
            if (ln[i].text == "->") { arrow = i; break; }
        if (arrow == 0)
            throw Error(errc::syntax_error, "edge line has no '->'", ln[0].line, ln[0].col);
        if (arrow == 1)
            throw Error(errc::empty_body, "edge has an empty body", ln[0].line, ln[0].col);
        if (arrow + 1 >= ln.size())
            throw Error(errc::syntax_error, "edge has no head after '->'", ln[arrow].line,
                        ln[arrow].col);
        if (arrow + 2 < ln.size())
            throw Error(errc::syntax_error, "edge has more than one head", ln[arrow + 2].line,
                        ln[arrow + 2].col);
        std::vector<std::string> body;
        for (std::size_t i = 1; i < arrow; ++i) body.push_back(ln[i].text);
        specs.emplace_back(std::move(body), ln[arrow + 1].text);
        locs.push_back(ln[0]);
    }

    // rebuild construction errors with the offending line attached
    try {
        return Dihypergraph::from_names(names, specs);
    } catch (const Error& e) {
        if (e.code() == errc::unknown_vertex || e.code() == errc::head_in_body) {
            // locate the first edge line that triggers the same error
            for (std::size_t i = 0; i < specs.size(); ++i) {
                try {
                    Dihypergraph::from_names(names, {specs[i]});
                } catch (const Error& inner) {
                    if (inner.code() == e.code())
                        throw Error(e.code(), inner.what(), locs[i].line, locs[i].col);
                }
            }
        }
        throw;
    }
}

std::string serialize_instance(const Dihypergraph& h) {
    std::ostringstream os;
    os << "vertices:";
    for (const auto& n : h.names()) os << ' ' << n;
    os << '\n';
    for (const Edge& e : h.edges()) {
        os << "edge:";
        for (VertexId b : e.body) os << ' ' << h.name(b);
        os << " -> " << h.name(e.head) << '\n';
    }
    return os.str();
}

} // namespace hydec

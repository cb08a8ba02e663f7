#pragma once

#include <stdexcept>
#include <string>

namespace hydec {

enum class errc {
    empty_vertex_set,
    empty_body,
    head_in_body,
    unknown_vertex,
    not_a_bipartition,
    too_few_vertices,
    not_a_split,
    ground_set_too_large,
    instance_too_large,
    overlapping_grounds,
    not_a_member,
    invalid_tree,
    inconsistent_tree,
    syntax_error,
};

// Single exception type for all domain errors; parse errors carry a
// 1-based line/column, everything else leaves them at 0.
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}
    Error(errc code, const std::string& msg, int line, int col)
        : std::runtime_error(msg), code_(code), line_(line), col_(col) {}

    errc code() const noexcept { return code_; }
    int line() const noexcept { return line_; }
    int col() const noexcept { return col_; }

private:
    errc code_;
    int line_ = 0;
    int col_ = 0;
};

} // namespace hydec

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hydec {

// Full command dispatch behind the `hydec` binary; `args` excludes the
// program name. Exit codes: 0 success, 1 valid negative answer (FAIL,
// invalid tree, failed check, oracle mismatch), 2 parse/usage errors,
// 3 size-limit errors.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hydec

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "h3/fgab.hpp"
#include "h3/group.hpp"
#include "json.hpp"

namespace h3::cli {

enum ExitCode { ok = 0, assertion_failure = 1, usage_error = 2, resource_limit = 3 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// A group file (table or permutation generators), a built-in name such as Q8,
// D4, Heis27 or central_square_32, or an abelian description such as Z/2+Z/4.
FiniteGroup resolve_group(const std::string& spec);
std::vector<std::string> builtin_group_names();
FiniteGroup builtin_group(const std::string& name);

// Cokernel of the bar boundary d_n of g from the serial and the OpenMP sparse
// engine and, when the matrix has at most dense_limit entries, the dense
// reference, with timings and agreement.
nlohmann::ordered_json bench_snf(const FiniteGroup& g, size_t n, size_t dense_limit = 4'000'000);
// Bar boundary d_n of g built in parallel and serially, with timings and equality.
nlohmann::ordered_json bench_bar_boundary(const FiniteGroup& g, size_t n);

} // namespace h3::cli

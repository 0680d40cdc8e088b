#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "confrac/problems.hpp"
#include "confrac/solvers.hpp"

namespace confrac {

/// Column-named numeric table; empty optionals are written as empty fields.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;
};

/// 17 significant digits, shortest %g form.
std::string format_double(double x);

std::string to_csv(const Table& table);
void write_csv(const Table& table, const std::string& path);

/// t,y_num[,y_exact,abs_err]
Table trace_table(const SolutionTrace& trace, const std::optional<ExactSolution>& exact,
                  Alpha alpha);

inline constexpr std::size_t default_marker_stride = 90;

struct SvgOptions {
    std::size_t marker_stride = default_marker_stride;
    std::string title;
};

/// Line for the numeric trace, hollow circle markers for the exact solution
/// at every marker_stride-th node.
std::string to_svg(const SolutionTrace& trace, const std::optional<ExactSolution>& exact,
                   Alpha alpha, const SvgOptions& options = {});
void write_svg(const SolutionTrace& trace, const std::optional<ExactSolution>& exact,
               Alpha alpha, const std::string& path, const SvgOptions& options = {});

/// `key = value` lines, `#` starts a comment. Throws io_error / invalid_argument_error.
std::map<std::string, std::string> parse_run_spec(const std::string& text);
std::map<std::string, std::string> load_run_spec(const std::string& path);

}  // namespace confrac

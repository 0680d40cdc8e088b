#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "confrac/core.hpp"
#include "confrac/solvers.hpp"

namespace confrac {

using ExactSolution = std::function<double(double t, Alpha alpha)>;

/// A built-in test equation T_a y = f(t, y; a) with its closed-form solution.
struct NamedProblem {
    std::string id;
    std::string equation;    // human readable, used by `confrac list`
    std::string exact_text;
    std::string description;
    std::function<double(double t, double y, Alpha alpha)> rhs;
    double y0;
    std::optional<ExactSolution> exact;
    std::optional<std::function<double(Alpha)>> domain_limit;
    /// Closed form of the same right-hand side read as a Caputo equation, if known.
    std::optional<ExactSolution> caputo_exact;

    /// Throws domain_error when tau reaches the domain limit.
    InitialValueProblem make_problem(Alpha alpha, double tau) const;
    CaputoProblem make_caputo_problem(Alpha alpha, double tau) const;

    /// 2 in general; example2 uses 1/2 at a = 0.5 and 0.8 * limit otherwise.
    double default_horizon(Alpha alpha) const;
};

/// expkernel, example1, example2, example3 (in that order).
const std::vector<NamedProblem>& builtin_problems();

/// Throws invalid_argument_error for an unknown id.
const NamedProblem& find_problem(const std::string& id);

/// exp(t^{a+1}/(a+1))
double exact_example1(double t, Alpha alpha);
/// tan(t^a/a); domain_error for t >= (a*pi/2)^{1/a}
double exact_example2(double t, Alpha alpha);
/// 1/(1+t^a)
double exact_example3(double t, Alpha alpha);
/// exp(t^a/a)
double exact_expkernel(double t, Alpha alpha);
/// (a*pi/2)^{1/a}
double example2_domain_limit(Alpha alpha);

/// E_a(z) = sum_k z^k / Gamma(a k + 1) for z >= 0.
double mittag_leffler(double z, Alpha alpha);

struct ErrorReport {
    double max_abs_error;
    double endpoint_abs_error;
    double endpoint_rel_error;
    std::size_t node_count;
};

inline constexpr double relative_error_floor = 1e-300;

ErrorReport error_report(const SolutionTrace& trace, const ExactSolution& exact, Alpha alpha);

/// Run `method` on a built-in problem. Caputo runs interpret the right-hand
/// side as a Caputo equation.
SolutionTrace solve_named(const NamedProblem& problem, Method method, Alpha alpha, double tau,
                          double h, const PcOptions& options = {});

/// The closed form matching `method` (exact for classical/conformable,
/// caputo_exact for caputo), if any.
std::optional<ExactSolution> exact_for(const NamedProblem& problem, Method method);

struct RefinementLevel {
    double h;
    double endpoint_abs_error;
    /// log2(e_{i-1}/e_i); empty on the first level or when either error is
    /// at the degenerate floor.
    std::optional<double> order;
};

inline constexpr double degenerate_error_floor = 1e-14;

/// Runs at h0, h0/2, ..., h0/2^{levels-1}. Levels may run concurrently; the
/// result is always in level order.
std::vector<RefinementLevel> refinement_study(const NamedProblem& problem, Method method,
                                              Alpha alpha, double tau, double h0,
                                              std::size_t levels);

/// The levels-1 orders of a refinement study; throws degenerate_order_error if
/// any endpoint error is <= degenerate_error_floor.
std::vector<double> empirical_order(const NamedProblem& problem, Method method, Alpha alpha,
                                    double tau, double h0, std::size_t levels);

/// Orders from a plain error sequence, same degenerate rule.
std::vector<double> orders_from_errors(const std::vector<double>& errors);

}  // namespace confrac

#include "confrac/problems.hpp"

#include <cmath>
#include <future>
#include <numbers>
#include <sstream>

namespace confrac {

double exact_example1(double t, Alpha alpha)
{
    const double p = alpha.value() + 1;
    return std::exp(std::pow(t, p) / p);
}

double example2_domain_limit(Alpha alpha)
{
    const double a = alpha.value();
    return std::pow(a * std::numbers::pi / 2, 1 / a);
}

double exact_example2(double t, Alpha alpha)
{
    const double limit = example2_domain_limit(alpha);
    if (!(t >= 0.0 && t < limit)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "tan(t^a/a) is only defined on [0, " << limit << "), got t = " << t;
        throw domain_error(msg.str());
    }
    const double a = alpha.value();
    return std::tan(std::pow(t, a) / a);
}

double exact_example3(double t, Alpha alpha) { return 1 / (1 + std::pow(t, alpha.value())); }

double exact_expkernel(double t, Alpha alpha)
{
    const double a = alpha.value();
    return std::exp(std::pow(t, a) / a);
}

double mittag_leffler(double z, Alpha alpha)
{
    if (z < 0.0)
        throw domain_error("mittag_leffler is only provided for z >= 0");
    if (z == 0.0)
        return 1.0;
    const double a = alpha.value();
    const double log_z = std::log(z);
    double sum = 1.0;
    double prev = 1.0;
    for (int k = 1; k < 100000; ++k) {
        const double term = std::exp(k * log_z - std::lgamma(a * k + 1));
        sum += term;
        if (term < prev && term <= 1e-17 * sum)
            break;
        prev = term;
    }
    return sum;
}

InitialValueProblem NamedProblem::make_problem(Alpha alpha, double tau) const
{
    InitialValueProblem p{[rhs = rhs, alpha](double t, double y) { return rhs(t, y, alpha); },
                          y0, tau, alpha, std::nullopt};
    if (domain_limit) {
        p.domain_limit = (*domain_limit)(alpha);
        if (tau >= *p.domain_limit) {
            std::ostringstream msg;
            msg.precision(17);
            msg << id << ": horizon " << tau << " reaches the domain limit " << *p.domain_limit
                << " for alpha = " << alpha.value();
            throw domain_error(msg.str());
        }
    }
    return p;
}

CaputoProblem NamedProblem::make_caputo_problem(Alpha alpha, double tau) const
{
    return {[rhs = rhs, alpha](double t, double y) { return rhs(t, y, alpha); }, y0, tau, alpha};
}

double NamedProblem::default_horizon(Alpha alpha) const
{
    if (!domain_limit)
        return 2.0;
    if (alpha.value() == 0.5)
        return 0.5;
    return 0.8 * (*domain_limit)(alpha);
}

const std::vector<NamedProblem>& builtin_problems()
{
    static const std::vector<NamedProblem> problems = [] {
        std::vector<NamedProblem> v;
        v.push_back({"expkernel", "T_α y = y, y(0) = 1", "y = exp(t^α/α)",
                     "eigenfunction of the conformable derivative",
                     [](double, double y, Alpha) { return y; }, 1.0, ExactSolution(exact_expkernel),
                     std::nullopt,
                     ExactSolution([](double t, Alpha a) {
                         return mittag_leffler(std::pow(t, a.value()), a);
                     })});
        v.push_back({"example1", "T_α y = t·y, y(0) = 1", "y = exp(t^(α+1)/(α+1))",
                     "linear, time-dependent coefficient",
                     [](double t, double y, Alpha) { return t * y; }, 1.0,
                     ExactSolution(exact_example1), std::nullopt, std::nullopt});
        v.push_back({"example2", "T_α y = 1 + y^2, y(0) = 0", "y = tan(t^α/α)",
                     "Riccati equation with a vertical asymptote",
                     [](double, double y, Alpha) { return 1 + y * y; }, 0.0,
                     ExactSolution(exact_example2), std::function<double(Alpha)>(example2_domain_limit),
                     std::nullopt});
        v.push_back({"example3", "T_α y = -α·y^2, y(0) = 1", "y = 1/(1 + t^α)",
                     "quadratic decay",
                     [](double, double y, Alpha a) { return -a.value() * y * y; }, 1.0,
                     ExactSolution(exact_example3), std::nullopt, std::nullopt});
        return v;
    }();
    return problems;
}

const NamedProblem& find_problem(const std::string& id)
{
    for (const auto& p : builtin_problems())
        if (p.id == id)
            return p;
    throw invalid_argument_error("unknown problem '" + id + "'");
}

ErrorReport error_report(const SolutionTrace& trace, const ExactSolution& exact, Alpha alpha)
{
    if (trace.values.size() != trace.grid.node_count())
        throw length_mismatch_error("trace values do not match its grid");
    double max_abs = 0.0;
    double last_abs = 0.0;
    double last_exact = 0.0;
    for (std::size_t j = 0; j < trace.values.size(); ++j) {
        const double e = exact(trace.grid.node(j), alpha);
        const double err = std::abs(trace.values[j] - e);
        max_abs = std::max(max_abs, err);
        last_abs = err;
        last_exact = e;
    }
    const double rel = last_abs / std::max(std::abs(last_exact), relative_error_floor);
    return {max_abs, last_abs, rel, trace.values.size()};
}

SolutionTrace solve_named(const NamedProblem& problem, Method method, Alpha alpha, double tau,
                          double h, const PcOptions& options)
{
    switch (method) {
    case Method::classical:
        return solve_classical_pc(problem.make_problem(alpha, tau), h, options);
    case Method::conformable:
        return solve_conformable_pc(problem.make_problem(alpha, tau), h, options);
    case Method::caputo:
        return solve_caputo_pc(problem.make_caputo_problem(alpha, tau), h, options);
    }
    throw invalid_argument_error("unknown method");
}

std::optional<ExactSolution> exact_for(const NamedProblem& problem, Method method)
{
    return method == Method::caputo ? problem.caputo_exact : problem.exact;
}

std::vector<double> orders_from_errors(const std::vector<double>& errors)
{
    std::vector<double> orders;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!(errors[i] > degenerate_error_floor)) {
            std::ostringstream msg;
            msg << "endpoint error " << errors[i] << " at level " << i
                << " is at the floating-point floor; order undefined";
            throw degenerate_order_error(msg.str());
        }
        if (i > 0)
            orders.push_back(std::log2(errors[i - 1] / errors[i]));
    }
    return orders;
}

std::vector<RefinementLevel> refinement_study(const NamedProblem& problem, Method method,
                                              Alpha alpha, double tau, double h0,
                                              std::size_t levels)
{
    if (levels < 2)
        throw invalid_argument_error("a refinement study needs at least 2 levels");
    const auto exact = exact_for(problem, method);
    if (!exact)
        throw invalid_argument_error(problem.id + " has no closed-form solution for the " +
                                     std::string(to_string(method)) + " formulation");
    if (method == Method::classical && !alpha.is_one())
        throw invalid_argument_error("the classical scheme requires alpha = 1");
    if (method != Method::caputo)
        (void)problem.make_problem(alpha, tau);
    make_grid(tau, h0);

    std::vector<std::future<RefinementLevel>> runs;
    double h = h0;
    for (std::size_t i = 0; i < levels; ++i, h /= 2) {
        runs.push_back(std::async(std::launch::async, [&problem, &exact, method, alpha, tau, h] {
            const auto trace = solve_named(problem, method, alpha, tau, h);
            const auto report = error_report(trace, *exact, alpha);
            return RefinementLevel{h, report.endpoint_abs_error, std::nullopt};
        }));
    }

    std::vector<RefinementLevel> out;
    for (auto& r : runs)
        out.push_back(r.get());
    for (std::size_t i = 1; i < out.size(); ++i) {
        const double prev = out[i - 1].endpoint_abs_error;
        const double curr = out[i].endpoint_abs_error;
        if (prev > degenerate_error_floor && curr > degenerate_error_floor)
            out[i].order = std::log2(prev / curr);
    }
    return out;
}

std::vector<double> empirical_order(const NamedProblem& problem, Method method, Alpha alpha,
                                    double tau, double h0, std::size_t levels)
{
    std::vector<double> errors;
    for (const auto& level : refinement_study(problem, method, alpha, tau, h0, levels))
        errors.push_back(level.endpoint_abs_error);
    return orders_from_errors(errors);
}

}  // namespace confrac

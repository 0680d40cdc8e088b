#include "confrac/solvers.hpp"

#include <cmath>
#include <sstream>

#include "confrac/quadrature.hpp"

namespace confrac {

namespace {

void guard(double y, std::size_t step, const char* role)
{
    if (!std::isfinite(y) || std::abs(y) > blow_up_threshold) {
        std::ostringstream msg;
        msg.precision(17);
        msg << role << " value " << y << " at step " << step << " is non-finite or exceeds "
            << blow_up_threshold;
        throw blow_up_error(msg.str(), step);
    }
}

void check_options(const PcOptions& options)
{
    if (options.corrector_iterations < 1)
        throw invalid_argument_error("corrector_iterations must be at least 1");
}

UniformGrid checked_grid(const InitialValueProblem& problem, double h)
{
    if (!problem.rhs)
        throw invalid_argument_error("problem has no right-hand side");
    if (problem.domain_limit && problem.horizon >= *problem.domain_limit) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "horizon " << problem.horizon << " reaches the solution's domain limit "
            << *problem.domain_limit;
        throw domain_error(msg.str());
    }
    return make_grid(problem.horizon, h);
}

struct ConformableScales {
    double predictor;  // h^a / a
    double corrector;  // h^a / (a (a+1))
};

ConformableScales conformable_scales(const UniformGrid& grid, Alpha alpha)
{
    const double a = alpha.value();
    const double predictor = std::pow(grid.step(), a) / a;
    return {predictor, predictor / (a + 1)};
}

}  // namespace

std::string_view to_string(Method m)
{
    switch (m) {
    case Method::classical:
        return "classical";
    case Method::conformable:
        return "conformable";
    case Method::caputo:
        return "caputo";
    }
    return "unknown";
}

Method parse_method(std::string_view name)
{
    if (name == "classical")
        return Method::classical;
    if (name == "conformable")
        return Method::conformable;
    if (name == "caputo")
        return Method::caputo;
    throw invalid_argument_error("unknown method '" + std::string(name) +
                                 "' (expected classical, conformable or caputo)");
}

SolutionTrace solve_classical_pc(const InitialValueProblem& problem, double h,
                                 const PcOptions& options)
{
    check_options(options);
    if (!problem.order.is_one())
        throw invalid_argument_error("the classical scheme requires order 1");
    const auto grid = checked_grid(problem, h);
    const auto& f = problem.rhs;
    const double step = grid.step();

    std::vector<double> y(grid.node_count());
    std::vector<double> yp(grid.intervals());
    y[0] = problem.y0;
    for (std::size_t j = 0; j < grid.intervals(); ++j) {
        const double t0 = grid.node(j);
        const double t1 = grid.node(j + 1);
        const double f0 = f(t0, y[j]);
        const double predicted = y[j] + step * f0;
        guard(predicted, j + 1, "predictor");

        double corrected = predicted;
        for (int it = 0; it < options.corrector_iterations; ++it)
            corrected = y[j] + step / 2 * (f0 + f(t1, corrected));
        guard(corrected, j + 1, "corrector");

        yp[j] = predicted;
        y[j + 1] = corrected;
    }
    return {grid, std::move(y), std::move(yp), Method::classical};
}

ConformablePcState conformable_initial_state(const InitialValueProblem& problem,
                                             const UniformGrid& grid)
{
    const auto scales = conformable_scales(grid, problem.order);
    const double f0 = problem.rhs(grid.node(0), problem.y0);
    // w_0 = a_0 = 1
    return {problem.y0 + scales.predictor * f0, problem.y0 + scales.corrector * f0, 0};
}

ConformableStepResult conformable_step(const ConformablePcState& state,
                                       const InitialValueProblem& problem,
                                       const UniformGrid& grid, std::size_t step_index,
                                       const PcOptions& options)
{
    check_options(options);
    if (step_index != state.step_index + 1 || step_index > grid.intervals())
        throw invalid_argument_error("conformable_step called out of sequence");

    const Alpha alpha = problem.order;
    const auto scales = conformable_scales(grid, alpha);
    const std::size_t n = step_index - 1;
    const double t = grid.node(step_index);

    const double predicted = state.predictor_accumulator;
    guard(predicted, step_index, "predictor");

    const double closing = scales.corrector * trapezoid_end_weight(n, alpha);
    double corrected = predicted;
    for (int it = 0; it < options.corrector_iterations; ++it)
        corrected = state.corrector_history + closing * problem.rhs(t, corrected);
    guard(corrected, step_index, "corrector");

    const double f = problem.rhs(t, corrected);
    ConformablePcState next{
        state.predictor_accumulator + scales.predictor * rectangle_weight(step_index, alpha) * f,
        state.corrector_history + scales.corrector * trapezoid_interior_weight(step_index, alpha) * f,
        step_index};
    return {next, corrected, predicted};
}

SolutionTrace solve_conformable_pc(const InitialValueProblem& problem, double h,
                                   const PcOptions& options)
{
    check_options(options);
    const auto grid = checked_grid(problem, h);

    std::vector<double> y(grid.node_count());
    std::vector<double> yp(grid.intervals());
    y[0] = problem.y0;
    auto state = conformable_initial_state(problem, grid);
    for (std::size_t i = 1; i <= grid.intervals(); ++i) {
        const auto r = conformable_step(state, problem, grid, i, options);
        state = r.state;
        y[i] = r.corrected;
        yp[i - 1] = r.predicted;
    }
    return {grid, std::move(y), std::move(yp), Method::conformable};
}

SolutionTrace solve_conformable_pc_direct(const InitialValueProblem& problem, double h,
                                          const PcOptions& options)
{
    check_options(options);
    const auto grid = checked_grid(problem, h);
    const Alpha alpha = problem.order;
    const auto& f = problem.rhs;
    const std::size_t steps = grid.intervals();

    const double a = alpha.value();
    const double ha = std::pow(grid.step(), a);
    const double predictor_scale = ha / a;
    const double corrector_scale = ha / (a * (a + 1));

    std::vector<double> w(steps), c(steps);
    for (std::size_t j = 0; j < steps; ++j) {
        w[j] = rectangle_weight(j, alpha);
        c[j] = trapezoid_interior_weight(j, alpha);
    }

    std::vector<double> y(grid.node_count());
    std::vector<double> yp(steps);
    std::vector<double> fv(grid.node_count());
    y[0] = problem.y0;
    fv[0] = f(grid.node(0), y[0]);
    for (std::size_t n = 0; n < steps; ++n) {
        const double t = grid.node(n + 1);
        double pred_sum = 0.0;
        double corr_sum = 0.0;
        for (std::size_t j = 0; j <= n; ++j) {
            pred_sum += w[j] * fv[j];
            corr_sum += c[j] * fv[j];
        }
        const double predicted = problem.y0 + predictor_scale * pred_sum;
        guard(predicted, n + 1, "predictor");

        const double closing = trapezoid_end_weight(n, alpha);
        double corrected = predicted;
        for (int it = 0; it < options.corrector_iterations; ++it)
            corrected = problem.y0 + corrector_scale * (corr_sum + closing * f(t, corrected));
        guard(corrected, n + 1, "corrector");

        yp[n] = predicted;
        y[n + 1] = corrected;
        fv[n + 1] = f(t, corrected);
    }
    return {grid, std::move(y), std::move(yp), Method::conformable};
}

SolutionTrace solve_caputo_pc(const CaputoProblem& problem, double h, const PcOptions& options)
{
    check_options(options);
    if (!problem.rhs)
        throw invalid_argument_error("problem has no right-hand side");
    const auto grid = make_grid(problem.horizon, h);
    const Alpha alpha = problem.order;
    const auto& f = problem.rhs;
    const std::size_t steps = grid.intervals();

    const double a = alpha.value();
    const double ha = std::pow(grid.step(), a);
    const double predictor_scale = ha / gamma(a + 1);
    const double corrector_scale = ha / gamma(a + 2);

    // Predictor weight of node j at step n is rect(n - j); corrector weight is
    // end(n) for j = 0 and interior(n + 1 - j) for 1 <= j <= n.
    std::vector<double> rect(steps), interior(steps + 1);
    for (std::size_t k = 0; k < steps; ++k)
        rect[k] = rectangle_weight(k, alpha);
    for (std::size_t k = 0; k <= steps; ++k)
        interior[k] = trapezoid_interior_weight(k, alpha);

    std::vector<double> y(grid.node_count());
    std::vector<double> yp(steps);
    std::vector<double> fv(grid.node_count());
    y[0] = problem.y0;
    fv[0] = f(grid.node(0), y[0]);
    for (std::size_t n = 0; n < steps; ++n) {
        const double t = grid.node(n + 1);
        double pred_sum = 0.0;
        double corr_sum = trapezoid_end_weight(n, alpha) * fv[0];
        for (std::size_t j = 0; j <= n; ++j)
            pred_sum += rect[n - j] * fv[j];
        for (std::size_t j = 1; j <= n; ++j)
            corr_sum += interior[n + 1 - j] * fv[j];

        const double predicted = problem.y0 + predictor_scale * pred_sum;
        guard(predicted, n + 1, "predictor");

        double corrected = predicted;
        for (int it = 0; it < options.corrector_iterations; ++it)
            corrected = problem.y0 + corrector_scale * (corr_sum + f(t, corrected));
        guard(corrected, n + 1, "corrector");

        yp[n] = predicted;
        y[n + 1] = corrected;
        fv[n + 1] = f(t, corrected);
    }
    return {grid, std::move(y), std::move(yp), Method::caputo};
}

}  // namespace confrac

#include "confrac/core.hpp"

#include <cmath>
#include <sstream>

#include "confrac/quadrature.hpp"

namespace confrac {

Alpha::Alpha(double value) : value_(value)
{
    if (!(value > 0.0 && value <= 1.0)) {
        std::ostringstream msg;
        msg << "fractional order must lie in (0, 1], got " << value;
        throw out_of_range_error(msg.str(), value);
    }
}

Alpha make_alpha(double x) { return Alpha(x); }

UniformGrid::UniformGrid(double horizon, std::size_t intervals)
    : horizon_(horizon), intervals_(intervals), step_(horizon / static_cast<double>(intervals))
{
}

UniformGrid UniformGrid::with_intervals(double horizon, std::size_t intervals)
{
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw out_of_range_error("horizon must be positive and finite", horizon);
    if (intervals == 0)
        throw invalid_argument_error("a grid needs at least one interval");
    return UniformGrid(horizon, intervals);
}

double UniformGrid::node(std::size_t j) const noexcept
{
    if (j >= intervals_)
        return horizon_;
    return static_cast<double>(j) * step_;
}

std::vector<double> UniformGrid::nodes() const
{
    std::vector<double> t(node_count());
    for (std::size_t j = 0; j < t.size(); ++j)
        t[j] = node(j);
    return t;
}

UniformGrid make_grid(double tau, double h)
{
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw out_of_range_error("horizon must be positive and finite", tau);
    if (!(h > 0.0) || !std::isfinite(h))
        throw out_of_range_error("step must be positive and finite", h);

    const double ratio = tau / h;
    const double panels = std::round(ratio);
    if (panels < 1.0 || std::abs(ratio - panels) > grid_relative_tolerance * panels) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "step " << h << " does not divide horizon " << tau << " (ratio " << ratio << ")";
        throw non_commensurate_error(msg.str());
    }
    return UniformGrid::with_intervals(tau, static_cast<std::size_t>(panels));
}

double conformable_derivative_numeric(const ScalarFunction& g, double t, Alpha alpha,
                                      std::optional<double> delta)
{
    if (!(t > 0.0))
        throw domain_error("numeric conformable derivative needs t > 0");
    const double d = delta.value_or(1e-6 * std::max(1.0, std::abs(t)));
    if (!(d > 0.0) || d >= t)
        throw domain_error("difference half-width must satisfy 0 < delta < t");

    const double slope = (g(t + d) - g(t - d)) / (2.0 * d);
    return std::pow(t, 1.0 - alpha.value()) * slope;
}

double conformable_integral_numeric(const ScalarFunction& g, double tau, Alpha alpha,
                                    std::size_t n)
{
    const auto grid = UniformGrid::with_intervals(tau, n + 1);
    std::vector<double> samples(grid.node_count());
    for (std::size_t j = 0; j < samples.size(); ++j)
        samples[j] = g(grid.node(j));
    return integrate_trapezoid(samples, grid.step(), alpha);
}

}  // namespace confrac

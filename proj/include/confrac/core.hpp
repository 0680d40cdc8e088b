#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "confrac/errors.hpp"

namespace confrac {

/// Fractional order, always in (0, 1].
class Alpha {
public:
    explicit Alpha(double value);
    double value() const noexcept { return value_; }
    bool is_one() const noexcept { return value_ == 1.0; }

    friend bool operator==(const Alpha&, const Alpha&) = default;

private:
    double value_;
};

Alpha make_alpha(double x);

/// Uniform subdivision t_j = j*h of [0, tau] with intervals() = n+1 panels
/// and node_count() = n+2 nodes.
class UniformGrid {
public:
    /// Grid with exactly `intervals` panels; intervals >= 1.
    static UniformGrid with_intervals(double horizon, std::size_t intervals);

    double step() const noexcept { return step_; }
    double horizon() const noexcept { return horizon_; }
    std::size_t intervals() const noexcept { return intervals_; }
    std::size_t node_count() const noexcept { return intervals_ + 1; }

    /// j*h, except the last node which is pinned to the horizon.
    double node(std::size_t j) const noexcept;
    std::vector<double> nodes() const;

private:
    UniformGrid(double horizon, std::size_t intervals);

    double horizon_;
    std::size_t intervals_;
    double step_;
};

inline constexpr double grid_relative_tolerance = 1e-9;

/// Grid on [0, tau] with step h; throws non_commensurate_error unless tau/h
/// is an integer to within grid_relative_tolerance.
UniformGrid make_grid(double tau, double h);

using ScalarFunction = std::function<double(double)>;

/// t^{1-alpha} * g'(t) with g' taken as the symmetric difference quotient of
/// half-width delta (default 1e-6 * max(1, |t|)). Requires 0 < delta < t.
double conformable_derivative_numeric(const ScalarFunction& g, double t, Alpha alpha,
                                      std::optional<double> delta = std::nullopt);

/// Product-trapezoid approximation of the integral of x^{alpha-1} g(x) over
/// [0, tau] on n+2 nodes.
double conformable_integral_numeric(const ScalarFunction& g, double tau, Alpha alpha,
                                    std::size_t n);

}  // namespace confrac

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "confrac/core.hpp"

namespace confrac {

// Product rules for the singular kernel x^{alpha-1} on a uniform grid.
//
// Rectangle:  int_0^{(n+1)h} x^{a-1} g  ~  (h^a / a)       * sum_{j=0}^{n}   w_j g(t_j)
// Trapezoid:  int_0^{(n+1)h} x^{a-1} g  ~  (h^a / (a(a+1))) * sum_{j=0}^{n+1} a_j g(t_j)
//
// The single-index evaluators below are what the solvers use; interior
// trapezoid coefficients do not depend on n, only the closing one does.

enum class QuadratureRule { rectangle, trapezoid };

/// Index at which the coefficient evaluators leave the direct power
/// differences for the cancellation-free series.
inline constexpr std::size_t series_threshold = 2;

/// (j+1)^a - j^a
double rectangle_weight(std::size_t j, Alpha alpha);

/// 1 for j = 0, else (j-1)^{a+1} - 2 j^{a+1} + (j+1)^{a+1}.
double trapezoid_interior_weight(std::size_t j, Alpha alpha);

/// (a+1)(n+1)^a + n^{a+1} - (n+1)^{a+1}, the weight of node n+1.
double trapezoid_end_weight(std::size_t n, Alpha alpha);

struct QuadratureWeights {
    QuadratureRule rule;
    Alpha alpha;
    std::vector<double> coefficients;

    std::size_t count() const noexcept { return coefficients.size(); }

    /// h^a / a for the rectangle rule, h^a / (a(a+1)) for the trapezoid rule.
    double scale(double h) const;

    /// Compensated sum of the coefficients.
    double sum() const;

    /// scale(h) * sum_j coefficients[j] * samples[j]
    double apply(std::span<const double> samples, double h) const;
};

/// n+1 coefficients w_0 .. w_n.
QuadratureWeights rectangle_weights(std::size_t n, Alpha alpha);

/// n+2 coefficients a_0 .. a_{n+1}.
QuadratureWeights trapezoid_weights(std::size_t n, Alpha alpha);

/// samples = g(t_0) .. g(t_n)
double integrate_rectangle(std::span<const double> samples, double h, Alpha alpha);

/// samples = g(t_0) .. g(t_{n+1}); needs at least two samples.
double integrate_trapezoid(std::span<const double> samples, double h, Alpha alpha);

/// Euler Gamma function for x > 0.
double gamma(double x);

}  // namespace confrac

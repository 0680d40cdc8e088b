#include "confrac/quadrature.hpp"

#include <cmath>
#include <sstream>

namespace confrac {

namespace {

constexpr int max_series_terms = 200;
constexpr double series_tolerance = 1e-18;

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double power(std::size_t j, double exponent)
{
    return std::pow(static_cast<double>(j), exponent);
}

// (1+x)^a - 1 = sum_{k>=1} C(a,k) x^k; returns the sum divided by x.
double rectangle_series(double a, double x)
{
    double binom = a;
    double sum = binom;
    double xk = 1.0;
    for (int k = 2; k < max_series_terms; ++k) {
        binom *= (a - k + 1) / k;
        xk *= x;
        const double term = binom * xk;
        sum += term;
        if (std::abs(term) <= series_tolerance * std::abs(sum))
            break;
    }
    return sum;
}

// With p = a+1: (1-x)^p - 2 + (1+x)^p = 2 sum_{k>=1} C(p,2k) x^{2k}; returns
// the sum divided by x^2. Factors p - m + 1 are formed as a + 2 - m so that a
// enters exactly.
double second_difference_series(double a, double x)
{
    const double x2 = x * x;
    double binom = (a + 1) * a / 2;  // C(p, 2)
    double sum = 2 * binom;
    double xk = 1.0;
    for (int m = 3; m < max_series_terms; ++m) {
        binom *= (a + 2 - m) / m;
        if (m % 2 != 0)
            continue;
        xk *= x2;
        const double term = 2 * binom * xk;
        sum += term;
        if (std::abs(term) <= series_tolerance * std::abs(sum))
            break;
    }
    return sum;
}

// 1 + (1+x)^a (a x - 1) = sum_{k>=2} (a C(a,k-1) - C(a,k)) x^k; returns the sum divided by x^2.
double end_weight_series(double a, double x)
{
    double prev = a;                // C(a, 1)
    double curr = a * (a - 1) / 2;  // C(a, 2)
    double sum = a * prev - curr;
    double xk = 1.0;
    for (int k = 3; k < max_series_terms; ++k) {
        prev = curr;
        curr *= (a - k + 1) / k;
        xk *= x;
        const double term = (a * prev - curr) * xk;
        sum += term;
        if (std::abs(term) <= series_tolerance * std::abs(sum))
            break;
    }
    return sum;
}

}  // namespace

double rectangle_weight(std::size_t j, Alpha alpha)
{
    const double a = alpha.value();
    if (j < series_threshold)
        return power(j + 1, a) - power(j, a);
    const double x = 1.0 / static_cast<double>(j);
    return power(j, a - 1) * rectangle_series(a, x);
}

double trapezoid_interior_weight(std::size_t j, Alpha alpha)
{
    const double a = alpha.value();
    if (j == 0)
        return 1.0;
    if (j < series_threshold)
        return power(j - 1, a + 1) - 2 * power(j, a + 1) + power(j + 1, a + 1);
    const double x = 1.0 / static_cast<double>(j);
    return power(j, a - 1) * second_difference_series(a, x);
}

double trapezoid_end_weight(std::size_t n, Alpha alpha)
{
    const double a = alpha.value();
    if (n == 0)
        return a;
    if (n < series_threshold)
        return (a + 1) * power(n + 1, a) + power(n, a + 1) - power(n + 1, a + 1);
    const double x = 1.0 / static_cast<double>(n);
    return power(n, a - 1) * end_weight_series(a, x);
}

double QuadratureWeights::scale(double h) const
{
    const double a = alpha.value();
    const double ha = std::pow(h, a);
    return rule == QuadratureRule::rectangle ? ha / a : ha / (a * (a + 1));
}

double QuadratureWeights::sum() const
{
    CompensatedSum s;
    for (double c : coefficients)
        s.add(c);
    return s.value();
}

double QuadratureWeights::apply(std::span<const double> samples, double h) const
{
    if (samples.size() != coefficients.size()) {
        std::ostringstream msg;
        msg << "expected " << coefficients.size() << " samples, got " << samples.size();
        throw length_mismatch_error(msg.str());
    }
    CompensatedSum s;
    for (std::size_t j = 0; j < samples.size(); ++j)
        s.add(coefficients[j] * samples[j]);
    return scale(h) * s.value();
}

QuadratureWeights rectangle_weights(std::size_t n, Alpha alpha)
{
    QuadratureWeights w{QuadratureRule::rectangle, alpha, std::vector<double>(n + 1)};
    for (std::size_t j = 0; j <= n; ++j)
        w.coefficients[j] = rectangle_weight(j, alpha);
    return w;
}

QuadratureWeights trapezoid_weights(std::size_t n, Alpha alpha)
{
    QuadratureWeights w{QuadratureRule::trapezoid, alpha, std::vector<double>(n + 2)};
    for (std::size_t j = 0; j <= n; ++j)
        w.coefficients[j] = trapezoid_interior_weight(j, alpha);
    w.coefficients[n + 1] = trapezoid_end_weight(n, alpha);
    return w;
}

double integrate_rectangle(std::span<const double> samples, double h, Alpha alpha)
{
    if (samples.empty())
        throw length_mismatch_error("rectangle rule needs at least one sample");
    return rectangle_weights(samples.size() - 1, alpha).apply(samples, h);
}

double integrate_trapezoid(std::span<const double> samples, double h, Alpha alpha)
{
    if (samples.size() < 2)
        throw length_mismatch_error("trapezoid rule needs at least two samples");
    return trapezoid_weights(samples.size() - 2, alpha).apply(samples, h);
}

double gamma(double x)
{
    if (!(x > 0.0)) {
        std::ostringstream msg;
        msg << "gamma is only provided for x > 0, got " << x;
        throw domain_error(msg.str());
    }
    return std::tgamma(x);
}

}  // namespace confrac

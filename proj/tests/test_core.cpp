#include <cmath>

#include "confrac/core.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "rule_table.hpp"

using namespace confrac;

TEST_CASE("make_alpha accepts (0, 1] and rejects the rest")
{
    CHECK(make_alpha(0.5).value() == 0.5);
    CHECK(make_alpha(1.0).value() == 1.0);
    CHECK(make_alpha(1.0).is_one());

    for (double bad : {1.2, 0.0, -0.3, std::nan("")}) {
        try {
            make_alpha(bad);
            FAIL("expected out_of_range_error for " << bad);
        } catch (const out_of_range_error& e) {
            if (!std::isnan(bad))
                CHECK(e.value() == bad);
        }
    }
}

TEST_CASE("make_grid")
{
    SUBCASE("reference configuration")
    {
        const auto g = make_grid(2.0, 0.001);
        CHECK(g.node_count() == 2001);
        CHECK(g.node(g.node_count() - 1) == 2.0);
        CHECK(g.node(0) == 0.0);
    }
    SUBCASE("three nodes")
    {
        const auto g = make_grid(1.0, 0.5);
        CHECK(g.nodes() == std::vector<double>{0.0, 0.5, 1.0});
    }
    SUBCASE("non-commensurate")
    {
        CHECK_THROWS_AS(make_grid(1.0, 0.3), non_commensurate_error);
        CHECK_THROWS_AS(make_grid(1.0, 2.0), non_commensurate_error);
    }
    SUBCASE("bad arguments")
    {
        CHECK_THROWS_AS(make_grid(0.0, 0.1), out_of_range_error);
        CHECK_THROWS_AS(make_grid(1.0, -0.1), out_of_range_error);
    }
    SUBCASE("t_j = j h within tolerance")
    {
        const auto g = make_grid(0.7, 0.007);
        CHECK(g.intervals() == 100);
        for (std::size_t j = 0; j < g.node_count(); ++j)
            CHECK(std::abs(g.node(j) - j * 0.007) <= 1e-9 * 0.7);
    }
}

TEST_CASE("conformable_derivative_numeric examples")
{
    const Alpha a = make_alpha(0.5);
    // 3 * 4^{2.5} = 96
    CHECK(conformable_derivative_numeric([](double t) { return t * t * t; }, 4.0, a) ==
          doctest::Approx(96.0).epsilon(1e-8));
    CHECK(std::abs(conformable_derivative_numeric([](double) { return 7.0; }, 2.0, a)) < 1e-12);
    const auto eg = [](double t) { return std::exp(2 * std::sqrt(t)); };
    CHECK(conformable_derivative_numeric(eg, 1.0, a) == doctest::Approx(eg(1.0)).epsilon(1e-8));

    CHECK_THROWS_AS(conformable_derivative_numeric(eg, 0.0, a), domain_error);
    CHECK_THROWS_AS(conformable_derivative_numeric(eg, 1e-3, a, 1e-2), domain_error);
}

TEST_CASE("derivative rule table")
{
    for (double a : {0.3, 0.5, 0.9, 1.0}) {
        const Alpha alpha = make_alpha(a);
        for (const auto& rule : oracle::derivative_rules(a)) {
            for (double t : {0.25, 0.5, 1.0, 1.7}) {
                CAPTURE(rule.name);
                CAPTURE(a);
                CAPTURE(t);
                const double got = conformable_derivative_numeric(rule.g, t, alpha, 1e-5);
                CHECK(std::abs(got - rule.expected(t)) <= 1e-7 * std::max(1.0, std::abs(rule.expected(t))));
            }
        }
    }
}

TEST_CASE("derivative is linear in g")
{
    const Alpha a = make_alpha(0.4);
    const auto f = [](double t) { return std::sin(t); };
    const auto g = [](double t) { return t * t * std::exp(-t); };
    for (double t : {0.3, 1.0, 2.5}) {
        const double lhs =
            conformable_derivative_numeric([&](double x) { return 2.5 * f(x) - 1.5 * g(x); }, t, a, 1e-4);
        const double rhs = 2.5 * conformable_derivative_numeric(f, t, a, 1e-4) -
                           1.5 * conformable_derivative_numeric(g, t, a, 1e-4);
        CHECK(std::abs(lhs - rhs) <= 1e-10);
    }
}

TEST_CASE("conformable_integral_numeric examples")
{
    CHECK(oracle::rel_err(conformable_integral_numeric([](double) { return 1.0; }, 1.0, make_alpha(0.5), 9),
                          2.0) <= 1e-13);
    CHECK(oracle::rel_err(conformable_integral_numeric([](double x) { return x; }, 1.0, make_alpha(1.0), 9),
                          0.5) <= 1e-13);
    CHECK(oracle::rel_err(conformable_integral_numeric([](double x) { return x; }, 1.0, make_alpha(0.5), 9),
                          2.0 / 3.0) <= 1e-13);
}

TEST_CASE("inversion: T_a I^a g = g")
{
    for (double a : {0.5, 0.8}) {
        const Alpha alpha = make_alpha(a);
        for (auto g : {std::function<double(double)>([](double x) { return std::cos(x); }),
                       std::function<double(double)>([](double x) { return std::exp(-x) + x * x; })}) {
            const auto integral = [&](double t) { return conformable_integral_numeric(g, t, alpha, 4096); };
            for (double t : {0.25, 0.5, 1.0}) {
                const double got = conformable_derivative_numeric(integral, t, alpha, 1e-5);
                CHECK(std::abs(got - g(t)) <= 1e-4);
            }
        }
    }
}

TEST_CASE("fundamental identity: I^a T_a y = y - y(0)")
{
    const Alpha alpha = make_alpha(0.5);
    const auto y = [](double t) { return std::cos(t); };
    // Samples of T_a y; the t -> 0+ limit x^{1/2} * (-sin x) is 0.
    const auto ty = [&](double x) {
        return x == 0.0 ? 0.0 : conformable_derivative_numeric(y, x, alpha);
    };
    for (double t : {0.25, 0.5, 1.0}) {
        const double got = conformable_integral_numeric(ty, t, alpha, 4096);
        CHECK(std::abs(got - (y(t) - y(0))) <= 1e-6);
    }
}

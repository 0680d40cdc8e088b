#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "confrac/core.hpp"
#include "confrac/output.hpp"
#include "confrac/problems.hpp"
#include "confrac/quadrature.hpp"
#include "confrac/solvers.hpp"

namespace py = pybind11;
using namespace confrac;

namespace {

PcOptions options(int corrector_iterations)
{
    PcOptions o;
    o.corrector_iterations = corrector_iterations;
    return o;
}

std::optional<ExactSolution> exact_of(const py::object& exact)
{
    if (exact.is_none())
        return std::nullopt;
    return exact.cast<ExactSolution>();
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Predictor-corrector solvers for conformable fractional initial value problems.";

    auto base = py::register_exception<error>(m, "ConfracError", PyExc_ValueError);
    py::register_exception<out_of_range_error>(m, "OutOfRangeError", base);
    py::register_exception<non_commensurate_error>(m, "NonCommensurateError", base);
    py::register_exception<domain_error>(m, "DomainError", base);
    py::register_exception<length_mismatch_error>(m, "LengthMismatchError", base);
    py::register_exception<invalid_argument_error>(m, "InvalidArgumentError", base);
    py::register_exception<degenerate_order_error>(m, "DegenerateOrderError", base);
    py::register_exception<io_error>(m, "OutputError", PyExc_OSError);
    static py::exception<blow_up_error> blow_up(m, "BlowUpError", PyExc_ArithmeticError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const blow_up_error& e) {
            py::object err = py::reinterpret_borrow<py::object>(blow_up)(e.what());
            err.attr("step") = e.step();
            PyErr_SetObject(blow_up.ptr(), err.ptr());
        }
    });

    py::class_<Alpha>(m, "Alpha")
        .def(py::init<double>(), py::arg("value"))
        .def_property_readonly("value", &Alpha::value)
        .def("is_one", &Alpha::is_one)
        .def("__float__", &Alpha::value)
        .def("__eq__", [](const Alpha& a, const Alpha& b) { return a == b; })
        .def("__repr__", [](const Alpha& a) { return "Alpha(" + format_double(a.value()) + ")"; });
    py::implicitly_convertible<double, Alpha>();
    py::implicitly_convertible<int, Alpha>();

    py::class_<UniformGrid>(m, "UniformGrid")
        .def_static("with_intervals", &UniformGrid::with_intervals, py::arg("horizon"), py::arg("intervals"))
        .def_property_readonly("step", &UniformGrid::step)
        .def_property_readonly("horizon", &UniformGrid::horizon)
        .def_property_readonly("intervals", &UniformGrid::intervals)
        .def_property_readonly("node_count", &UniformGrid::node_count)
        .def("node", &UniformGrid::node, py::arg("j"))
        .def("nodes", &UniformGrid::nodes);
    m.def("make_grid", &make_grid, py::arg("tau"), py::arg("h"));

    m.def("conformable_derivative", &conformable_derivative_numeric, py::arg("g"), py::arg("t"),
          py::arg("alpha"), py::arg("delta") = py::none());
    m.def("conformable_integral", &conformable_integral_numeric, py::arg("g"), py::arg("tau"),
          py::arg("alpha"), py::arg("n"));

    py::enum_<QuadratureRule>(m, "QuadratureRule")
        .value("rectangle", QuadratureRule::rectangle)
        .value("trapezoid", QuadratureRule::trapezoid);

    py::class_<QuadratureWeights>(m, "QuadratureWeights")
        .def_readonly("rule", &QuadratureWeights::rule)
        .def_readonly("alpha", &QuadratureWeights::alpha)
        .def_readonly("coefficients", &QuadratureWeights::coefficients)
        .def("scale", &QuadratureWeights::scale, py::arg("h"))
        .def("sum", &QuadratureWeights::sum)
        .def("apply", [](const QuadratureWeights& w, const std::vector<double>& samples, double h) {
            return w.apply(samples, h);
        }, py::arg("samples"), py::arg("h"))
        .def("__len__", &QuadratureWeights::count);

    m.def("rectangle_weight", &rectangle_weight, py::arg("j"), py::arg("alpha"));
    m.def("trapezoid_interior_weight", &trapezoid_interior_weight, py::arg("j"), py::arg("alpha"));
    m.def("trapezoid_end_weight", &trapezoid_end_weight, py::arg("n"), py::arg("alpha"));
    m.def("rectangle_weights", &rectangle_weights, py::arg("n"), py::arg("alpha"));
    m.def("trapezoid_weights", &trapezoid_weights, py::arg("n"), py::arg("alpha"));
    m.def("integrate_rectangle", [](const std::vector<double>& samples, double h, Alpha alpha) {
        return integrate_rectangle(samples, h, alpha);
    }, py::arg("samples"), py::arg("h"), py::arg("alpha"));
    m.def("integrate_trapezoid", [](const std::vector<double>& samples, double h, Alpha alpha) {
        return integrate_trapezoid(samples, h, alpha);
    }, py::arg("samples"), py::arg("h"), py::arg("alpha"));
    m.def("gamma", &confrac::gamma, py::arg("x"));

    py::enum_<Method>(m, "Method")
        .value("classical", Method::classical)
        .value("conformable", Method::conformable)
        .value("caputo", Method::caputo);
    m.def("parse_method", &parse_method, py::arg("name"));

    py::class_<SolutionTrace>(m, "SolutionTrace")
        .def_readonly("grid", &SolutionTrace::grid)
        .def_readonly("values", &SolutionTrace::values)
        .def_readonly("predictors", &SolutionTrace::predictors)
        .def_readonly("method", &SolutionTrace::method)
        .def_property_readonly("t", [](const SolutionTrace& tr) { return tr.grid.nodes(); })
        .def("__len__", [](const SolutionTrace& tr) { return tr.values.size(); });

    m.def("solve_conformable", [](RightHandSide rhs, double y0, double horizon, Alpha alpha, double h,
                                  std::optional<double> domain_limit, int corrector_iterations) {
        return solve_conformable_pc({std::move(rhs), y0, horizon, alpha, domain_limit}, h,
                                    options(corrector_iterations));
    }, py::arg("rhs"), py::arg("y0"), py::arg("horizon"), py::arg("alpha"), py::arg("h"),
       py::arg("domain_limit") = py::none(), py::arg("corrector_iterations") = 1);

    m.def("solve_conformable_direct", [](RightHandSide rhs, double y0, double horizon, Alpha alpha, double h) {
        return solve_conformable_pc_direct({std::move(rhs), y0, horizon, alpha}, h);
    }, py::arg("rhs"), py::arg("y0"), py::arg("horizon"), py::arg("alpha"), py::arg("h"));

    m.def("solve_classical", [](RightHandSide rhs, double y0, double horizon, double h, int corrector_iterations) {
        return solve_classical_pc({std::move(rhs), y0, horizon, Alpha(1.0)}, h, options(corrector_iterations));
    }, py::arg("rhs"), py::arg("y0"), py::arg("horizon"), py::arg("h"), py::arg("corrector_iterations") = 1);

    m.def("solve_caputo", [](RightHandSide rhs, double y0, double horizon, Alpha alpha, double h,
                             int corrector_iterations) {
        return solve_caputo_pc({std::move(rhs), y0, horizon, alpha}, h, options(corrector_iterations));
    }, py::arg("rhs"), py::arg("y0"), py::arg("horizon"), py::arg("alpha"), py::arg("h"),
       py::arg("corrector_iterations") = 1);

    py::class_<NamedProblem>(m, "NamedProblem")
        .def_readonly("id", &NamedProblem::id)
        .def_readonly("equation", &NamedProblem::equation)
        .def_readonly("exact_text", &NamedProblem::exact_text)
        .def_readonly("description", &NamedProblem::description)
        .def_readonly("y0", &NamedProblem::y0)
        .def("rhs", [](const NamedProblem& p, double t, double y, Alpha a) { return p.rhs(t, y, a); },
             py::arg("t"), py::arg("y"), py::arg("alpha"))
        .def("exact", [](const NamedProblem& p, double t, Alpha a) -> std::optional<double> {
            if (!p.exact)
                return std::nullopt;
            return (*p.exact)(t, a);
        }, py::arg("t"), py::arg("alpha"))
        .def("domain_limit", [](const NamedProblem& p, Alpha a) -> std::optional<double> {
            if (!p.domain_limit)
                return std::nullopt;
            return (*p.domain_limit)(a);
        }, py::arg("alpha"))
        .def("default_horizon", &NamedProblem::default_horizon, py::arg("alpha"));

    m.def("builtin_problems", &builtin_problems, py::return_value_policy::reference);
    m.def("find_problem", &find_problem, py::arg("id"), py::return_value_policy::reference);
    m.def("mittag_leffler", &mittag_leffler, py::arg("z"), py::arg("alpha"));

    m.def("solve_named", [](const std::string& id, Method method, Alpha alpha, double tau, double h) {
        return solve_named(find_problem(id), method, alpha, tau, h);
    }, py::arg("problem"), py::arg("method"), py::arg("alpha"), py::arg("tau"), py::arg("h"));

    py::class_<ErrorReport>(m, "ErrorReport")
        .def_readonly("max_abs_error", &ErrorReport::max_abs_error)
        .def_readonly("endpoint_abs_error", &ErrorReport::endpoint_abs_error)
        .def_readonly("endpoint_rel_error", &ErrorReport::endpoint_rel_error)
        .def_readonly("node_count", &ErrorReport::node_count);
    m.def("error_report", [](const SolutionTrace& tr, ExactSolution exact, Alpha alpha) {
        return error_report(tr, exact, alpha);
    }, py::arg("trace"), py::arg("exact"), py::arg("alpha"));

    py::class_<RefinementLevel>(m, "RefinementLevel")
        .def_readonly("h", &RefinementLevel::h)
        .def_readonly("endpoint_abs_error", &RefinementLevel::endpoint_abs_error)
        .def_readonly("order", &RefinementLevel::order);
    m.def("refinement_study", [](const std::string& id, Method method, Alpha alpha, double tau, double h0,
                                 std::size_t levels) {
        return refinement_study(find_problem(id), method, alpha, tau, h0, levels);
    }, py::arg("problem"), py::arg("method"), py::arg("alpha"), py::arg("tau"), py::arg("h0"), py::arg("levels"));
    m.def("empirical_order", [](const std::string& id, Method method, Alpha alpha, double tau, double h0,
                                std::size_t levels) {
        return empirical_order(find_problem(id), method, alpha, tau, h0, levels);
    }, py::arg("problem"), py::arg("method"), py::arg("alpha"), py::arg("tau"), py::arg("h0"), py::arg("levels"));
    m.def("orders_from_errors", &orders_from_errors, py::arg("errors"));

    m.def("to_csv", [](const SolutionTrace& tr, const py::object& exact, Alpha alpha) {
        return to_csv(trace_table(tr, exact_of(exact), alpha));
    }, py::arg("trace"), py::arg("exact") = py::none(), py::arg("alpha") = Alpha(1.0));
    m.def("to_svg", [](const SolutionTrace& tr, const py::object& exact, Alpha alpha, std::size_t marker_stride,
                       const std::string& title) {
        return to_svg(tr, exact_of(exact), alpha, SvgOptions{marker_stride, title});
    }, py::arg("trace"), py::arg("exact") = py::none(), py::arg("alpha") = Alpha(1.0),
       py::arg("marker_stride") = default_marker_stride, py::arg("title") = "");

    m.attr("__version__") = "0.1.0";
}

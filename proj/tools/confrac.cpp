// confrac: solve conformable / Caputo / classical predictor-corrector runs on
// the built-in problems and write CSV or SVG artifacts.
//
// Exit codes: 0 success, 2 usage or domain error, 3 numerical blow-up.

#include <cmath>
#include <cstdio>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "confrac/output.hpp"
#include "confrac/problems.hpp"
#include "confrac/quadrature.hpp"
#include "confrac/solvers.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_blow_up = 3;

class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Values given on the command line win over the --spec file, which wins over defaults.
class Settings {
public:
    std::map<std::string, std::string> flags;
    std::map<std::string, std::string> file;

    std::optional<std::string> get(const std::string& key) const
    {
        if (auto it = flags.find(key); it != flags.end())
            return it->second;
        if (auto it = file.find(key); it != file.end())
            return it->second;
        return std::nullopt;
    }

    std::string text(const std::string& key, const std::string& fallback) const
    {
        return get(key).value_or(fallback);
    }

    std::string required(const std::string& key) const
    {
        auto v = get(key);
        if (!v || v->empty())
            throw usage_error("missing --" + key);
        return *v;
    }

    double number(const std::string& key, std::optional<double> fallback = std::nullopt) const
    {
        auto v = get(key);
        if (!v) {
            if (fallback)
                return *fallback;
            throw usage_error("missing --" + key);
        }
        return parse_number(key, *v);
    }

    std::size_t count(const std::string& key, std::size_t fallback) const
    {
        auto v = get(key);
        if (!v)
            return fallback;
        const double d = parse_number(key, *v);
        if (d < 0 || d != std::floor(d))
            throw usage_error("--" + key + " must be a non-negative integer, got '" + *v + "'");
        return static_cast<std::size_t>(d);
    }

private:
    static double parse_number(const std::string& key, const std::string& v)
    {
        try {
            std::size_t used = 0;
            const double d = std::stod(v, &used);
            if (used == v.size() && std::isfinite(d))
                return d;
        } catch (const std::exception&) {
        }
        throw usage_error("--" + key + " expects a number, got '" + v + "'");
    }
};

struct Subcommand {
    CLI::App* app;
    std::map<std::string, std::string> storage;
    std::string spec_path;
};

void add_flags(Subcommand& sc, const std::vector<std::pair<std::string, std::string>>& flags)
{
    for (const auto& [name, help] : flags)
        sc.app->add_option("--" + name, sc.storage[name], help);
    sc.app->add_option("--spec", sc.spec_path, "run-spec file with `key = value` lines");
}

Settings collect(const Subcommand& sc)
{
    Settings s;
    for (const auto& [name, value] : sc.storage)
        if (sc.app->count("--" + name) > 0)
            s.flags[name] = value;
    if (!sc.spec_path.empty()) {
        s.file = confrac::load_run_spec(sc.spec_path);
        for (const auto& [key, value] : s.file)
            if (!sc.storage.contains(key))
                throw usage_error("run spec key '" + key + "' is not valid for '" +
                                  sc.app->get_name() + "'");
    }
    return s;
}

confrac::Alpha alpha_from(const Settings& s, double fallback)
{
    return confrac::make_alpha(s.number("alpha", fallback));
}

std::string output_format(const Settings& s, const std::string& output)
{
    auto fmt = s.get("format");
    if (!fmt)
        return output.size() > 4 && output.substr(output.size() - 4) == ".svg" ? "svg" : "csv";
    if (*fmt != "csv" && *fmt != "svg")
        throw usage_error("--format must be csv or svg, got '" + *fmt + "'");
    return *fmt;
}

void emit_csv(const confrac::Table& table, const std::string& output)
{
    if (output == "-")
        std::cout << confrac::to_csv(table);
    else
        confrac::write_csv(table, output);
}

int cmd_list()
{
    for (const auto& p : confrac::builtin_problems()) {
        std::cout << p.id << " | " << p.equation << " | " << p.exact_text << " | "
                  << (p.domain_limit ? "domain limit (α·π/2)^(1/α)" : "no domain limit") << '\n';
    }
    return exit_ok;
}

int cmd_solve(const Settings& s)
{
    const auto& problem = confrac::find_problem(s.required("problem"));
    const auto method = confrac::parse_method(s.text("method", "conformable"));
    const auto alpha = alpha_from(s, method == confrac::Method::classical ? 1.0 : 0.5);
    const double tau = s.number("tau", problem.default_horizon(alpha));
    const double h = s.number("h", 0.001);
    const std::string output = s.required("output");
    const std::string format = output_format(s, output);
    const std::size_t stride = s.count("marker-stride", confrac::default_marker_stride);

    const auto trace = confrac::solve_named(problem, method, alpha, tau, h);
    const auto exact = confrac::exact_for(problem, method);

    if (format == "svg") {
        confrac::SvgOptions opt;
        opt.marker_stride = stride;
        std::ostringstream title;
        title << problem.id << ", " << confrac::to_string(method) << ", α = " << alpha.value();
        opt.title = title.str();
        confrac::write_svg(trace, exact, alpha, output, opt);
    } else {
        emit_csv(confrac::trace_table(trace, exact, alpha), output);
    }

    if (output != "-") {
        std::cout << "wrote " << trace.values.size() << " nodes to " << output;
        if (exact) {
            const auto r = confrac::error_report(trace, *exact, alpha);
            std::cout << " (max_abs_error " << confrac::format_double(r.max_abs_error)
                      << ", endpoint_abs_error " << confrac::format_double(r.endpoint_abs_error)
                      << ")";
        }
        std::cout << '\n';
    }
    return exit_ok;
}

int cmd_convergence(const Settings& s)
{
    const auto& problem = confrac::find_problem(s.required("problem"));
    const auto method = confrac::parse_method(s.text("method", "conformable"));
    const auto alpha = alpha_from(s, method == confrac::Method::classical ? 1.0 : 0.5);
    const double tau = s.number("tau", problem.default_horizon(alpha));
    const double h0 = s.number("h0", 0.04);
    const std::size_t levels = s.count("levels", 5);
    const std::string output = s.required("output");
    if (s.get("format") && *s.get("format") != "csv")
        throw usage_error("convergence only writes csv");

    const auto study = confrac::refinement_study(problem, method, alpha, tau, h0, levels);
    confrac::Table table{{"h", "endpoint_abs_error", "estimated_order"}, {}};
    for (const auto& level : study)
        table.rows.push_back({level.h, level.endpoint_abs_error, level.order});
    emit_csv(table, output);
    return exit_ok;
}

std::vector<confrac::Method> parse_methods(const std::string& list)
{
    std::vector<confrac::Method> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(confrac::parse_method(item));
    if (out.empty())
        throw usage_error("--methods needs at least one method");
    return out;
}

int cmd_compare(const Settings& s)
{
    const auto& problem = confrac::find_problem(s.required("problem"));
    const auto methods = parse_methods(s.text("methods", "conformable,caputo"));
    const auto alpha = alpha_from(s, 0.5);
    const double tau = s.number("tau", problem.default_horizon(alpha));
    const double h = s.number("h", 0.001);
    const std::string output = s.required("output");
    if (s.get("format") && *s.get("format") != "csv")
        throw usage_error("compare only writes csv");
    for (auto m : methods)
        if (m == confrac::Method::classical && !alpha.is_one())
            throw usage_error("the classical method requires --alpha 1");

    std::vector<std::future<confrac::SolutionTrace>> runs;
    for (auto m : methods)
        runs.push_back(std::async(std::launch::async, [&problem, m, alpha, tau, h] {
            return confrac::solve_named(problem, m, alpha, tau, h);
        }));
    std::vector<confrac::SolutionTrace> traces;
    for (auto& r : runs)
        traces.push_back(r.get());

    std::optional<confrac::ExactSolution> exact;
    for (auto m : methods)
        if (m != confrac::Method::caputo)
            exact = problem.exact;
    if (!exact)
        exact = problem.caputo_exact;

    confrac::Table table;
    table.columns.push_back("t");
    for (auto m : methods)
        table.columns.push_back("y_" + std::string(confrac::to_string(m)));
    if (exact)
        table.columns.push_back("y_exact");
    const auto& grid = traces.front().grid;
    for (std::size_t j = 0; j < grid.node_count(); ++j) {
        std::vector<std::optional<double>> row{grid.node(j)};
        for (const auto& tr : traces)
            row.push_back(tr.values[j]);
        if (exact)
            row.push_back((*exact)(grid.node(j), alpha));
        table.rows.push_back(std::move(row));
    }
    emit_csv(table, output);
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Predictor-corrector solvers for conformable fractional initial value problems"};
    app.require_subcommand(1);
    // --h is the step size, so help is long-form only.
    app.set_help_flag("--help", "Print this help message and exit");

    auto* list = app.add_subcommand("list", "list the built-in problems");

    Subcommand solve{app.add_subcommand("solve", "solve one problem and write CSV or SVG"), {}, {}};
    add_flags(solve, {{"problem", "built-in problem id"},
                      {"method", "classical | conformable | caputo"},
                      {"alpha", "fractional order in (0, 1]"},
                      {"h", "step size"},
                      {"tau", "horizon"},
                      {"output", "output path ('-' for stdout, csv only)"},
                      {"format", "csv | svg (default from extension)"},
                      {"marker-stride", "exact-solution marker stride for svg"}});

    Subcommand convergence{app.add_subcommand("convergence", "endpoint-error halving study"), {}, {}};
    add_flags(convergence, {{"problem", "built-in problem id"},
                            {"method", "classical | conformable | caputo"},
                            {"alpha", "fractional order in (0, 1]"},
                            {"tau", "horizon"},
                            {"h0", "coarsest step size"},
                            {"levels", "number of halvings (>= 2)"},
                            {"output", "output path ('-' for stdout)"},
                            {"format", "csv"}});

    Subcommand compare{app.add_subcommand("compare", "several methods on one grid"), {}, {}};
    add_flags(compare, {{"problem", "built-in problem id"},
                        {"methods", "comma separated method list"},
                        {"alpha", "fractional order in (0, 1]"},
                        {"tau", "horizon"},
                        {"h", "step size"},
                        {"output", "output path ('-' for stdout)"},
                        {"format", "csv"}});

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        if (argc <= 1)
            std::cerr << app.help();
        return exit_usage;
    }

    try {
        if (*list)
            return cmd_list();
        if (*solve.app)
            return cmd_solve(collect(solve));
        if (*convergence.app)
            return cmd_convergence(collect(convergence));
        if (*compare.app)
            return cmd_compare(collect(compare));
    } catch (const confrac::blow_up_error& e) {
        std::cerr << "confrac: blow-up at step " << e.step() << ": " << e.what() << '\n';
        return exit_blow_up;
    } catch (const confrac::error& e) {
        std::cerr << "confrac: " << e.what() << '\n';
        return exit_usage;
    } catch (const usage_error& e) {
        std::cerr << "confrac: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

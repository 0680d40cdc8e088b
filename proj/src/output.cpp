#include "confrac/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace confrac {

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string to_csv(const Table& table)
{
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c)
            out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw length_mismatch_error("table row width does not match the header");
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c)
                out += ',';
            if (row[c])
                out += format_double(*row[c]);
        }
        out += '\n';
    }
    return out;
}

namespace {

void write_file(const std::string& text, const std::string& path)
{
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw io_error("cannot open '" + path + "' for writing");
    os << text;
    os.flush();
    if (!os)
        throw io_error("failed writing '" + path + "'");
}

}  // namespace

void write_csv(const Table& table, const std::string& path) { write_file(to_csv(table), path); }

Table trace_table(const SolutionTrace& trace, const std::optional<ExactSolution>& exact,
                  Alpha alpha)
{
    Table table;
    table.columns = {"t", "y_num"};
    if (exact) {
        table.columns.push_back("y_exact");
        table.columns.push_back("abs_err");
    }
    table.rows.reserve(trace.values.size());
    for (std::size_t j = 0; j < trace.values.size(); ++j) {
        const double t = trace.grid.node(j);
        const double y = trace.values[j];
        std::vector<std::optional<double>> row{t, y};
        if (exact) {
            const double e = (*exact)(t, alpha);
            row.push_back(e);
            row.push_back(std::abs(y - e));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

// ─── SVG ────────────────────────────────────────────────────────────────────

namespace {

constexpr double svg_width = 800;
constexpr double svg_height = 600;
constexpr double plot_left = 80;
constexpr double plot_right = 770;
constexpr double plot_top = 50;
constexpr double plot_bottom = 530;

std::string num(double v, const char* fmt = "%.2f")
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

struct Range {
    double lo;
    double hi;
};

// Data extent with 5% padding on each side.
Range padded(double lo, double hi)
{
    if (hi <= lo) {
        const double d = lo == 0.0 ? 1.0 : std::abs(lo) * 0.05;
        return {lo - d, hi + d};
    }
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

std::vector<double> nice_ticks(Range r)
{
    const double raw = (r.hi - r.lo) / 5;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    const double step = (frac < 1.5 ? 1 : frac < 3 ? 2 : frac < 7 ? 5 : 10) * mag;
    std::vector<double> ticks;
    for (double v = std::ceil(r.lo / step) * step; v <= r.hi + 1e-9 * step; v += step)
        ticks.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    return ticks;
}

struct Mapping {
    Range x, y;
    double px(double v) const { return plot_left + (v - x.lo) / (x.hi - x.lo) * (plot_right - plot_left); }
    double py(double v) const { return plot_bottom - (v - y.lo) / (y.hi - y.lo) * (plot_bottom - plot_top); }
};

std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string to_svg(const SolutionTrace& trace, const std::optional<ExactSolution>& exact,
                   Alpha alpha, const SvgOptions& options)
{
    if (options.marker_stride == 0)
        throw invalid_argument_error("marker stride must be positive");

    const auto& ys = trace.values;
    std::vector<std::pair<double, double>> markers;
    if (exact)
        for (std::size_t j = 0; j < ys.size(); j += options.marker_stride) {
            const double t = trace.grid.node(j);
            markers.emplace_back(t, (*exact)(t, alpha));
        }

    auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
    double lo = *ymin, hi = *ymax;
    for (const auto& m : markers) {
        lo = std::min(lo, m.second);
        hi = std::max(hi, m.second);
    }
    const Mapping map{padded(0.0, trace.grid.horizon()), padded(lo, hi)};

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << svg_width
        << "\" height=\"" << svg_height << "\" viewBox=\"0 0 " << svg_width << ' ' << svg_height
        << "\">\n"
        << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!options.title.empty())
        svg << "  <text x=\"" << num((plot_left + plot_right) / 2) << "\" y=\"30\" "
            << "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
            << xml_escape(options.title) << "</text>\n";

    // grid and ticks
    svg << "  <g class=\"grid\" stroke=\"#d9d9d9\" stroke-width=\"1\">\n";
    const auto xt = nice_ticks(map.x);
    const auto yt = nice_ticks(map.y);
    for (double v : xt)
        svg << "    <line x1=\"" << num(map.px(v)) << "\" y1=\"" << num(plot_top) << "\" x2=\""
            << num(map.px(v)) << "\" y2=\"" << num(plot_bottom) << "\"/>\n";
    for (double v : yt)
        svg << "    <line x1=\"" << num(plot_left) << "\" y1=\"" << num(map.py(v)) << "\" x2=\""
            << num(plot_right) << "\" y2=\"" << num(map.py(v)) << "\"/>\n";
    svg << "  </g>\n";

    svg << "  <rect x=\"" << num(plot_left) << "\" y=\"" << num(plot_top) << "\" width=\""
        << num(plot_right - plot_left) << "\" height=\"" << num(plot_bottom - plot_top)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    svg << "  <g class=\"ticks\" font-family=\"sans-serif\" font-size=\"12\">\n";
    for (double v : xt)
        svg << "    <line x1=\"" << num(map.px(v)) << "\" y1=\"" << num(plot_bottom) << "\" x2=\""
            << num(map.px(v)) << "\" y2=\"" << num(plot_bottom + 5) << "\" stroke=\"black\"/>\n"
            << "    <text x=\"" << num(map.px(v)) << "\" y=\"" << num(plot_bottom + 20)
            << "\" text-anchor=\"middle\">" << num(v, "%.4g") << "</text>\n";
    for (double v : yt)
        svg << "    <line x1=\"" << num(plot_left - 5) << "\" y1=\"" << num(map.py(v)) << "\" x2=\""
            << num(plot_left) << "\" y2=\"" << num(map.py(v)) << "\" stroke=\"black\"/>\n"
            << "    <text x=\"" << num(plot_left - 8) << "\" y=\"" << num(map.py(v) + 4)
            << "\" text-anchor=\"end\">" << num(v, "%.4g") << "</text>\n";
    svg << "    <text x=\"" << num((plot_left + plot_right) / 2) << "\" y=\""
        << num(plot_bottom + 45) << "\" text-anchor=\"middle\">t</text>\n"
        << "    <text x=\"20\" y=\"" << num((plot_top + plot_bottom) / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
        << num((plot_top + plot_bottom) / 2) << ")\">y(t)</text>\n"
        << "  </g>\n";

    svg << "  <polyline class=\"numerical\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" "
           "points=\"";
    for (std::size_t j = 0; j < ys.size(); ++j) {
        if (j)
            svg << ' ';
        svg << num(map.px(trace.grid.node(j))) << ',' << num(map.py(ys[j]));
    }
    svg << "\"/>\n";

    if (!markers.empty()) {
        svg << "  <g class=\"exact\" fill=\"none\" stroke=\"red\" stroke-width=\"1.2\">\n";
        for (const auto& [t, y] : markers)
            svg << "    <circle cx=\"" << num(map.px(t)) << "\" cy=\"" << num(map.py(y))
                << "\" r=\"4\"/>\n";
        svg << "  </g>\n";
    }

    // legend
    const double lx = plot_left + 15, ly = plot_top + 15;
    const double lh = markers.empty() ? 28 : 48;
    svg << "  <g class=\"legend\" font-family=\"sans-serif\" font-size=\"13\">\n"
        << "    <rect x=\"" << num(lx) << "\" y=\"" << num(ly) << "\" width=\"170\" height=\""
        << num(lh) << "\" fill=\"white\" stroke=\"#999999\"/>\n"
        << "    <line x1=\"" << num(lx + 10) << "\" y1=\"" << num(ly + 16) << "\" x2=\""
        << num(lx + 40) << "\" y2=\"" << num(ly + 16)
        << "\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n"
        << "    <text x=\"" << num(lx + 48) << "\" y=\"" << num(ly + 20)
        << "\">Numerical solution</text>\n";
    if (!markers.empty())
        svg << "    <circle cx=\"" << num(lx + 25) << "\" cy=\"" << num(ly + 36)
            << "\" r=\"4\" fill=\"none\" stroke=\"red\" stroke-width=\"1.2\"/>\n"
            << "    <text x=\"" << num(lx + 48) << "\" y=\"" << num(ly + 40)
            << "\">Exact solution</text>\n";
    svg << "  </g>\n</svg>\n";
    return svg.str();
}

void write_svg(const SolutionTrace& trace, const std::optional<ExactSolution>& exact,
               Alpha alpha, const std::string& path, const SvgOptions& options)
{
    write_file(to_svg(trace, exact, alpha, options), path);
}

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::map<std::string, std::string> parse_run_spec(const std::string& text)
{
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        const std::string key = eq == std::string::npos ? "" : trim(line.substr(0, eq));
        if (key.empty())
            throw invalid_argument_error("run spec line " + std::to_string(lineno) +
                                         ": expected 'key = value'");
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

std::map<std::string, std::string> load_run_spec(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw io_error("cannot read run spec '" + path + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_run_spec(ss.str());
}

}  // namespace confrac

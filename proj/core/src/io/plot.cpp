#include <lenia_moqd/io/plot.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace lenia_moqd::io {

namespace {

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

void save(const std::filesystem::path& path, const std::string& svg)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << svg;
}

constexpr int kWidth = 640;
constexpr int kPanelHeight = 160;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;

} // namespace

void write_trajectory_svg(const std::filesystem::path& path, std::span<const evolve::GenerationLog> logs)
{
    struct Series {
        const char* label;
        const char* color;
        std::function<double(const evolve::GenerationLog&)> get;
    };
    const Series series[] = {
        {"f1 homeostasis", "#1f77b4", [](const auto& l) { return l.mean_f1; }},
        {"f2 distinctiveness", "#ff7f0e", [](const auto& l) { return l.mean_f2; }},
        {"f3 sparsity", "#2ca02c", [](const auto& l) { return l.mean_f3; }},
    };
    const int height = kPanelHeight * 3 + 40;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const double g_max = logs.empty() ? 1.0 : std::max(1, logs.back().generation);
    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    for (int p = 0; p < 3; ++p) {
        const auto& s = series[p];
        const double top = 10.0 + p * kPanelHeight;
        const double plot_h = kPanelHeight - 30.0;
        double lo = 0.0, hi = 0.0;
        if (!logs.empty()) {
            lo = hi = s.get(logs.front());
            for (const auto& l : logs) {
                lo = std::min(lo, s.get(l));
                hi = std::max(hi, s.get(l));
            }
        }
        if (hi - lo < 1e-12) {
            lo -= 0.5;
            hi += 0.5;
        }
        svg << "<rect x=\"" << kMarginLeft << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
            << "\" fill=\"none\" stroke=\"#888\"/>\n"
            << "<text x=\"" << kMarginLeft + 6 << "\" y=\"" << top + 14 << "\">" << s.label << "</text>\n"
            << "<text x=\"" << kMarginLeft - 4 << "\" y=\"" << top + 10 << "\" text-anchor=\"end\">" << num(hi)
            << "</text>\n"
            << "<text x=\"" << kMarginLeft - 4 << "\" y=\"" << top + plot_h << "\" text-anchor=\"end\">" << num(lo)
            << "</text>\n";
        svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& l : logs) {
            const double x = kMarginLeft + plot_w * l.generation / g_max;
            const double y = top + plot_h * (1.0 - (s.get(l) - lo) / (hi - lo));
            svg << num(x) << ',' << num(y) << ' ';
        }
        svg << "\"/>\n";
    }
    svg << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << height - 8
        << "\" text-anchor=\"middle\">generation</text>\n</svg>\n";
    save(path, svg.str());
}

void write_delta_svg(const std::filesystem::path& path, std::span<const metrics::ComparisonRow> rows)
{
    constexpr int kRow = 40;
    const int height = 60 + kRow * static_cast<int>(rows.size());
    double extent = 1.0;
    for (const auto& r : rows)
        if (r.delta_percent && std::isfinite(*r.delta_percent))
            extent = std::max(extent, std::abs(*r.delta_percent));
    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double zero = kMarginLeft + plot_w / 2;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << zero << "\" y=\"18\" text-anchor=\"middle\">Multi-Objective vs Homeostasis, Delta %</text>\n"
        << "<line x1=\"" << zero << "\" y1=\"28\" x2=\"" << zero << "\" y2=\"" << height - 20
        << "\" stroke=\"#444\"/>\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const double y = 36.0 + kRow * static_cast<double>(i);
        const double d = r.delta_percent && std::isfinite(*r.delta_percent) ? *r.delta_percent : 0.0;
        const double len = (plot_w / 2 - 10) * std::abs(d) / extent;
        const double x = d >= 0 ? zero : zero - len;
        svg << "<text x=\"" << kMarginLeft - 4 << "\" y=\"" << y + 16 << "\" text-anchor=\"end\">" << r.metric
            << "</text>\n"
            << "<rect x=\"" << num(x) << "\" y=\"" << y << "\" width=\"" << num(len) << "\" height=\"24\" fill=\""
            << (d >= 0 ? "#2ca02c" : "#d62728") << "\"/>\n"
            << "<text x=\"" << num(d >= 0 ? zero + len + 4 : zero - len - 4) << "\" y=\"" << y + 16
            << "\" text-anchor=\"" << (d >= 0 ? "start" : "end") << "\">"
            << (r.delta_percent ? num(*r.delta_percent) + "% (p=" + num(r.test.p) + ")" : std::string("n/a"))
            << "</text>\n";
    }
    svg << "</svg>\n";
    save(path, svg.str());
}

} // namespace lenia_moqd::io

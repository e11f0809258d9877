#include "pcm/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "pcm/errors.hpp"
#include "pcm/text.hpp"

namespace pcm {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 400;
constexpr int kMargin = 48;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::ofstream open_svg(const std::string& path, const std::string& title) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
        << title << "</text>\n";
    return out;
}

}  // namespace

void write_svg_histogram(const std::vector<double>& values, int bins, const std::string& title,
                         const std::string& path) {
    if (bins < 1) bins = 1;
    double lo = 0.0, hi = 1.0;
    if (!values.empty()) {
        lo = *std::min_element(values.begin(), values.end());
        hi = *std::max_element(values.begin(), values.end());
    }
    if (hi <= lo) hi = lo + 1.0;
    std::vector<int> counts(bins, 0);
    for (const double v : values) {
        int b = static_cast<int>((v - lo) / (hi - lo) * bins);
        b = std::clamp(b, 0, bins - 1);
        ++counts[b];
    }
    const int peak = std::max(1, *std::max_element(counts.begin(), counts.end()));

    auto out = open_svg(path, title);
    const double plot_w = kWidth - 2.0 * kMargin;
    const double plot_h = kHeight - 2.0 * kMargin;
    for (int b = 0; b < bins; ++b) {
        const double x = kMargin + plot_w * b / bins;
        const double bar_h = plot_h * counts[b] / peak;
        out << "<rect x=\"" << fmt_fixed(x, 2) << "\" y=\"" << fmt_fixed(kHeight - kMargin - bar_h, 2)
            << "\" width=\"" << fmt_fixed(plot_w / bins * 0.9, 2) << "\" height=\""
            << fmt_fixed(bar_h, 2) << "\" fill=\"#1f77b4\"/>\n";
    }
    out << "<text x=\"" << kMargin << "\" y=\"" << kHeight - 8
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << fmt_fixed(lo, 1) << "</text>\n";
    out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - 8
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt_fixed(hi, 1)
        << "</text>\n";
    out << "</svg>\n";
}

void write_svg_lines(const std::vector<SvgSeries>& series, const std::string& title,
                     const std::string& path) {
    double lo = 0.0, hi = 1.0;
    size_t n = 0;
    bool any = false;
    for (const auto& s : series) {
        n = std::max(n, s.values.size());
        for (const double v : s.values) {
            if (!any) {
                lo = hi = v;
                any = true;
            }
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (hi <= lo) hi = lo + 1.0;

    auto out = open_svg(path, title);
    const double plot_w = kWidth - 2.0 * kMargin;
    const double plot_h = kHeight - 2.0 * kMargin;
    for (size_t s = 0; s < series.size(); ++s) {
        const auto& values = series[s].values;
        if (values.empty()) continue;
        out << "<polyline fill=\"none\" stroke=\"" << kColors[s % 6] << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < values.size(); ++i) {
            const double x = kMargin + (n > 1 ? plot_w * i / (n - 1) : plot_w / 2);
            const double y = kHeight - kMargin - plot_h * (values[i] - lo) / (hi - lo);
            out << fmt_fixed(x, 2) << "," << fmt_fixed(y, 2) << " ";
        }
        out << "\"/>\n";
        out << "<text x=\"" << kWidth - kMargin + 4 << "\" y=\"" << 40 + 16 * s
            << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << kColors[s % 6] << "\">"
            << series[s].label << "</text>\n";
    }
    out << "<text x=\"" << kMargin << "\" y=\"" << kHeight - 8
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << fmt_fixed(lo, 1) << " .. "
        << fmt_fixed(hi, 1) << "</text>\n";
    out << "</svg>\n";
}

}  // namespace pcm

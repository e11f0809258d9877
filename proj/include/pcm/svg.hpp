#ifndef PCM_SVG_HPP
#define PCM_SVG_HPP

#include <string>
#include <vector>

namespace pcm {

// Minimal standalone-SVG emission for report figures; no styling knobs, just
// deterministic bytes.

void write_svg_histogram(const std::vector<double>& values, int bins, const std::string& title,
                         const std::string& path);

struct SvgSeries {
    std::string label;
    std::vector<double> values;
};

void write_svg_lines(const std::vector<SvgSeries>& series, const std::string& title,
                     const std::string& path);

}  // namespace pcm

#endif

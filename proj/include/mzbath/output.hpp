// output.hpp - CSV and SVG artifact writers
#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace mzbath {

/// 17 significant digits, round-trip exact.
std::string format_number(double v);

/// CSV with a `#` comment preamble, a mandatory header row and RFC-4180 quoting.
class CsvWriter {
  public:
    /// Writes the comment preamble: artifact version, command, then each line of `config_toml`.
    CsvWriter(std::ostream& out, const std::string& command, const std::string& config_toml);

    void comment(const std::string& line);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);
    void row(std::span<const double> values);

  private:
    void write_cells(const std::vector<std::string>& cells);

    std::ostream& out_;
    std::size_t columns_{0};
};

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct SvgPanel {
    std::string title;
    std::string x_label;
    std::vector<SvgSeries> series;
};

/// Self-contained SVG with panels laid out in a grid of `columns`. Each polyline has one
/// vertex per data point; its `data-map` attribute "xmin sx ox ymin sy oy" gives the pixel
/// mapping px = (x - xmin) sx + ox, py = (ymin - y) sy + oy.
void write_svg(std::ostream& out, const std::string& title, std::span<const SvgPanel> panels,
               int columns, const std::string& header_comment);

}  // namespace mzbath

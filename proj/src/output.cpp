#include "mzbath/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace mzbath {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string quote_cell(const std::string& cell) {
    if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
    std::string q = "\"";
    for (char c : cell) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

CsvWriter::CsvWriter(std::ostream& out, const std::string& command, const std::string& config_toml)
    : out_(out) {
    out_ << "# mzbath " << MZBATH_VERSION << "\n";
    out_ << "# command: " << command << "\n";
    std::istringstream lines(config_toml);
    std::string line;
    while (std::getline(lines, line)) out_ << "# " << line << "\n";
}

void CsvWriter::comment(const std::string& line) {
    if (columns_ != 0) throw std::logic_error("CSV comments must precede the header row");
    out_ << "# " << line << "\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    columns_ = columns.size();
    write_cells(columns);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw std::logic_error("CSV row width does not match the header");
    write_cells(cells);
}

void CsvWriter::row(std::span<const double> values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_number(v));
    row(cells);
}

void CsvWriter::write_cells(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << quote_cell(cells[i]);
    out_ << "\n";
}

void write_svg(std::ostream& out, const std::string& title, std::span<const SvgPanel> panels,
               int columns, const std::string& header_comment) {
    const double pw = 420.0, ph = 260.0, margin = 40.0, top = 40.0;
    const int ncol = std::max(1, columns);
    const int nrow = static_cast<int>((panels.size() + static_cast<std::size_t>(ncol) - 1) / static_cast<std::size_t>(ncol));
    const double width = ncol * (pw + margin) + margin;
    const double height = top + nrow * (ph + margin) + margin;

    out << "<!--\n" << header_comment << "-->\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << margin << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">"
        << xml_escape(title) << "</text>\n";

    for (std::size_t k = 0; k < panels.size(); ++k) {
        const auto& panel = panels[k];
        const double ox = margin + static_cast<double>(k % static_cast<std::size_t>(ncol)) * (pw + margin);
        const double oy = top + static_cast<double>(k / static_cast<std::size_t>(ncol)) * (ph + margin);

        double xmin = INFINITY, xmax = -INFINITY, ymin = 0.0, ymax = -INFINITY;
        for (const auto& s : panel.series) {
            for (double x : s.x) xmin = std::min(xmin, x), xmax = std::max(xmax, x);
            for (double y : s.y) ymin = std::min(ymin, y), ymax = std::max(ymax, y);
        }
        if (!(xmax > xmin)) xmin -= 0.5, xmax += 0.5;
        if (!(ymax > ymin)) ymax = ymin + 1.0;
        const double sx = pw / (xmax - xmin);
        const double sy = ph / (ymax - ymin);

        out << "<g>\n";
        out << "<rect x=\"" << ox << "\" y=\"" << oy << "\" width=\"" << pw << "\" height=\"" << ph
            << "\" fill=\"none\" stroke=\"#888\"/>\n";
        out << "<text x=\"" << ox + 6 << "\" y=\"" << oy + 16
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(panel.title) << "</text>\n";
        out << "<text x=\"" << ox + pw / 2 << "\" y=\"" << oy + ph + 16
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
            << xml_escape(panel.x_label) << " [" << format_number(xmin) << ", " << format_number(xmax)
            << "]</text>\n";
        for (std::size_t s = 0; s < panel.series.size(); ++s) {
            const auto& series = panel.series[s];
            const char* colour = kPalette[s % std::size(kPalette)];
            // pixel = (x - xmin) * sx + ox, (ymin - y) * sy + oy + ph
            out << "<polyline data-label=\"" << xml_escape(series.label) << "\" data-map=\""
                << format_number(xmin) << " " << format_number(sx) << " " << format_number(ox) << " "
                << format_number(ymin) << " " << format_number(sy) << " " << format_number(oy + ph)
                << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < series.x.size(); ++i) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%s%.6f,%.6f", i ? " " : "", (series.x[i] - xmin) * sx + ox,
                              (ymin - series.y[i]) * sy + oy + ph);
                out << buf;
            }
            out << "\"/>\n";
            out << "<text x=\"" << ox + pw - 6 << "\" y=\"" << oy + 16 + 14.0 * static_cast<double>(s)
                << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\" fill=\"" << colour
                << "\">" << xml_escape(series.label) << "</text>\n";
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
}

}  // namespace mzbath

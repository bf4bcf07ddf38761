#include "nlac/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nlac {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : columns_(columns.size()) {
    std::string header;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) header += ',';
        header += columns[i];
    }
    body_ = header + "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != columns_) throw std::invalid_argument("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) body_ += ',';
        body_ += format_double(values[i]);
    }
    body_ += '\n';
}

void CsvWriter::raw_row(const std::vector<std::string>& values) {
    if (values.size() != columns_) throw std::invalid_argument("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) body_ += ',';
        body_ += values[i];
    }
    body_ += '\n';
}

std::string CsvWriter::str() const { return body_; }

void CsvWriter::save(const std::string& path) const { save_text(path, body_); }

void save_text(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
}

namespace {

double transform(double v, bool log_scale) { return log_scale ? std::log10(v) : v; }

}  // namespace

std::string render_svg_chart(const std::string& title, const std::string& x_label,
                             const std::string& y_label, const std::vector<SvgSeries>& series,
                             bool log_x, bool log_y) {
    const int width = 640, height = 420;
    const int ml = 64, mr = 24, mt = 40, mb = 48;

    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (log_x && !(s.x[i] > 0.0)) continue;
            if (log_y && !(s.y[i] > 0.0)) continue;
            x0 = std::min(x0, transform(s.x[i], log_x));
            x1 = std::max(x1, transform(s.x[i], log_x));
            y0 = std::min(y0, transform(s.y[i], log_y));
            y1 = std::max(y1, transform(s.y[i], log_y));
        }
    }
    if (!(x1 > x0)) x1 = x0 + 1.0;
    if (!(y1 > y0)) y1 = y0 + 1.0;

    auto px = [&](double x) {
        return ml + (transform(x, log_x) - x0) / (x1 - x0) * (width - ml - mr);
    };
    auto py = [&](double y) {
        return height - mb - (transform(y, log_y) - y0) / (y1 - y0) * (height - mt - mb);
    };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << title << "</text>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
        << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << height - mb << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label << (log_x ? " (log10)" : "")
        << "</text>\n";
    svg << "<text x=\"16\" y=\"" << height / 2 << "\" font-size=\"12\" transform=\"rotate(-90 16 "
        << height / 2 << ")\" text-anchor=\"middle\">" << y_label << (log_y ? " (log10)" : "")
        << "</text>\n";
    // Axis end labels.
    svg << "<text x=\"" << ml << "\" y=\"" << height - mb + 16 << "\" font-size=\"10\">"
        << format_double(log_x ? std::pow(10.0, x0) : x0) << "</text>\n";
    svg << "<text x=\"" << width - mr << "\" y=\"" << height - mb + 16
        << "\" text-anchor=\"end\" font-size=\"10\">"
        << format_double(log_x ? std::pow(10.0, x1) : x1) << "</text>\n";
    svg << "<text x=\"" << ml - 4 << "\" y=\"" << height - mb
        << "\" text-anchor=\"end\" font-size=\"10\">"
        << format_double(log_y ? std::pow(10.0, y0) : y0) << "</text>\n";
    svg << "<text x=\"" << ml - 4 << "\" y=\"" << mt + 4
        << "\" text-anchor=\"end\" font-size=\"10\">"
        << format_double(log_y ? std::pow(10.0, y1) : y1) << "</text>\n";

    int color = 0;
    int legend_y = mt + 6;
    for (const auto& s : series) {
        svg << "<polyline fill=\"none\" stroke=\"" << colors[color % 5]
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (log_x && !(s.x[i] > 0.0)) continue;
            if (log_y && !(s.y[i] > 0.0)) continue;
            svg << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        }
        svg << "\"/>\n";
        svg << "<text x=\"" << width - mr - 4 << "\" y=\"" << legend_y
            << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << colors[color % 5] << "\">"
            << s.name << "</text>\n";
        legend_y += 14;
        ++color;
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string config_hash(const nlohmann::json& config) {
    const std::string dump = config.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (const unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = hex[h & 0xf];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf);
}

void save_json(const std::string& path, const nlohmann::json& j) {
    save_text(path, j.dump(2) + "\n");
}

}  // namespace nlac

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace nlac {

/// Shortest round-trippable decimal form of a double; stable across runs and
/// thread counts, used for all CSV/JSON numeric output.
std::string format_double(double v);

/// CSV writer with fixed formatting.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> columns);
    void row(const std::vector<double>& values);
    void raw_row(const std::vector<std::string>& values);
    std::string str() const;
    void save(const std::string& path) const;

private:
    std::string body_;
    std::size_t columns_;
};

/// Minimal line-chart SVG (one polyline per series), written directly.
struct SvgSeries {
    std::string name;
    std::vector<double> x, y;
};

std::string render_svg_chart(const std::string& title, const std::string& x_label,
                             const std::string& y_label, const std::vector<SvgSeries>& series,
                             bool log_x = false, bool log_y = false);

void save_text(const std::string& path, const std::string& content);

/// FNV-1a hash of the canonical (sorted-key) JSON dump, as hex.
std::string config_hash(const nlohmann::json& config);

/// Serializes a JSON document deterministically to a file.
void save_json(const std::string& path, const nlohmann::json& j);

}  // namespace nlac

#pragma once

#include <string>
#include <vector>

#include "catdiscord/csv.hpp"

namespace catdiscord::io {

struct PlotOptions {
    std::string x_column{"gamma_t"};
    std::vector<std::string> y_columns{"I", "C", "D"};
    bool log_x{false};
    int width{800};
    int height{500};
    std::string title;
};

/// Standalone SVG 1.1 line plot, one polyline per y column. Output depends only
/// on the table contents and options. Throws FormatError for missing or
/// non-numeric columns, and for log_x with no positive x values.
std::string render_svg(const CsvTable& table, const PlotOptions& options);

}  // namespace catdiscord::io

#include "catdiscord/csv.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "catdiscord/errors.hpp"

namespace catdiscord::io {

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_scan_csv(std::ostream& out, const std::vector<Record>& records,
                    const RegimeSegmentation* segmentation) {
    out << kScanHeader << '\n';
    for (const auto& r : records) {
        const auto& x = r.state;
        const double fields[] = {r.gt,     x.r11,    x.r22, x.r33,       x.r44,
                                 x.r14,    x.r23,    r.s_joint, r.s_a,   r.s_b,
                                 r.mutual_info, r.classical, r.discord, r.concurrence};
        for (double v : fields) out << format_number(v) << ',';
        out << basis_name(r.optimal_basis) << ','
            << regime_name(segmentation ? segmentation->regime_at(r.gt) : Regime::Indeterminate)
            << '\n';
    }
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split(line);
        if (table.header.empty()) {
            table.header = std::move(cells);
            continue;
        }
        if (cells.size() != table.header.size()) {
            std::ostringstream msg;
            msg << "line " << line_no << ": expected " << table.header.size() << " fields, got "
                << cells.size();
            throw FormatError(msg.str());
        }
        table.rows.push_back(std::move(cells));
    }
    if (table.header.empty()) throw FormatError("empty CSV input");
    if (table.rows.empty()) throw FormatError("CSV has a header but no data rows");
    return table;
}

std::size_t CsvTable::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw FormatError("missing column '" + std::string(name) + "'");
}

std::vector<double> CsvTable::numeric_column(std::string_view name) const {
    const std::size_t col = column_index(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const std::string& cell = rows[r][col];
        double v = 0;
        const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (ec != std::errc() || end != cell.data() + cell.size()) {
            std::ostringstream msg;
            msg << "row " << r + 1 << ", column '" << name << "': not a number: '" << cell << "'";
            throw FormatError(msg.str());
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace catdiscord::io

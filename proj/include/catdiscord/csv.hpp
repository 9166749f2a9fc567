#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "catdiscord/scan.hpp"

namespace catdiscord::io {

/// Column order of the scan CSV.
inline constexpr std::string_view kScanHeader =
    "gamma_t,r11,r22,r33,r44,r14,r23,S_ab,S_a,S_b,I,C,D,concurrence,optimal_basis,regime";

/// 17 significant digits, so values survive a text round trip unchanged.
std::string format_number(double value);

/// Header plus one row per record; the regime column comes from `segmentation`
/// ("indeterminate" when none is given).
void write_scan_csv(std::ostream& out, const std::vector<Record>& records,
                    const RegimeSegmentation* segmentation = nullptr);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a named column; throws FormatError if absent.
    std::size_t column_index(std::string_view name) const;
    /// Parses a column as numbers; throws FormatError on non-numeric cells.
    std::vector<double> numeric_column(std::string_view name) const;
};

/// Comma-separated, header row mandatory, no quoting. Throws FormatError on an
/// empty input, a missing header, ragged rows or no data rows.
CsvTable read_csv(std::istream& in);

}  // namespace catdiscord::io

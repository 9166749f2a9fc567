#include <doctest.h>

#include <cmath>
#include <sstream>

#include "catdiscord/csv.hpp"
#include "catdiscord/errors.hpp"
#include "catdiscord/svg_plot.hpp"

using namespace catdiscord;
using namespace catdiscord::io;

namespace {

std::vector<Record> small_scan() {
    ScanConfig c;
    c.params = ModelParams<double>(10, 0.3);
    c.gt_min = 1e-4;
    c.gt_max = 6;
    c.points = 200;
    c.spacing = Spacing::Log;
    return scan(c);
}

CsvTable parse(const std::string& text) {
    std::istringstream in(text);
    return read_csv(in);
}

std::size_t count(const std::string& haystack, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = haystack.find(needle); pos != std::string::npos;
         pos = haystack.find(needle, pos + 1))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("number formatting round-trips") {
    for (double v : {0.1, 1.0 / 3, 2.302585092994046, 1e-300, -0.2, 0.0}) {
        CHECK(std::stod(format_number(v)) == v);
    }
    CHECK(format_number(0.1) == "0.10000000000000001");
}

TEST_CASE("scan CSV round trip") {
    const auto records = small_scan();
    ScanConfig c;
    c.params = ModelParams<double>(10, 0.3);
    c.gt_min = 1e-4;
    c.spacing = Spacing::Log;
    c.points = 200;
    const auto seg = segment_regimes(records, characteristic_times(c.params), c);

    std::ostringstream out;
    write_scan_csv(out, records, &seg);
    const auto table = parse(out.str());
    REQUIRE(table.rows.size() == records.size());
    CHECK(table.header.size() == 16);
    CHECK(out.str().rfind(std::string(kScanHeader) + "\n", 0) == 0);

    const auto gt = table.numeric_column("gamma_t");
    const auto d = table.numeric_column("D");
    const auto r14 = table.numeric_column("r14");
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(gt[i] == records[i].gt);
        CHECK(d[i] == records[i].discord);
        CHECK(r14[i] == records[i].state.r14);
    }
    const auto basis = table.column_index("optimal_basis");
    CHECK(table.rows.front()[basis] == "sigma_z");
    CHECK(table.rows.back()[basis] == "sigma_x");
    const auto regime = table.column_index("regime");
    std::size_t mid = 0;
    while (gt[mid] < 0.5) ++mid;
    CHECK(table.rows[mid][regime] == "III");
    CHECK(table.rows.back()[regime] == "IV");
}

TEST_CASE("CSV without segmentation") {
    std::ostringstream out;
    write_scan_csv(out, small_scan());
    const auto table = parse(out.str());
    CHECK(table.rows[0][table.column_index("regime")] == "indeterminate");
}

TEST_CASE("malformed CSV") {
    CHECK_THROWS_AS(parse(""), FormatError);
    CHECK_THROWS_AS(parse("\n\n"), FormatError);
    CHECK_THROWS_AS(parse("a,b\n"), FormatError);
    CHECK_THROWS_AS(parse("a,b\n1,2,3\n"), FormatError);
    const auto table = parse("a,b\r\n1,x\r\n");
    CHECK_THROWS_AS(table.numeric_column("b"), FormatError);
    CHECK_THROWS_AS(table.column_index("c"), FormatError);
    CHECK(table.numeric_column("a") == std::vector<double>{1});
}

TEST_CASE("SVG rendering") {
    std::ostringstream out;
    write_scan_csv(out, small_scan());
    const auto table = parse(out.str());
    PlotOptions opts;
    opts.log_x = true;
    opts.title = "I, C & D";
    const std::string a = render_svg(table, opts);
    const std::string b = render_svg(table, opts);
    CHECK(a == b);
    CHECK(a.rfind("<?xml", 0) == 0);
    CHECK(count(a, "<polyline") == 3);
    CHECK(a.find("I, C &amp; D") != std::string::npos);
    CHECK(a.find("</svg>") != std::string::npos);

    opts.y_columns = {"D"};
    CHECK(count(render_svg(table, opts), "<polyline") == 1);
    opts.y_columns = {"missing"};
    CHECK_THROWS_AS(render_svg(table, opts), FormatError);
    opts.y_columns = {"optimal_basis"};
    CHECK_THROWS_AS(render_svg(table, opts), FormatError);

    const auto negative = parse("gamma_t,I\n0,1\n-1,2\n");
    PlotOptions log_opts;
    log_opts.y_columns = {"I"};
    log_opts.log_x = true;
    CHECK_THROWS_AS(render_svg(negative, log_opts), FormatError);
}

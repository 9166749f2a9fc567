#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "catdiscord/csv.hpp"
#include "cli.hpp"

using namespace catdiscord;
using namespace catdiscord::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "catdiscord");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

io::CsvTable parse(const std::string& text) {
    std::istringstream in(text);
    return io::read_csv(in);
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "catdiscord_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("scan writes one row per point") {
    const auto r = run({"scan", "--nbar", "3", "--p", "0.3", "--points", "120"});
    REQUIRE(r.code == kOk);
    const auto table = parse(r.out);
    CHECK(table.rows.size() == 120);
    CHECK(table.numeric_column("gamma_t").front() == 0);
    CHECK(table.numeric_column("gamma_t").back() == 6);
}

TEST_CASE("scan plateau over the decoherence-free window") {
    const auto r = run({"scan", "--nbar", "10", "--p", "0.3", "--tmax", "6", "--points", "2000",
                        "--spacing", "log"});
    REQUIRE(r.code == kOk);
    const auto table = parse(r.out);
    const auto gt = table.numeric_column("gamma_t");
    const std::vector<std::pair<std::string, double>> plateau{
        {"r11", 0.25}, {"r22", 0.25}, {"r33", 0.25}, {"r44", 0.25}, {"r14", -0.1}, {"r23", -0.1}};
    const double lo = std::log(10.0 / 9) + 0.2;
    const double hi = std::log(10.0) - 1.2;
    int inside = 0;
    for (const auto& [name, value] : plateau) {
        const auto col = table.numeric_column(name);
        for (std::size_t i = 0; i < gt.size(); ++i) {
            if (gt[i] < lo || gt[i] > hi) continue;
            ++inside;
            CHECK(std::abs(col[i] - value) < 1e-3);
        }
    }
    CHECK(inside > 400);
}

TEST_CASE("scan at p = 1/2 has no discord") {
    const auto r = run({"scan", "--nbar", "10", "--p", "0.5", "--tmax", "6", "--points", "400"});
    REQUIRE(r.code == kOk);
    for (double d : parse(r.out).numeric_column("D")) CHECK(d < 1e-9);
}

TEST_CASE("scan output is byte-identical across runs") {
    const auto a = run({"scan", "--nbar", "10", "--p", "0.3", "--points", "300", "--workers", "1"});
    const auto b = run({"scan", "--nbar", "10", "--p", "0.3", "--points", "300", "--workers", "3"});
    CHECK(a.code == kOk);
    CHECK(a.out == b.out);
}

TEST_CASE("scan parameter errors") {
    CHECK(run({"scan", "--nbar", "-1"}).code == kParamError);
    CHECK(run({"scan", "--p", "1.5"}).code == kParamError);
    CHECK(run({"scan", "--points", "1"}).code == kParamError);
    CHECK(run({"scan", "--spacing", "cubic"}).code == kParamError);
    CHECK(run({"scan", "--format", "png"}).code == kParamError);
    CHECK(run({"scan", "--bogus"}).code == kParamError);
    CHECK(run({}).code == kParamError);
    const auto r = run({"scan", "--nbar", "0"});
    CHECK(r.err.find("nbar") != std::string::npos);
}

TEST_CASE("unwritable output path") {
    const auto r = run({"scan", "--nbar", "1", "--points", "60", "--out",
                        "/nonexistent-dir/sub/out.csv"});
    CHECK(r.code == kIoError);
}

TEST_CASE("scan as SVG") {
    const auto r = run({"scan", "--nbar", "3", "--points", "80", "--format", "svg"});
    REQUIRE(r.code == kOk);
    CHECK(r.out.rfind("<?xml", 0) == 0);
}

TEST_CASE("coarse scan keeps going without regimes") {
    const auto r = run({"scan", "--nbar", "3", "--points", "20"});
    CHECK(r.code == kOk);
    CHECK(r.err.find("indeterminate") != std::string::npos);
}

TEST_CASE("regimes table") {
    const auto r = run({"regimes", "--nbar", "10", "--p", "0.3"});
    REQUIRE(r.code == kOk);
    CHECK(r.out.find("nbar = 10, p = 0.3, gamma = 1") != std::string::npos);
    CHECK(r.out.find("0.10536051565782") != std::string::npos);
    CHECK(r.out.find("2.30258509299404") != std::string::npos);
    CHECK(r.out.find("0.023173716701256") != std::string::npos);

    const auto one = run({"regimes", "--nbar", "1", "--p", "0.3"});
    CHECK(one.code == kOk);
    CHECK(one.out.find("undefined (nbar <= 1)") != std::string::npos);

    const auto half = run({"regimes", "--nbar", "10", "--p", "0.5"});
    CHECK(half.out.find("p = 1/2") != std::string::npos);
}

TEST_CASE("regimes sweep over p") {
    const auto r = run({"regimes", "--nbar", "10", "--sweep", "p", "0.05:0.45:9"});
    REQUIRE(r.code == kOk);
    const auto table = parse(r.out);
    REQUIRE(table.rows.size() == 9);
    const auto ts = table.numeric_column("ts");
    const auto ts_numeric = table.numeric_column("ts_numeric");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i > 0) CHECK(ts[i] > ts[i - 1]);
        CHECK(std::abs(ts[i] - ts_numeric[i]) < 1e-6);
    }
}

TEST_CASE("regimes sweep over nbar leaves undefined cells empty") {
    const auto r = run({"regimes", "--p", "0.3", "--sweep", "nbar", "0.5:3:6"});
    REQUIRE(r.code == kOk);
    const auto table = parse(r.out);
    CHECK(table.rows.front()[table.column_index("t1")].empty());
    CHECK_FALSE(table.rows.back()[table.column_index("t1")].empty());
}

TEST_CASE("sweep parsing") {
    const auto s = parse_sweep("p", "0.1:0.4:4");
    CHECK(s.variable == "p");
    CHECK(s.lo == 0.1);
    CHECK(s.hi == 0.4);
    CHECK(s.count == 4);
    CHECK_THROWS_AS(parse_sweep("gamma", "0:1:2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_sweep("p", "0:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_sweep("p", "0:1:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_sweep("p", "a:1:3"), std::invalid_argument);
    CHECK(run({"regimes", "--sweep", "p", "0:1"}).code == kParamError);
}

TEST_CASE("verify a single point") {
    const auto r = run({"verify", "--nbar", "3", "--p", "0.3", "--t", "0.7"});
    CHECK(r.code == kOk);
    CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("verify reports a tolerance breach") {
    const auto r = run({"verify", "--nbar", "3", "--p", "0.3", "--t", "0.7", "--element-tol", "0"});
    CHECK(r.code == kToleranceError);
    CHECK(r.out.find("FAIL at nbar=3") != std::string::npos);
}

TEST_CASE("verify with the identity channel") {
    const auto r = run({"verify", "--nbar", "3", "--p", "0.3", "--eta-identity"});
    CHECK(r.code == kOk);
}

TEST_CASE("verify with random states") {
    const auto r = run({"verify", "--nbar", "1", "--p", "0.3", "--t", "0.5", "--seed", "4",
                        "--random-states", "20"});
    CHECK(r.code == kOk);
    CHECK(r.out.find("reported only") != std::string::npos);
}

TEST_CASE("verify errors") {
    CHECK(run({"verify", "--grid", "huge"}).code == kParamError);
    CHECK(run({"verify", "--nbar", "3", "--t", "0.5", "--truncation", "5"}).code == kParamError);
}

TEST_CASE("plot a scan file") {
    const auto csv = scratch("scan.csv");
    const auto svg = scratch("scan.svg");
    REQUIRE(run({"scan", "--nbar", "10", "--points", "300", "--out", csv.string()}).code == kOk);
    REQUIRE(run({"plot", "--input", csv.string(), "--out", svg.string(), "--log-x"}).code == kOk);
    const std::string first = slurp(svg);
    REQUIRE(run({"plot", "--input", csv.string(), "--out", svg.string(), "--log-x"}).code == kOk);
    CHECK(slurp(svg) == first);
    CHECK(first.find("<polyline") != std::string::npos);

    const auto r = run({"plot", "--input", csv.string(), "--columns", "C,D"});
    CHECK(r.code == kOk);
    CHECK(r.out.find("<svg") != std::string::npos);
}

TEST_CASE("plot errors") {
    const auto empty = scratch("empty.csv");
    std::ofstream(empty).close();
    CHECK(run({"plot", "--input", empty.string()}).code == kFormatError);
    const auto ragged = scratch("ragged.csv");
    std::ofstream(ragged) << "gamma_t,I\n1,2,3\n";
    CHECK(run({"plot", "--input", ragged.string()}).code == kFormatError);
    CHECK(run({"plot", "--input", scratch("missing.csv").string()}).code == kIoError);
    CHECK(run({"plot"}).code == kParamError);
}

TEST_CASE("config file with command-line override") {
    const auto cfg = scratch("run.cfg");
    std::ofstream(cfg) << "# scan defaults\nnbar = 3\np = 0.2\npoints = 60\n\n";
    const auto r = run({"scan", "--config", cfg.string(), "--points", "80"});
    REQUIRE(r.code == kOk);
    const auto table = parse(r.out);
    CHECK(table.rows.size() == 80);
    // The p = 0.2 initial state has r14 = (2p - 1) G+^2 G-^2 Lbar+^2 / (16 L+^2).
    const auto x = build_xstate(ModelParams<double>(3, 0.2), 0.0);
    CHECK(table.numeric_column("r14").front() == x.r14);

    const auto bad = scratch("bad.cfg");
    std::ofstream(bad) << "colour = blue\n";
    CHECK(run({"scan", "--config", bad.string()}).code == kParamError);
    CHECK(run({"scan", "--config", scratch("absent.cfg").string()}).code == kIoError);
}

TEST_CASE("config entries") {
    CliConfig cfg;
    apply_config_entry(cfg, "nbar", "4.5");
    apply_config_entry(cfg, "spacing", "log");
    apply_config_entry(cfg, "log-x", "true");
    apply_config_entry(cfg, "columns", "I,D");
    CHECK(cfg.nbar == 4.5);
    CHECK(cfg.spacing == std::optional<std::string>("log"));
    CHECK(cfg.log_x);
    CHECK(cfg.columns == std::vector<std::string>{"I", "D"});
    CHECK_THROWS_AS(apply_config_entry(cfg, "nbar", "many"), std::invalid_argument);
    CHECK_THROWS_AS(apply_config_entry(cfg, "unknown", "1"), std::invalid_argument);
}

TEST_CASE("worker cap from the environment") {
    setenv("CATDISCORD_WORKERS", "2", 1);
    CHECK(effective_workers(0) == 2);
    CHECK(effective_workers(8) == 2);
    CHECK(effective_workers(1) == 1);
    setenv("CATDISCORD_WORKERS", "junk", 1);
    CHECK(effective_workers(5) == 5);
    unsetenv("CATDISCORD_WORKERS");
    CHECK(effective_workers(3) == 3);
}

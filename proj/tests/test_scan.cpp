#include <doctest.h>

#include <cmath>

#include "catdiscord/scan.hpp"

using namespace catdiscord;

namespace {

ScanConfig log_config(double nbar, double p, int points = 2000) {
    ScanConfig c;
    c.params = ModelParams<double>(nbar, p);
    c.gt_min = 1e-4;
    c.gt_max = 6;
    c.points = points;
    c.spacing = Spacing::Log;
    return c;
}

ScanConfig linear_config(double nbar, double p, double gt_max = 4, int points = 400) {
    ScanConfig c;
    c.params = ModelParams<double>(nbar, p);
    c.gt_min = 0;
    c.gt_max = gt_max;
    c.points = points;
    c.spacing = Spacing::Linear;
    return c;
}

}  // namespace

TEST_CASE("grid construction") {
    auto c = linear_config(1, 0.3, 4, 5);
    const auto lin = make_grid(c);
    REQUIRE(lin.size() == 5);
    CHECK(lin[0] == 0);
    CHECK(lin[2] == 2);
    CHECK(lin[4] == 4);

    const auto log = make_grid(log_config(10, 0.3, 101));
    CHECK(log.front() == 1e-4);
    CHECK(log.back() == 6);
    for (std::size_t i = 1; i < log.size(); ++i) CHECK(log[i] > log[i - 1]);
    CHECK(log[50] == doctest::Approx(std::sqrt(1e-4 * 6)));

    CHECK(default_spacing(10) == Spacing::Log);
    CHECK(default_spacing(1) == Spacing::Linear);
}

TEST_CASE("scan config validation") {
    auto c = linear_config(1, 0.3);
    c.gt_max = 0;
    CHECK_THROWS_AS(make_grid(c), ParameterError);
    c = linear_config(1, 0.3);
    c.points = 1;
    CHECK_THROWS_AS(make_grid(c), ParameterError);
    c = linear_config(1, 0.3);
    c.freeze_tol = 0;
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c = linear_config(1, 0.3);
    c.spacing = Spacing::Log;
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c = linear_config(1, 0.3);
    c.gt_min = -1;
    CHECK_THROWS_AS(c.validate(), ParameterError);
}

TEST_CASE("nbar 1 scan") {
    const auto c = linear_config(1, 0.3);
    const auto records = scan(c);
    REQUIRE(records.size() == 400);
    for (std::size_t i = 1; i < records.size(); ++i) {
        CHECK(records[i].mutual_info < records[i - 1].mutual_info + 1e-12);
    }
    int switches = 0;
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (!(records[i].optimal_basis == records[i - 1].optimal_basis)) ++switches;
    }
    CHECK(switches == 1);

    const auto seg = segment_regimes(records, characteristic_times(c.params), c);
    CHECK_FALSE(seg.degenerate);
    for (const auto& b : seg.boundaries) CHECK(b.second != Regime::III);
    CHECK_FALSE(seg.dfs_window);
}

TEST_CASE("nbar 10 correlations inside the window") {
    const auto records = scan(log_config(10, 0.3));
    bool found = false;
    for (const auto& r : records) {
        if (r.gt >= 0.5 && !found) {
            found = true;
            CHECK(r.discord < 1e-3);
            CHECK(std::abs(r.classical - 0.1187) < 1e-3);
        }
    }
    CHECK(found);
}

TEST_CASE("p = 1/2 has no discord and nothing to segment") {
    const auto c = log_config(10, 0.5);
    const auto records = scan(c);
    for (const auto& r : records) CHECK(r.discord <= 1e-9);
    const auto seg = segment_regimes(records, characteristic_times(c.params), c);
    CHECK(seg.degenerate);
    CHECK(seg.boundaries.empty());
    CHECK_FALSE(seg.sudden_death_gt);
}

TEST_CASE("four regimes at nbar 10, p 0.3") {
    const auto c = log_config(10, 0.3);
    const auto records = scan(c);
    const auto times = characteristic_times(c.params);
    const auto seg = segment_regimes(records, times, c);
    const std::vector<Regime> expected{Regime::I, Regime::II, Regime::III, Regime::IV};
    CHECK(seg.labels() == expected);
    REQUIRE(seg.boundaries.size() == 4);
    CHECK(std::abs(seg.boundaries[1].first - *times.ts) < 1e-9);
    CHECK(seg.boundaries[2].first > *times.ts);
    CHECK(seg.boundaries[3].first > 1.5);
    CHECK(seg.boundaries[3].first < times.t2 + 0.5);

    REQUIRE(seg.dfs_window);
    CHECK(seg.dfs_window->first >= *times.t1);
    CHECK(seg.dfs_window->second <= times.t2);
    REQUIRE(seg.sudden_death_gt);
    CHECK(*seg.sudden_death_gt < *times.ts);
    REQUIRE(seg.discord_revival_gt);
    CHECK(*seg.discord_revival_gt > seg.boundaries[3].first);

    CHECK(seg.regime_at(0.0) == Regime::Indeterminate);
    CHECK(seg.regime_at(0.01) == Regime::I);
    CHECK(seg.regime_at(0.5) == Regime::III);
    CHECK(seg.regime_at(5.0) == Regime::IV);
}

TEST_CASE("segmentation needs resolution") {
    auto c = log_config(10, 0.3, 49);
    const auto records = scan(c);
    CHECK_THROWS_AS(segment_regimes(records, characteristic_times(c.params), c), ResolutionError);
}

TEST_CASE("sparse grids leave short segments indeterminate") {
    // 60 linear points over [0, 6]: regime I holds a single one.
    auto c = linear_config(10, 0.3, 6, 60);
    const auto seg = segment_regimes(scan(c), characteristic_times(c.params), c);
    REQUIRE_FALSE(seg.boundaries.empty());
    CHECK(seg.boundaries.front().second == Regime::Indeterminate);
}

TEST_CASE("boundaries are stable under grid refinement") {
    const auto coarse_cfg = log_config(10, 0.3, 2000);
    const auto fine_cfg = log_config(10, 0.3, 4000);
    const auto times = characteristic_times(coarse_cfg.params);
    const auto coarse = segment_regimes(scan(coarse_cfg), times, coarse_cfg);
    const auto fine = segment_regimes(scan(fine_cfg), times, fine_cfg);
    REQUIRE(coarse.labels() == fine.labels());
    const double ratio = std::pow(6 / 1e-4, 1.0 / 1999);  // coarse log step
    for (std::size_t i = 0; i < coarse.boundaries.size(); ++i) {
        const double a = coarse.boundaries[i].first;
        const double b = fine.boundaries[i].first;
        CHECK(std::abs(a - b) <= (ratio - 1) * std::max(a, b) + 1e-12);
    }
}

TEST_CASE("sudden death") {
    SUBCASE("before the switch") {
        const auto c = log_config(10, 0.3);
        const auto records = scan(c);
        const auto td = find_sudden_death(records, c.params);
        REQUIRE(td);
        const auto ts = characteristic_times(c.params).ts;
        CHECK(*td > 0);
        CHECK(*td < *ts);
        CHECK(concurrence_xstate(build_xstate(c.params, *td - 1e-9)) > 0);
        CHECK(concurrence_xstate(build_xstate(c.params, *td + 1e-9)) < 1e-9);
    }
    SUBCASE("no entanglement at p = 1/2") {
        const auto c = log_config(10, 0.5);
        CHECK_FALSE(find_sudden_death(scan(c), c.params));
    }
    SUBCASE("empty input") { CHECK_FALSE(find_sudden_death({}, ModelParams<double>(1, 0.3))); }
}

TEST_CASE("scans are reproducible and thread independent") {
    auto c = log_config(10, 0.3, 500);
    const auto a = scan(c);
    const auto b = scan(c);
    c.workers = 4;
    const auto d = scan(c);
    REQUIRE(a.size() == d.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].mutual_info == b[i].mutual_info);
        CHECK(a[i].discord == d[i].discord);
        CHECK(a[i].classical == d[i].classical);
        CHECK(a[i].state.r14 == d[i].state.r14);
    }
}

TEST_CASE("mutual information never increases") {
    for (double nbar : {0.5, 3.0, 10.0, 30.0}) {
        for (double p : {0.0, 0.3, 0.8}) {
            auto c = linear_config(nbar, p, 8, 800);
            const auto records = scan(c);
            for (std::size_t i = 1; i < records.size(); ++i) {
                CHECK(records[i].mutual_info <= records[i - 1].mutual_info + 1e-12);
            }
        }
    }
}

TEST_CASE("locate_switch_time") {
    const ModelParams<double> params(3, 0.3);
    const auto ts = locate_switch_time(params, 6);
    REQUIRE(ts);
    CHECK(std::abs(*ts - 0.0794302530008330448) < 1e-6);
    CHECK_FALSE(locate_switch_time(ModelParams<double>(3, 0.5), 6));
    CHECK_THROWS_AS(locate_switch_time(params, 0), ParameterError);
}

TEST_CASE("median deviation") {
    const std::vector<double> v{1, 2, 3, 10};
    CHECK(max_deviation_from_median(v, 0, 3) == 1);
    CHECK(max_deviation_from_median(v, 0, 4) == 7.5);
    CHECK(max_deviation_from_median(v, 2, 2) == 0);
}

TEST_CASE("regime names") {
    CHECK(regime_name(Regime::I) == "I");
    CHECK(regime_name(Regime::IV) == "IV");
    CHECK(regime_name(Regime::Indeterminate) == "indeterminate");
}

#include "catdiscord/scan.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "catdiscord/errors.hpp"

namespace catdiscord {

namespace {

constexpr std::size_t kMinSegmentPoints = 10;
constexpr std::size_t kMinRecords = 50;
constexpr double kDeathThreshold = 1e-10;

bool frozen(const std::vector<double>& values, std::size_t lo, std::size_t hi, double tol) {
    return hi > lo && max_deviation_from_median(values, lo, hi) < tol;
}

}  // namespace

void ScanConfig::validate() const {
    if (!(gt_min >= 0) || !std::isfinite(gt_max) || !(gt_min < gt_max)) {
        throw ParameterError("scan range needs 0 <= gt_min < gt_max");
    }
    if (points < 2) throw ParameterError("scan needs at least 2 points");
    if (!(freeze_tol > 0)) throw ParameterError("freeze_tol must be > 0");
    if (derivative_window < 1) throw ParameterError("derivative_window must be >= 1");
    if (spacing == Spacing::Log && !(gt_min > 0)) {
        throw ParameterError("log spacing needs gt_min > 0");
    }
    if (workers < 0) throw ParameterError("workers must be >= 0");
}

Spacing default_spacing(double nbar) { return nbar >= 5 ? Spacing::Log : Spacing::Linear; }

std::vector<double> make_grid(const ScanConfig& config) {
    config.validate();
    std::vector<double> grid(config.points);
    const double last = config.points - 1;
    if (config.spacing == Spacing::Linear) {
        for (int i = 0; i < config.points; ++i) {
            grid[i] = config.gt_min + (config.gt_max - config.gt_min) * (i / last);
        }
    } else {
        const double lo = std::log(config.gt_min);
        const double hi = std::log(config.gt_max);
        for (int i = 0; i < config.points; ++i) grid[i] = std::exp(lo + (hi - lo) * (i / last));
    }
    grid.front() = config.gt_min;
    grid.back() = config.gt_max;
    return grid;
}

std::vector<Record> scan(const ScanConfig& config) {
    const auto grid = make_grid(config);
    std::vector<Record> records(grid.size());
    const auto fill = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            records[i] = analyse(build_xstate(config.params, grid[i]), grid[i]);
        }
    };

    std::size_t workers = config.workers == 0 ? std::thread::hardware_concurrency()
                                              : static_cast<std::size_t>(config.workers);
    workers = std::clamp<std::size_t>(workers, 1, grid.size());
    if (workers == 1) {
        fill(0, grid.size());
        return records;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (grid.size() + workers - 1) / workers;
    for (std::size_t begin = 0; begin < grid.size(); begin += chunk) {
        pool.emplace_back(fill, begin, std::min(grid.size(), begin + chunk));
    }
    pool.clear();
    return records;
}

std::string_view regime_name(Regime r) {
    switch (r) {
        case Regime::I: return "I";
        case Regime::II: return "II";
        case Regime::III: return "III";
        case Regime::IV: return "IV";
        case Regime::Indeterminate: break;
    }
    return "indeterminate";
}

Regime RegimeSegmentation::regime_at(double gt) const {
    Regime current = Regime::Indeterminate;
    for (const auto& [start, label] : boundaries) {
        if (gt < start) break;
        current = label;
    }
    return current;
}

std::vector<Regime> RegimeSegmentation::labels() const {
    std::vector<Regime> out;
    for (const auto& b : boundaries) out.push_back(b.second);
    return out;
}

double max_deviation_from_median(const std::vector<double>& values, std::size_t lo,
                                 std::size_t hi) {
    if (hi <= lo || hi > values.size()) return 0;
    std::vector<double> window(values.begin() + lo, values.begin() + hi);
    const auto mid = window.begin() + window.size() / 2;
    std::nth_element(window.begin(), mid, window.end());
    double median = *mid;
    if (window.size() % 2 == 0) {
        median = (median + *std::max_element(window.begin(), mid)) / 2;
    }
    double dev = 0;
    for (std::size_t i = lo; i < hi; ++i) dev = std::max(dev, std::abs(values[i] - median));
    return dev;
}

RegimeSegmentation segment_regimes(const std::vector<Record>& records,
                                   const RegimeTimes<double>& times, const ScanConfig& config) {
    if (records.size() < kMinRecords) {
        std::ostringstream msg;
        msg << "segmentation needs at least " << kMinRecords << " records (got "
            << records.size() << ")";
        throw ResolutionError(msg.str());
    }
    const double tol = config.freeze_tol;
    const double gamma = config.params.gamma();
    const std::size_t n = records.size();

    RegimeSegmentation seg;
    seg.sudden_death_gt = find_sudden_death(records, config.params);
    if (std::abs(config.params.imbalance()) < 1e-12) {
        seg.degenerate = true;
        return seg;
    }

    std::vector<double> classical(n);
    std::vector<double> discord(n);
    for (std::size_t i = 0; i < n; ++i) {
        classical[i] = records[i].classical;
        discord[i] = records[i].discord;
    }

    const auto is_sigma_x = [&](std::size_t i) {
        return records[i].optimal_basis.kind == MeasurementBasis<double>::Kind::SigmaX;
    };

    // End of regime I: first sigma_x point (the scan may already start there).
    std::size_t sw = 0;
    while (sw < n && !is_sigma_x(sw)) ++sw;

    // Regimes II-III: longest stretch from the switch with frozen classical correlations.
    std::size_t c_end = sw;
    while (c_end < n && frozen(classical, sw, c_end + 1, tol)) ++c_end;

    // Regime III: trailing run of sub-tolerance discord inside that stretch.
    std::size_t d_start = c_end;
    while (d_start > sw && discord[d_start - 1] < tol) --d_start;

    const auto add = [&](std::size_t lo, std::size_t hi, Regime label, bool holds) {
        if (hi <= lo) return;
        const bool resolved = hi - lo >= kMinSegmentPoints && holds;
        seg.boundaries.emplace_back(records[lo].gt, resolved ? label : Regime::Indeterminate);
    };

    add(0, sw, Regime::I, frozen(discord, 0, sw, tol) && !frozen(classical, 0, sw, tol));
    add(sw, d_start, Regime::II, !frozen(discord, sw, d_start, tol));
    add(d_start, c_end, Regime::III, true);
    add(c_end, n, Regime::IV, !frozen(classical, c_end, n, tol));

    if (sw == n && seg.boundaries.size() == 1 && seg.boundaries.front().second != Regime::I) {
        seg.degenerate = true;
    }

    // Snap the I/II boundary onto the exact basis switch.
    if (sw > 0 && sw < n && !seg.boundaries.empty()) {
        const auto exact = detect_switch_time(config.params, {records[sw - 1].gt, records[sw].gt});
        for (auto& b : seg.boundaries) {
            if (b.first == records[sw].gt && exact) b.first = *exact;
        }
    }

    const auto iii = std::find_if(seg.boundaries.begin(), seg.boundaries.end(),
                                  [](const auto& b) { return b.second == Regime::III; });
    if (iii != seg.boundaries.end() && times.t1 && times.mesoscopic_window) {
        const double lo = std::max(records[d_start].gt, *times.t1 * gamma);
        const double hi = std::min(records[c_end - 1].gt, times.t2 * gamma);
        if (lo < hi) seg.dfs_window = std::pair{lo, hi};
    }

    if (c_end + 2 < n) {
        const auto first = discord.begin() + static_cast<std::ptrdiff_t>(c_end);
        const auto peak = std::max_element(first, discord.end());
        if (peak != first && peak != discord.end() - 1) {
            seg.discord_revival_gt = records[static_cast<std::size_t>(peak - discord.begin())].gt;
        }
    }
    return seg;
}

std::optional<double> find_sudden_death(const std::vector<Record>& records,
                                        const ModelParams<double>& params) {
    if (records.empty()) return std::nullopt;
    // Last point with positive concurrence; death requires zero ever after.
    std::optional<std::size_t> last_alive;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].concurrence > kDeathThreshold) last_alive = i;
    }
    if (!last_alive || *last_alive + 1 >= records.size()) return std::nullopt;

    double lo = records[*last_alive].gt;
    double hi = records[*last_alive + 1].gt;
    const auto alive = [&](double gt) {
        return 2 * concurrence_margin(build_xstate(params, gt)) > kDeathThreshold;
    };
    for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
        const double mid = lo + (hi - lo) / 2;
        (alive(mid) ? lo : hi) = mid;
    }
    return hi;
}

std::optional<double> locate_switch_time(const ModelParams<double>& params, double gt_max,
                                         int points) {
    if (!(gt_max > 0) || points < 2) throw ParameterError("locate_switch_time needs gt_max > 0");
    const double lo = std::min(1e-8, gt_max / 2);
    double prev_gt = 0;
    // Ties count as sigma_z, as in classical_correlations.
    const auto prefers_x = [&](double gt) { return basis_preference(params, gt) > kTieTolerance; };
    bool prev_x = prefers_x(prev_gt);
    for (int i = 0; i < points; ++i) {
        const double gt = lo * std::pow(gt_max / lo, i / double(points - 1));
        const bool is_x = prefers_x(gt);
        if (is_x != prev_x) return detect_switch_time(params, {prev_gt, gt});
        prev_gt = gt;
        prev_x = is_x;
    }
    return std::nullopt;
}

}  // namespace catdiscord

#pragma once

// Time sweeps of the analytic model and their segmentation into the four
// dynamical regimes:
//   I   discord frozen, classical correlations decaying
//   II  classical frozen, discord decaying
//   III both frozen, discord below the freezing tolerance (decoherence-free window)
//   IV  classical decaying again, discord revives and decays

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "catdiscord/correlations.hpp"
#include "catdiscord/model.hpp"

namespace catdiscord {

enum class Spacing { Linear, Log };

struct ScanConfig {
    ModelParams<double> params{1.0, 0.5, 1.0};
    double gt_min{0};
    double gt_max{6};
    int points{400};
    Spacing spacing{Spacing::Linear};
    /// Freezing tolerance in bits.
    double freeze_tol{2e-3};
    int derivative_window{5};
    /// Worker threads for scan(); 0 picks the hardware concurrency.
    int workers{1};

    /// Throws ParameterError on gt_min >= gt_max, points < 2, freeze_tol <= 0, or
    /// log spacing with gt_min <= 0.
    void validate() const;
};

/// Log spacing for nbar >= 5 (regime I is squeezed near the origin), linear otherwise.
Spacing default_spacing(double nbar);

std::vector<double> make_grid(const ScanConfig& config);

using Record = CorrelationRecord<double>;

/// One record per grid point, in increasing gt.
std::vector<Record> scan(const ScanConfig& config);

enum class Regime { I, II, III, IV, Indeterminate };

std::string_view regime_name(Regime r);

struct RegimeSegmentation {
    /// Start of each labelled segment, in increasing gt.
    std::vector<std::pair<double, Regime>> boundaries;
    std::optional<double> sudden_death_gt;
    std::optional<std::pair<double, double>> dfs_window;
    /// Local maximum of discord inside regime IV, if any.
    std::optional<double> discord_revival_gt;
    /// p = 1/2 (or no basis switch and no structure): nothing to segment.
    bool degenerate{false};

    /// Label in force at gt; Indeterminate before the first boundary.
    Regime regime_at(double gt) const;
    std::vector<Regime> labels() const;
};

/// Throws ResolutionError for fewer than 50 records.
RegimeSegmentation segment_regimes(const std::vector<Record>& records,
                                   const RegimeTimes<double>& times, const ScanConfig& config);

/// First gt after which the concurrence stays <= 1e-10 for the rest of the
/// scan, refined by bisection on the model between the bracketing points.
std::optional<double> find_sudden_death(const std::vector<Record>& records,
                                        const ModelParams<double>& params);

/// Numeric basis-switch time: the first sign change of the sigma_z - sigma_x
/// entropy gap on a log grid over (0, gt_max], refined by detect_switch_time.
std::optional<double> locate_switch_time(const ModelParams<double>& params, double gt_max,
                                         int points = 4000);

/// Max deviation from the median over records[lo, hi) of the selected value.
double max_deviation_from_median(const std::vector<double>& values, std::size_t lo,
                                 std::size_t hi);

}  // namespace catdiscord

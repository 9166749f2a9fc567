#pragma once

// Oracle harness: compares the analytic X-state against the Fock-space
// evolution over a grid of (nbar, p, gt) points.

#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "catdiscord/fock_oracle.hpp"

namespace catdiscord::oracle {

struct VerifyTolerances {
    double matrix_element{1e-8};
    double leakage{1e-10};
    double discord_gap{1e-6};
};

struct PointReport {
    double nbar{0};
    double p{0};
    double gt{0};
    int truncation{0};
    double max_element_error{0};
    double leakage{0};
    double max_non_x{0};
    /// Brute-force classical correlations minus the sigma_x/sigma_z rule value.
    double discord_gap{0};
    double trace_after_channel_error{0};
    double kraus_completeness_error{0};
};

struct VerifySummary {
    std::vector<PointReport> points;
    double max_element_error{0};
    double max_leakage{0};
    double max_non_x{0};
    double max_discord_gap{0};
    /// First point breaching a tolerance, if any.
    std::optional<PointReport> first_failure;
    std::string failure_reason;

    bool passed() const { return !first_failure; }
};

struct VerifyGrid {
    std::vector<double> nbar{0.5, 1, 3, 10};
    std::vector<double> p{0, 0.3, 0.5, 1};
    std::vector<double> gt{0, 0.1, 0.5, 1, 2, 5};
};

struct VerifyOptions {
    VerifyTolerances tolerances;
    /// Cutoff override; default_truncation(nbar) otherwise.
    std::optional<int> truncation;
    int brute_force_grid{181};
};

/// Dense Fock-space evolution of every grid point.
VerifySummary verify_grid(const VerifyGrid& grid, const VerifyOptions& options = {});

/// Random real X-state with positive populations: Dirichlet(1,1,1,1) diagonal
/// and coherences uniform within the positivity bounds, with independent signs.
template <typename Rng>
XState<double> random_real_xstate(Rng& rng) {
    std::exponential_distribution<double> expo(1.0);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double d[4];
    double total = 0;
    for (double& v : d) total += (v = expo(rng));
    for (double& v : d) v /= total;
    XState<double> x{d[0], d[1], d[2], d[3], 0, 0};
    x.r14 = unit(rng) * std::sqrt(x.r11 * x.r44);
    x.r23 = unit(rng) * std::sqrt(x.r22 * x.r33);
    return x;
}

/// max |E_1(rho) - rho| for the initial state of `params`; should be ~0.
double channel_identity_error(const ModelParams<double>& params, int truncation);

}  // namespace catdiscord::oracle

#include "catdiscord/verify.hpp"

#include <cmath>
#include <sstream>

#include "catdiscord/correlations.hpp"

namespace catdiscord::oracle {

namespace {

void fold(VerifySummary& summary, const PointReport& r, const VerifyTolerances& tol) {
    summary.points.push_back(r);
    summary.max_element_error = std::max(summary.max_element_error, r.max_element_error);
    summary.max_leakage = std::max(summary.max_leakage, std::abs(r.leakage));
    summary.max_non_x = std::max(summary.max_non_x, r.max_non_x);
    summary.max_discord_gap = std::max(summary.max_discord_gap, r.discord_gap);
    if (summary.first_failure) return;

    std::ostringstream why;
    if (!(r.max_element_error <= tol.matrix_element)) {
        why << "matrix-element error " << r.max_element_error << " > " << tol.matrix_element;
    } else if (!(std::abs(r.leakage) <= tol.leakage)) {
        why << "leakage " << r.leakage << " > " << tol.leakage;
    } else if (!(r.discord_gap <= tol.discord_gap)) {
        why << "brute-force gap " << r.discord_gap << " > " << tol.discord_gap;
    } else {
        return;
    }
    summary.first_failure = r;
    summary.failure_reason = why.str();
}

}  // namespace

VerifySummary verify_grid(const VerifyGrid& grid, const VerifyOptions& options) {
    VerifySummary summary;
    for (double nbar : grid.nbar) {
        const int n = options.truncation.value_or(default_truncation(nbar));
        for (double p : grid.p) {
            const ModelParams<double> params(nbar, p);
            const auto rho0 = initial_density(params, n);
            for (double gt : grid.gt) {
                const ChannelSpec spec(transmissivity(gt), n);
                const auto rho = apply_channel_both_modes(rho0, spec);
                const auto proj =
                    project_to_cat_basis(rho, std::sqrt(nbar * spec.eta()), /*leakage_bound=*/1.0);
                const auto analytic = build_xstate(params, gt);

                PointReport r;
                r.nbar = nbar;
                r.p = p;
                r.gt = gt;
                r.truncation = n;
                r.max_element_error = max_abs_difference(analytic, proj.x);
                r.leakage = proj.leakage;
                r.max_non_x = proj.max_non_x;
                r.trace_after_channel_error = std::abs(rho.matrix.trace() - Complex(1));
                r.kraus_completeness_error = spec.completeness_error();
                r.discord_gap = brute_force_classical(analytic, options.brute_force_grid).value -
                                classical_correlations(analytic).value;
                fold(summary, r, options.tolerances);
            }
        }
    }
    return summary;
}

double channel_identity_error(const ModelParams<double>& params, int truncation) {
    const auto rho0 = initial_density(params, truncation);
    const auto rho = apply_channel_both_modes(rho0, ChannelSpec(1.0, truncation));
    return (rho.matrix - rho0.matrix).cwiseAbs().maxCoeff();
}

}  // namespace catdiscord::oracle

#pragma once

// Analytic two-mode cat-state model: two cavity modes prepared in a mixture of
// entangled coherent states, each damped by its own zero-temperature reservoir.
// In the even/odd cat basis of each mode the evolved state stays an X-state;
// everything here is closed form and templated on the real scalar type.

#include <cmath>
#include <optional>
#include <sstream>
#include <string_view>

#include "catdiscord/errors.hpp"

namespace catdiscord {

template <typename Scalar = double>
class ModelParams {
public:
    /// nbar: mean photon number per mode; p: weight of the psi-type component;
    /// gamma: cavity decay rate. Throws ParameterError on invalid input.
    ModelParams(Scalar nbar, Scalar p, Scalar gamma = Scalar(1))
        : nbar_(nbar), p_(p), gamma_(gamma) {
        using std::isfinite;
        if (!isfinite(nbar) || !(nbar > 0)) {
            throw ParameterError("nbar must be finite and > 0");
        }
        if (!isfinite(p) || p < 0 || p > 1) {
            throw ParameterError("p must lie in [0, 1]");
        }
        if (!isfinite(gamma) || !(gamma > 0)) {
            throw ParameterError("gamma must be finite and > 0");
        }
    }

    Scalar nbar() const { return nbar_; }
    Scalar p() const { return p_; }
    Scalar gamma() const { return gamma_; }

    /// 2p - 1, the signed weight of the anti-diagonal coherences.
    Scalar imbalance() const { return 2 * p_ - 1; }

private:
    Scalar nbar_;
    Scalar p_;
    Scalar gamma_;
};

template <typename Scalar = double>
struct EnvelopeFactors {
    Scalar gt;                   // dimensionless time gamma*t
    Scalar alpha_t_sq;           // nbar e^{-gt}, amplitude left in the cavity
    Scalar alpha_bar_t_sq;       // nbar (1 - e^{-gt}), amplitude leaked out
    Scalar gamma_plus_sq;        // 2(1 + e^{-2 alpha_t^2})
    Scalar gamma_minus_sq;       // 2(1 - e^{-2 alpha_t^2})
    Scalar lambda_plus_sq;       // 2(1 + e^{-4 nbar}), time independent
    Scalar lambda_bar_plus_sq;   // 2(1 + e^{-4 alpha_bar_t^2})
    Scalar lambda_bar_minus_sq;  // 2(1 - e^{-4 alpha_bar_t^2})
};

/// Two-qubit X-state in the ordered basis |++>, |+->, |-+>, |-->, where the
/// first label is mode a and +/- are the even/odd cat states.
/// r41 = r14 and r32 = r23 (real state).
template <typename Scalar = double>
struct XState {
    Scalar r11{1};
    Scalar r22{0};
    Scalar r33{0};
    Scalar r44{0};
    Scalar r14{0};
    Scalar r23{0};

    Scalar trace() const { return r11 + r22 + r33 + r44; }
};

inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPositivityTolerance = 1e-12;

/// Trace and 2x2-block positivity. Does not require r22 == r33, which only the
/// model family satisfies.
template <typename Scalar>
bool is_valid(const XState<Scalar>& x, Scalar tol = Scalar(kTraceTolerance)) {
    using std::abs;
    const Scalar lo = -tol;
    if (x.r11 < lo || x.r22 < lo || x.r33 < lo || x.r44 < lo) return false;
    if (abs(x.trace() - 1) > tol) return false;
    if (x.r14 * x.r14 > x.r11 * x.r44 + Scalar(kPositivityTolerance)) return false;
    if (x.r23 * x.r23 > x.r22 * x.r33 + Scalar(kPositivityTolerance)) return false;
    return true;
}

template <typename Scalar>
bool is_mode_symmetric(const XState<Scalar>& x, Scalar tol = Scalar(kTraceTolerance)) {
    using std::abs;
    return abs(x.r22 - x.r33) <= tol;
}

template <typename Scalar>
Scalar max_abs_difference(const XState<Scalar>& a, const XState<Scalar>& b) {
    using std::abs;
    using std::max;
    Scalar m = abs(a.r11 - b.r11);
    m = max(m, abs(a.r22 - b.r22));
    m = max(m, abs(a.r33 - b.r33));
    m = max(m, abs(a.r44 - b.r44));
    m = max(m, abs(a.r14 - b.r14));
    m = max(m, abs(a.r23 - b.r23));
    return m;
}

namespace detail {

// 1 - e^{-x}, accurate for small x.
template <typename Scalar>
Scalar one_minus_exp_neg(Scalar x) {
    using std::expm1;
    return -expm1(-x);
}

}  // namespace detail

template <typename Scalar>
EnvelopeFactors<Scalar> compute_envelopes(const ModelParams<Scalar>& params, Scalar gt) {
    using std::exp;
    using std::isfinite;
    if (!isfinite(gt) || gt < 0) {
        std::ostringstream msg;
        msg << "gamma*t must be finite and >= 0 (got " << gt << ")";
        throw DomainError(msg.str());
    }
    const Scalar nbar = params.nbar();
    EnvelopeFactors<Scalar> f{};
    f.gt = gt;
    f.alpha_t_sq = nbar * exp(-gt);
    f.alpha_bar_t_sq = nbar * detail::one_minus_exp_neg(gt);
    f.gamma_plus_sq = 2 * (1 + exp(-2 * f.alpha_t_sq));
    f.gamma_minus_sq = 2 * detail::one_minus_exp_neg(2 * f.alpha_t_sq);
    f.lambda_plus_sq = 2 * (1 + exp(-4 * nbar));
    f.lambda_bar_plus_sq = 2 * (1 + exp(-4 * f.alpha_bar_t_sq));
    f.lambda_bar_minus_sq = 2 * detail::one_minus_exp_neg(4 * f.alpha_bar_t_sq);
    return f;
}

template <typename Scalar>
XState<Scalar> build_xstate(const ModelParams<Scalar>& params, Scalar gt) {
    const auto f = compute_envelopes(params, gt);
    // Every entry is (1/16) [G_i G_j Lbar_k / L+]^2; work with the squares.
    const Scalar scale = 1 / (16 * f.lambda_plus_sq);
    const Scalar cross = f.gamma_plus_sq * f.gamma_minus_sq;

    XState<Scalar> x;
    x.r11 = scale * f.gamma_plus_sq * f.gamma_plus_sq * f.lambda_bar_plus_sq;
    x.r44 = scale * f.gamma_minus_sq * f.gamma_minus_sq * f.lambda_bar_plus_sq;
    x.r22 = scale * cross * f.lambda_bar_minus_sq;
    x.r33 = x.r22;
    x.r14 = params.imbalance() * scale * cross * f.lambda_bar_plus_sq;
    x.r23 = params.imbalance() * x.r22;
    return x;
}

/// Stationary state reached inside the decoherence-free window.
template <typename Scalar>
XState<Scalar> plateau_xstate(Scalar p) {
    using std::isfinite;
    if (!isfinite(p) || p < 0 || p > 1) throw ParameterError("p must lie in [0, 1]");
    const Scalar quarter = Scalar(1) / 4;
    const Scalar coherence = (2 * p - 1) / 4;
    return XState<Scalar>{quarter, quarter, quarter, quarter, coherence, coherence};
}

template <typename Scalar = double>
struct RegimeTimes {
    /// Start of the decoherence-free window; present iff nbar > 1.
    std::optional<Scalar> t1;
    /// End of the window, ln(nbar)/gamma; reported even when non-positive.
    Scalar t2{};
    /// Sudden classical-to-quantum decoherence transition.
    std::optional<Scalar> ts;
    /// t2 - t1; present iff nbar > 1.
    std::optional<Scalar> dfs_span;
    /// True when 0 < t1 < t2, i.e. a mesoscopic window actually exists.
    bool mesoscopic_window{false};
    std::string_view t1_note;
    std::string_view ts_note;
};

template <typename Scalar>
RegimeTimes<Scalar> characteristic_times(const ModelParams<Scalar>& params) {
    using std::abs;
    using std::log;
    const Scalar nbar = params.nbar();
    const Scalar inv_gamma = 1 / params.gamma();

    RegimeTimes<Scalar> times;
    times.t2 = inv_gamma * log(nbar);
    if (nbar > 1) {
        times.t1 = inv_gamma * log(nbar / (nbar - 1));
        times.dfs_span = inv_gamma * log(nbar - 1);
        times.mesoscopic_window = *times.t1 < times.t2;
        if (!times.mesoscopic_window) times.t1_note = "no mesoscopic window (t2 <= t1)";
    } else {
        times.t1_note = "undefined (nbar <= 1)";
    }

    const Scalar imbalance = abs(params.imbalance());
    if (imbalance == 0) {
        times.ts_note = "undefined (p = 1/2, no transition)";
    } else {
        const Scalar arg = 1 + log(imbalance) / (4 * nbar);
        if (!(arg > 0)) {
            times.ts_note = "undefined (transition never reached)";
        } else if (!(arg < 1)) {
            times.ts_note = "undefined (p in {0, 1}, switch at the origin)";
        } else {
            times.ts = -inv_gamma * log(arg);
        }
    }
    return times;
}

}  // namespace catdiscord

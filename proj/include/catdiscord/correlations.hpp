#pragma once

// Entropies, mutual information, classical correlations, discord and
// concurrence of a real two-qubit X-state. Logarithms are base 2 throughout.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <string_view>
#include <utility>

#include "catdiscord/errors.hpp"
#include "catdiscord/model.hpp"

namespace catdiscord {

/// Eigenvalues in [-kClampFloor, 0) are treated as rounding noise and set to 0.
inline constexpr double kClampFloor = 1e-9;
/// Conditional entropies closer than this count as a tie (resolved to sigma_z).
inline constexpr double kTieTolerance = 1e-12;

enum class Subsystem { A, B };

/// Projective measurement {|n><n|, |-n><-n|} on one qubit, n the Bloch vector
/// at polar angle theta and azimuth phi.
template <typename Scalar = double>
struct MeasurementBasis {
    enum class Kind { SigmaZ, SigmaX, General };

    Kind kind{Kind::SigmaZ};
    Scalar theta{0};
    Scalar phi{0};

    static MeasurementBasis sigma_z() { return {Kind::SigmaZ, 0, 0}; }
    static MeasurementBasis sigma_x() {
        return {Kind::SigmaX, std::numbers::pi_v<Scalar> / 2, 0};
    }
    static MeasurementBasis general(Scalar theta, Scalar phi) {
        return {Kind::General, theta, phi};
    }

    std::array<Scalar, 3> bloch_vector() const {
        using std::cos;
        using std::sin;
        switch (kind) {
            case Kind::SigmaZ: return {0, 0, 1};
            case Kind::SigmaX: return {1, 0, 0};
            case Kind::General: break;
        }
        return {sin(theta) * cos(phi), sin(theta) * sin(phi), cos(theta)};
    }

    friend bool operator==(const MeasurementBasis& a, const MeasurementBasis& b) {
        return a.kind == b.kind && a.theta == b.theta && a.phi == b.phi;
    }
};

/// Maps General angles that coincide with sigma_z or sigma_x (within tol, and
/// up to the projector-pair symmetry n -> -n) onto the named basis.
template <typename Scalar>
MeasurementBasis<Scalar> canonicalize(const MeasurementBasis<Scalar>& basis,
                                      Scalar tol = Scalar(1e-12)) {
    using Basis = MeasurementBasis<Scalar>;
    if (basis.kind != Basis::Kind::General) return basis;
    const auto n = basis.bloch_vector();
    using std::abs;
    if (abs(abs(n[2]) - 1) <= tol) return Basis::sigma_z();
    if (abs(abs(n[0]) - 1) <= tol) return Basis::sigma_x();
    return basis;
}

template <typename Scalar>
std::string_view basis_name(const MeasurementBasis<Scalar>& basis) {
    switch (basis.kind) {
        case MeasurementBasis<Scalar>::Kind::SigmaZ: return "sigma_z";
        case MeasurementBasis<Scalar>::Kind::SigmaX: return "sigma_x";
        case MeasurementBasis<Scalar>::Kind::General: break;
    }
    return "general";
}

/// Closed-form eigenvalues of the X-state: outer {11,14,44} block first, then
/// the inner {22,23,33} block, each pair in descending order.
template <typename Scalar>
std::array<Scalar, 4> xstate_spectrum(const XState<Scalar>& x) {
    using std::sqrt;
    const Scalar outer_mean = (x.r11 + x.r44) / 2;
    const Scalar outer_radius = sqrt((x.r11 - x.r44) * (x.r11 - x.r44) / 4 + x.r14 * x.r14);
    const Scalar inner_mean = (x.r22 + x.r33) / 2;
    const Scalar inner_radius = sqrt((x.r22 - x.r33) * (x.r22 - x.r33) / 4 + x.r23 * x.r23);
    return {outer_mean + outer_radius, outer_mean - outer_radius, inner_mean + inner_radius,
            inner_mean - inner_radius};
}

/// -sum lambda log2 lambda, with 0 log 0 = 0. Entries in [-1e-9, 0) are clamped.
template <typename Scalar>
Scalar von_neumann_entropy(std::span<const Scalar> spectrum) {
    using std::log2;
    Scalar s = 0;
    for (const Scalar lambda : spectrum) {
        if (lambda < -Scalar(kClampFloor)) {
            std::ostringstream msg;
            msg << "eigenvalue " << lambda << " below the positivity floor";
            throw PositivityError(msg.str());
        }
        if (lambda > 0) s -= lambda * log2(lambda);
    }
    return s;
}

template <typename Scalar, std::size_t N>
Scalar von_neumann_entropy(const std::array<Scalar, N>& spectrum) {
    return von_neumann_entropy(std::span<const Scalar>(spectrum));
}

/// Binary Shannon entropy h(q) in bits.
template <typename Scalar>
Scalar binary_entropy(Scalar q) {
    return von_neumann_entropy(std::array<Scalar, 2>{q, 1 - q});
}

template <typename Scalar>
struct MarginalSpectra {
    std::array<Scalar, 2> a;
    std::array<Scalar, 2> b;
};

/// Reduced states of an X-state are diagonal in the cat basis.
template <typename Scalar>
MarginalSpectra<Scalar> marginals(const XState<Scalar>& x) {
    return {{x.r11 + x.r22, x.r33 + x.r44}, {x.r11 + x.r33, x.r22 + x.r44}};
}

/// Same state with the two modes exchanged (|ab> -> |ba>).
template <typename Scalar>
XState<Scalar> swap_modes(const XState<Scalar>& x) {
    return {x.r11, x.r33, x.r22, x.r44, x.r14, x.r23};
}

namespace detail {

// Entropy of the normalized 2x2 Hermitian matrix [[d1, c], [c*, d2]] / (d1 + d2),
// weighted by the outcome probability d1 + d2.
template <typename Scalar>
Scalar weighted_qubit_entropy(Scalar d1, Scalar d2, Scalar abs_c_sq) {
    using std::sqrt;
    const Scalar weight = d1 + d2;
    if (!(weight > 0)) return 0;
    const Scalar half_gap = (d1 - d2) / 2;
    const Scalar radius = sqrt(half_gap * half_gap + abs_c_sq);
    const Scalar mean = weight / 2;
    const std::array<Scalar, 2> lambda{(mean + radius) / weight, (mean - radius) / weight};
    return weight * von_neumann_entropy(lambda);
}

template <typename Scalar>
Scalar conditional_entropy_sigma_z(const XState<Scalar>& x) {
    // Outcome b=+ leaves a in diag(r11, r33); b=- leaves diag(r22, r44).
    return weighted_qubit_entropy(x.r11, x.r33, Scalar(0)) +
           weighted_qubit_entropy(x.r22, x.r44, Scalar(0));
}

template <typename Scalar>
Scalar conditional_entropy_sigma_x(const XState<Scalar>& x) {
    // Both outcomes occur with probability 1/2 and leave a in
    // [[r11 + r22, +-(r14 + r23)], [., r33 + r44]] / 2 up to the sign.
    using std::sqrt;
    const Scalar gap = x.r11 + x.r22 - x.r33 - x.r44;
    const Scalar coherence = x.r14 + x.r23;
    const Scalar radius = sqrt(gap * gap + 4 * coherence * coherence);
    return binary_entropy((1 + radius) / 2);
}

template <typename Scalar>
Scalar conditional_entropy_general(const XState<Scalar>& x, const std::array<Scalar, 3>& n) {
    // Projectors (I +- n.sigma)/2 on b. The unnormalized conditional state of a
    // has diagonal (r11 (1+-nz) + r22 (1-+nz))/2, (r33 (1+-nz) + r44 (1-+nz))/2
    // and off-diagonal +-(r14 (nx + i ny) + r23 (nx - i ny))/2.
    Scalar total = 0;
    const Scalar re = (x.r14 + x.r23) * n[0] / 2;
    const Scalar im = (x.r14 - x.r23) * n[1] / 2;
    const Scalar abs_c_sq = re * re + im * im;
    for (const Scalar sign : {Scalar(1), Scalar(-1)}) {
        const Scalar up = (1 + sign * n[2]) / 2;
        const Scalar down = (1 - sign * n[2]) / 2;
        total += weighted_qubit_entropy(x.r11 * up + x.r22 * down, x.r33 * up + x.r44 * down,
                                        abs_c_sq);
    }
    return total;
}

}  // namespace detail

/// Average entropy sum_k p_k S(rho_k) of the unmeasured qubit after measuring
/// `measured` in `basis`.
template <typename Scalar>
Scalar conditional_entropy(const XState<Scalar>& x, const MeasurementBasis<Scalar>& basis,
                           Subsystem measured = Subsystem::B) {
    const XState<Scalar> y = measured == Subsystem::B ? x : swap_modes(x);
    switch (basis.kind) {
        case MeasurementBasis<Scalar>::Kind::SigmaZ: return detail::conditional_entropy_sigma_z(y);
        case MeasurementBasis<Scalar>::Kind::SigmaX: return detail::conditional_entropy_sigma_x(y);
        case MeasurementBasis<Scalar>::Kind::General: break;
    }
    return detail::conditional_entropy_general(y, basis.bloch_vector());
}

template <typename Scalar>
struct ClassicalCorrelations {
    Scalar value{};
    MeasurementBasis<Scalar> basis;
    Scalar entropy_sigma_z{};
    Scalar entropy_sigma_x{};
    /// Optimality condition for sigma_z: (|r23|+|r14|)^2 <= (r11-r22)(r44-r33).
    bool sigma_z_condition{false};
    /// Optimality condition for sigma_x: |sqrt(r11 r44) - sqrt(r22 r33)| <= |r23|+|r14|.
    bool sigma_x_condition{false};
    /// Both or neither condition held; the smaller entropy was used.
    bool rule_ambiguous{false};
    /// The two conditional entropies tied within 1e-12.
    bool degenerate{false};
    /// C came out slightly negative and was clamped to 0.
    bool clamped{false};
};

/// Maximal reduction of S(rho_a) by a sigma_x or sigma_z measurement on b.
template <typename Scalar>
ClassicalCorrelations<Scalar> classical_correlations(const XState<Scalar>& x,
                                                     Subsystem measured = Subsystem::B) {
    using std::abs;
    using std::sqrt;
    using Basis = MeasurementBasis<Scalar>;
    const XState<Scalar> y = measured == Subsystem::B ? x : swap_modes(x);

    ClassicalCorrelations<Scalar> out;
    const Scalar coherence = abs(y.r23) + abs(y.r14);
    out.sigma_z_condition = coherence * coherence <= (y.r11 - y.r22) * (y.r44 - y.r33);
    out.sigma_x_condition =
        abs(sqrt(std::max(y.r11 * y.r44, Scalar(0))) - sqrt(std::max(y.r22 * y.r33, Scalar(0)))) <=
        coherence;
    out.rule_ambiguous = out.sigma_z_condition == out.sigma_x_condition;

    out.entropy_sigma_z = conditional_entropy(y, Basis::sigma_z());
    out.entropy_sigma_x = conditional_entropy(y, Basis::sigma_x());
    Scalar best = out.entropy_sigma_z;
    out.basis = Basis::sigma_z();
    if (abs(out.entropy_sigma_x - out.entropy_sigma_z) <= Scalar(kTieTolerance)) {
        out.degenerate = true;
    } else if (out.entropy_sigma_x < out.entropy_sigma_z) {
        best = out.entropy_sigma_x;
        out.basis = Basis::sigma_x();
    }

    const auto m = marginals(y);
    out.value = von_neumann_entropy(m.a) - best;
    if (out.value < 0) {
        if (out.value < -Scalar(kClampFloor)) {
            throw PositivityError("classical correlations below the clamping floor");
        }
        out.value = 0;
        out.clamped = true;
    }
    return out;
}

template <typename Scalar = double>
struct CorrelationRecord {
    Scalar gt{};
    Scalar mutual_info{};
    Scalar classical{};
    Scalar discord{};
    Scalar concurrence{};
    MeasurementBasis<Scalar> optimal_basis;
    Scalar s_joint{};
    Scalar s_a{};
    Scalar s_b{};
    XState<Scalar> state;
    bool basis_degenerate{false};
    bool rule_ambiguous{false};
    /// Number of quantities clamped from [-1e-9, 0) to 0 for this record.
    int clamp_count{0};
};

template <typename Scalar>
Scalar mutual_information(const XState<Scalar>& x) {
    const auto m = marginals(x);
    return von_neumann_entropy(m.a) + von_neumann_entropy(m.b) -
           von_neumann_entropy(xstate_spectrum(x));
}

/// Wootters concurrence in its X-state closed form.
template <typename Scalar>
Scalar concurrence_xstate(const XState<Scalar>& x) {
    using std::abs;
    using std::max;
    using std::sqrt;
    const Scalar outer = abs(x.r14) - sqrt(max(x.r22 * x.r33, Scalar(0)));
    const Scalar inner = abs(x.r23) - sqrt(max(x.r11 * x.r44, Scalar(0)));
    return 2 * max({Scalar(0), outer, inner});
}

/// Signed version of the concurrence argument: positive iff entangled.
template <typename Scalar>
Scalar concurrence_margin(const XState<Scalar>& x) {
    using std::abs;
    using std::max;
    using std::sqrt;
    return max(abs(x.r14) - sqrt(max(x.r22 * x.r33, Scalar(0))),
               abs(x.r23) - sqrt(max(x.r11 * x.r44, Scalar(0))));
}

/// All correlation measures for one state. Discord is I - C, clamped at 0 when
/// it lies in [-1e-9, 0); the classical part is then set to I so that
/// I = C + D holds exactly.
template <typename Scalar>
CorrelationRecord<Scalar> analyse(const XState<Scalar>& x, Scalar gt = Scalar(0),
                                  Subsystem measured = Subsystem::B) {
    CorrelationRecord<Scalar> rec;
    rec.gt = gt;
    rec.state = x;
    const auto m = marginals(x);
    rec.s_joint = von_neumann_entropy(xstate_spectrum(x));
    rec.s_a = von_neumann_entropy(m.a);
    rec.s_b = von_neumann_entropy(m.b);
    rec.mutual_info = rec.s_a + rec.s_b - rec.s_joint;
    if (rec.mutual_info < 0) {
        if (rec.mutual_info < -Scalar(kClampFloor)) {
            throw PositivityError("mutual information below the clamping floor");
        }
        rec.mutual_info = 0;
        ++rec.clamp_count;
    }

    const auto cc = classical_correlations(x, measured);
    rec.classical = cc.value;
    rec.optimal_basis = cc.basis;
    rec.basis_degenerate = cc.degenerate;
    rec.rule_ambiguous = cc.rule_ambiguous;
    if (cc.clamped) ++rec.clamp_count;

    rec.discord = rec.mutual_info - rec.classical;
    if (rec.discord < 0) {
        if (rec.discord < -Scalar(kClampFloor)) {
            throw PositivityError("discord below the clamping floor");
        }
        rec.discord = 0;
        rec.classical = rec.mutual_info;
        ++rec.clamp_count;
    }
    rec.concurrence = concurrence_xstate(x);
    return rec;
}

template <typename Scalar>
Scalar discord(const XState<Scalar>& x) {
    return analyse(x).discord;
}

/// Sigma_z minus sigma_x conditional entropy of the model state at gt.
template <typename Scalar>
Scalar basis_preference(const ModelParams<Scalar>& params, Scalar gt) {
    const auto x = build_xstate(params, gt);
    return conditional_entropy(x, MeasurementBasis<Scalar>::sigma_z()) -
           conditional_entropy(x, MeasurementBasis<Scalar>::sigma_x());
}

/// Bisection on gt for the crossing of the sigma_x and sigma_z conditional
/// entropies inside `bracket`. Empty when the endpoints prefer the same basis
/// or either endpoint is a tie (within kTieTolerance).
template <typename Scalar>
std::optional<Scalar> detect_switch_time(const ModelParams<Scalar>& params,
                                         std::pair<Scalar, Scalar> bracket,
                                         Scalar gt_tol = Scalar(1e-13)) {
    const auto side = [&](Scalar gt) {
        const Scalar f = basis_preference(params, gt);
        return f > Scalar(kTieTolerance) ? 1 : (f < -Scalar(kTieTolerance) ? -1 : 0);
    };
    auto [lo, hi] = bracket;
    if (!(lo < hi)) return std::nullopt;
    const int s_lo = side(lo);
    const int s_hi = side(hi);
    if (s_lo == 0 || s_hi == 0 || s_lo == s_hi) return std::nullopt;
    for (int iter = 0; iter < 200 && hi - lo > gt_tol; ++iter) {
        const Scalar mid = lo + (hi - lo) / 2;
        const int s_mid = side(mid);
        if (s_mid == 0) return mid;
        (s_mid == s_lo ? lo : hi) = mid;
    }
    return lo + (hi - lo) / 2;
}

}  // namespace catdiscord

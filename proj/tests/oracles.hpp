#pragma once

// Reference computations for the tests. Written from first principles with
// Eigen eigensolvers and explicit sums; nothing here calls the closed forms
// under test.

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "catdiscord/model.hpp"

namespace oracles {

inline double log2_safe(double x) { return x > 0 ? std::log(x) / std::log(2.0) : 0.0; }

inline double h2(double q) { return -q * log2_safe(q) - (1 - q) * log2_safe(1 - q); }

inline Eigen::Matrix4d real_matrix(const catdiscord::XState<double>& x) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = x.r11;
    m(1, 1) = x.r22;
    m(2, 2) = x.r33;
    m(3, 3) = x.r44;
    m(0, 3) = m(3, 0) = x.r14;
    m(1, 2) = m(2, 1) = x.r23;
    return m;
}

template <typename Matrix>
double entropy(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    double s = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double l = es.eigenvalues()(i);
        if (l > 0) s -= l * log2_safe(l);
    }
    return s;
}

inline Eigen::Matrix2d reduce_a(const Eigen::Matrix4d& m) {
    Eigen::Matrix2d r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
    return r;
}

inline Eigen::Matrix2d reduce_b(const Eigen::Matrix4d& m) {
    Eigen::Matrix2d r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = m(i, j) + m(i + 2, j + 2);
    return r;
}

inline double mutual_information(const catdiscord::XState<double>& x) {
    const Eigen::Matrix4d m = real_matrix(x);
    return entropy(reduce_a(m)) + entropy(reduce_b(m)) - entropy(m);
}

/// S(a) - min over a 1-degree grid of the conditional entropy after a real
/// (x-z plane) projective measurement on b. Coarse but independent.
inline double classical_xz_scan(const catdiscord::XState<double>& x, int steps = 721) {
    const Eigen::Matrix4d m = real_matrix(x);
    double best = 1e300;
    for (int s = 0; s < steps; ++s) {
        const double th = M_PI * s / (steps - 1);
        Eigen::Vector2d up(std::cos(th / 2), std::sin(th / 2));
        Eigen::Vector2d dn(-std::sin(th / 2), std::cos(th / 2));
        double total = 0;
        for (const Eigen::Vector2d& v : {up, dn}) {
            const Eigen::Matrix2d proj = v * v.transpose();
            Eigen::Matrix4d k = Eigen::Matrix4d::Zero();
            k.topLeftCorner<2, 2>() = proj;
            k.bottomRightCorner<2, 2>() = proj;
            const Eigen::Matrix4d post = k * m * k;
            const Eigen::Matrix2d ra = reduce_a(post);
            const double w = ra.trace();
            if (w > 1e-15) total += w * entropy(Eigen::Matrix2d(ra / w));
        }
        best = std::min(best, total);
    }
    return entropy(reduce_a(m)) - best;
}

}  // namespace oracles

#include "catdiscord/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <functional>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "catdiscord/errors.hpp"

namespace catdiscord::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

// Poisson weight e^{-mean} mean^n / n! in log space.
double poisson_weight(double mean, int n) {
    if (mean == 0) return n == 0 ? 1.0 : 0.0;
    return std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0));
}

double poisson_tail(double mean, int truncation) {
    // Mass strictly beyond the cutoff; terms decay super-exponentially past the mean.
    double tail = 0;
    for (int n = truncation + 1;; ++n) {
        const double w = poisson_weight(mean, n);
        tail += w;
        if (n > mean && (w < 1e-300 || w < tail * 1e-18)) break;
    }
    return tail;
}

Eigen::VectorXcd kron(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
    Eigen::VectorXcd out(x.size() * y.size());
    for (Eigen::Index m = 0; m < x.size(); ++m) {
        out.segment(m * y.size(), y.size()) = x(m) * y;
    }
    return out;
}

// Entropy in bits of a 2x2 Hermitian matrix with unit trace.
double qubit_entropy(const Eigen::Matrix2cd& rho) {
    const double a = rho(0, 0).real();
    const double d = rho(1, 1).real();
    const double b2 = std::norm(rho(0, 1));
    const double tr = a + d;
    const double disc = std::sqrt((a - d) * (a - d) + 4 * b2);
    double s = 0;
    for (double lambda : {(tr + disc) / 2, (tr - disc) / 2}) {
        if (lambda > 0) s -= lambda * std::log(lambda);
    }
    return s / std::numbers::ln2;
}

double entropy_bits(const Eigen::VectorXd& spectrum) {
    double s = 0;
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
        const double lambda = spectrum(i);
        if (lambda < -1e-9) throw PositivityError("negative eigenvalue in oracle entropy");
        if (lambda > 0) s -= lambda * std::log(lambda);
    }
    return s / std::numbers::ln2;
}

// Per-k vectors w_k(j) = <j|K_k|j+k>, j = 0 .. N-k.
std::vector<Eigen::VectorXd> shifted_weights(const ChannelSpec& spec) {
    const int d = spec.truncation() + 1;
    std::vector<Eigen::VectorXd> out;
    out.reserve(d);
    for (int k = 0; k < d; ++k) {
        Eigen::VectorXd w(d - k);
        for (int j = 0; j < d - k; ++j) w(j) = spec.kraus_entry(k, j + k);
        out.push_back(std::move(w));
    }
    return out;
}

template <typename In, typename Out>
void accumulate_single_mode(const In& in, Out&& out, const std::vector<Eigen::VectorXd>& weights) {
    const Eigen::Index d = in.rows();
    for (Eigen::Index k = 0; k < d; ++k) {
        const auto& w = weights[k];
        if (w.isZero(0)) continue;
        const Eigen::Index r = d - k;
        out.topLeftCorner(r, r) += w.asDiagonal() * in.bottomRightCorner(r, r) * w.asDiagonal();
    }
}

}  // namespace

int default_truncation(double nbar) {
    if (!(nbar >= 0) || !std::isfinite(nbar)) throw ParameterError("nbar must be finite and >= 0");
    return static_cast<int>(std::ceil(nbar + 10 * std::sqrt(nbar) + 20));
}

FockVector coherent_fock(Complex alpha, int truncation, double tail_tol) {
    if (truncation < 0) throw ParameterError("truncation must be >= 0");
    const double mean = std::norm(alpha);
    const double tail = poisson_tail(mean, truncation);
    if (tail >= tail_tol) {
        int required = truncation;
        while (poisson_tail(mean, required) >= tail_tol) ++required;
        std::ostringstream msg;
        msg << "coherent state with |alpha|^2 = " << mean << " needs truncation >= " << required
            << " (tail mass " << tail << " at N = " << truncation << ")";
        throw TruncationError(msg.str(), required);
    }

    FockVector v;
    v.truncation = truncation;
    v.amplitudes = Eigen::VectorXcd::Zero(truncation + 1);
    if (mean == 0) {
        v.amplitudes(0) = 1;
        return v;
    }
    const double phase = std::arg(alpha);
    for (int n = 0; n <= truncation; ++n) {
        const double magnitude = std::sqrt(poisson_weight(mean, n));
        v.amplitudes(n) = std::polar(magnitude, n * phase);
    }
    const double norm = v.amplitudes.norm();
    v.norm_deficit = 1 - norm * norm;
    v.amplitudes /= norm;
    return v;
}

DensityCheck check_density(const DensityOperator& rho, bool with_spectrum) {
    DensityCheck c;
    c.hermiticity_error = (rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff();
    c.trace_error = std::abs(rho.matrix.trace() - Complex(1));
    if (with_spectrum) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.matrix, Eigen::EigenvaluesOnly);
        c.min_eigenvalue = solver.eigenvalues().minCoeff();
    }
    return c;
}

namespace {

struct InitialVectors {
    Eigen::VectorXcd plus;   // coherent(+alpha)
    Eigen::VectorXcd minus;  // coherent(-alpha)
    double inv_norm_sq;      // 1 / (2 (1 + e^{-4 nbar}))
};

InitialVectors initial_vectors(const ModelParams<double>& params, int truncation) {
    const double alpha = std::sqrt(params.nbar());
    InitialVectors iv;
    iv.plus = coherent_fock(alpha, truncation).amplitudes;
    iv.minus = coherent_fock(-alpha, truncation).amplitudes;
    iv.inv_norm_sq = 1.0 / (2.0 * (1.0 + std::exp(-4.0 * params.nbar())));
    return iv;
}

}  // namespace

DensityOperator initial_density(const ModelParams<double>& params, int truncation) {
    const auto iv = initial_vectors(params, truncation);
    const double scale = std::sqrt(iv.inv_norm_sq);
    const Eigen::VectorXcd psi = scale * (kron(iv.plus, iv.plus) + kron(iv.minus, iv.minus));
    const Eigen::VectorXcd phi = scale * (kron(iv.plus, iv.minus) + kron(iv.minus, iv.plus));

    DensityOperator rho;
    rho.truncation = truncation;
    rho.matrix.noalias() = params.p() * psi * psi.adjoint();
    rho.matrix.noalias() += (1 - params.p()) * phi * phi.adjoint();
    return rho;
}

ChannelSpec::ChannelSpec(double eta, int truncation) : eta_(eta), truncation_(truncation) {
    if (!(eta >= 0 && eta <= 1)) throw ParameterError("transmissivity must lie in [0, 1]");
    if (truncation < 0) throw ParameterError("truncation must be >= 0");
    const int d = truncation + 1;
    weights_ = Eigen::MatrixXd::Zero(d, d);
    const double log_loss = eta < 1 ? std::log1p(-eta) : -std::numeric_limits<double>::infinity();
    const double log_keep = eta > 0 ? std::log(eta) : -std::numeric_limits<double>::infinity();
    for (int n = 0; n < d; ++n) {
        for (int k = 0; k <= n; ++k) {
            // C(n,k) (1-eta)^k eta^(n-k), with 0^0 = 1 at the endpoints.
            double log_w = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
            if (k > 0) log_w += k * log_loss;
            if (n - k > 0) log_w += (n - k) * log_keep;
            weights_(k, n) = std::sqrt(std::exp(log_w));
        }
    }
    // K_k^dag K_k is diagonal with entries w(k, n)^2.
    for (int n = 0; n < d; ++n) {
        completeness_error_ =
            std::max(completeness_error_, std::abs(weights_.col(n).squaredNorm() - 1));
    }
    if (completeness_error_ > 1e-10) {
        std::ostringstream msg;
        msg << "Kraus completeness violated by " << completeness_error_;
        throw std::runtime_error(msg.str());
    }
}

double ChannelSpec::kraus_entry(int k, int n) const {
    if (k < 0 || n < k || n > truncation_) return 0;
    return weights_(k, n);
}

double transmissivity(double gt) {
    if (!std::isfinite(gt) || gt < 0) throw DomainError("gamma*t must be finite and >= 0");
    return std::exp(-gt);
}

std::vector<Eigen::MatrixXd> amplitude_damping_kraus(const ChannelSpec& spec) {
    const int d = spec.truncation() + 1;
    std::vector<Eigen::MatrixXd> ops;
    ops.reserve(d);
    for (int k = 0; k < d; ++k) {
        Eigen::MatrixXd op = Eigen::MatrixXd::Zero(d, d);
        for (int n = k; n < d; ++n) op(n - k, n) = spec.kraus_entry(k, n);
        ops.push_back(std::move(op));
    }
    return ops;
}

Eigen::MatrixXcd apply_channel_single_mode(const Eigen::MatrixXcd& op, const ChannelSpec& spec) {
    if (op.rows() != spec.truncation() + 1 || op.cols() != op.rows()) {
        throw DimensionError("operator does not match the channel truncation");
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(op.rows(), op.cols());
    accumulate_single_mode(op, out, shifted_weights(spec));
    return out;
}

DensityOperator apply_channel_both_modes(const DensityOperator& rho, const ChannelSpec& spec) {
    if (rho.truncation != spec.truncation()) {
        throw DimensionError("density operator and channel have different truncations");
    }
    const Eigen::Index d = rho.mode_dim();
    if (rho.matrix.rows() != d * d || rho.matrix.cols() != d * d) {
        throw DimensionError("density matrix is not (N+1)^2 square");
    }
    const auto weights = shifted_weights(spec);

    // Mode b: every (m, m') block is a single-mode operator on b.
    Eigen::MatrixXcd after_b = Eigen::MatrixXcd::Zero(d * d, d * d);
    for (Eigen::Index mc = 0; mc < d; ++mc) {
        for (Eigen::Index mr = 0; mr < d; ++mr) {
            accumulate_single_mode(rho.matrix.block(mr * d, mc * d, d, d),
                                   after_b.block(mr * d, mc * d, d, d), weights);
        }
    }

    // Mode a: block (m, m') feeds block (m-k, m'-k) with weight w_k(m) w_k(m').
    DensityOperator out;
    out.truncation = rho.truncation;
    out.matrix = Eigen::MatrixXcd::Zero(d * d, d * d);
    for (Eigen::Index k = 0; k < d; ++k) {
        const auto& w = weights[k];
        for (Eigen::Index jc = 0; jc < d - k; ++jc) {
            if (w(jc) == 0) continue;
            for (Eigen::Index jr = 0; jr < d - k; ++jr) {
                const double c = w(jr) * w(jc);
                if (c == 0) continue;
                out.matrix.block(jr * d, jc * d, d, d) +=
                    c * after_b.block((jr + k) * d, (jc + k) * d, d, d);
            }
        }
    }
    return out;
}

CatPair cat_pair(double alpha_t, int truncation) {
    if (!(alpha_t * alpha_t >= 1e-8)) {
        throw DomainError("cat basis degenerate: alpha_t^2 < 1e-8 leaves the odd cat undefined");
    }
    const auto plus = coherent_fock(alpha_t, truncation).amplitudes;
    const auto minus = coherent_fock(-alpha_t, truncation).amplitudes;
    CatPair pair;
    pair.even = (plus + minus).normalized();
    pair.odd = plus - minus;
    pair.odd -= pair.even.dot(pair.odd) * pair.even;
    pair.odd.normalize();
    return pair;
}

namespace {

CatProjection finish_projection(const Eigen::Matrix4cd& m, double leakage_bound) {
    CatProjection p;
    p.full = m;
    p.x.r11 = m(0, 0).real();
    p.x.r22 = m(1, 1).real();
    p.x.r33 = m(2, 2).real();
    p.x.r44 = m(3, 3).real();
    p.x.r14 = m(0, 3).real();
    p.x.r23 = m(1, 2).real();
    p.leakage = 1 - m.trace().real();

    const bool on_x[4][4] = {{true, false, false, true},
                             {false, true, true, false},
                             {false, true, true, false},
                             {true, false, false, true}};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (on_x[i][j]) {
                p.max_imaginary = std::max(p.max_imaginary, std::abs(m(i, j).imag()));
            } else {
                p.max_non_x = std::max(p.max_non_x, std::abs(m(i, j)));
            }
        }
    }
    p.max_asymmetry = std::max(std::abs(m(3, 0) - m(0, 3)), std::abs(m(2, 1) - m(1, 2)));

    if (std::abs(p.leakage) > leakage_bound) {
        std::ostringstream msg;
        msg << "state leaks out of the cat manifold: leakage " << p.leakage << " > "
            << leakage_bound;
        throw SupportError(msg.str());
    }
    return p;
}

std::array<Eigen::VectorXcd, 2> cat_vectors(double alpha_t, int truncation) {
    auto pair = cat_pair(alpha_t, truncation);
    return {std::move(pair.even), std::move(pair.odd)};
}

}  // namespace

CatProjection project_to_cat_basis(const DensityOperator& rho, double alpha_t,
                                   double leakage_bound) {
    const auto cats = cat_vectors(alpha_t, rho.truncation);
    const Eigen::Index dim = rho.dim();
    Eigen::MatrixXcd basis(dim, 4);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) basis.col(2 * i + j) = kron(cats[i], cats[j]);
    }
    const Eigen::MatrixXcd rho_v = rho.matrix * basis;
    const Eigen::Matrix4cd m = basis.adjoint() * rho_v;
    return finish_projection(m, leakage_bound);
}

Eigen::MatrixXcd partial_trace_b(const DensityOperator& rho) {
    const Eigen::Index d = rho.mode_dim();
    Eigen::MatrixXcd out(d, d);
    for (Eigen::Index mc = 0; mc < d; ++mc) {
        for (Eigen::Index mr = 0; mr < d; ++mr) {
            out(mr, mc) = rho.matrix.block(mr * d, mc * d, d, d).trace();
        }
    }
    return out;
}

Eigen::Matrix2cd project_single_mode(const Eigen::MatrixXcd& op, double alpha_t) {
    const auto cats = cat_vectors(alpha_t, static_cast<int>(op.rows()) - 1);
    Eigen::Matrix2cd out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) out(i, j) = cats[i].dot(op * cats[j]);
    }
    return out;
}

FactorizedDensity initial_density_factorized(const ModelParams<double>& params, int truncation) {
    const auto iv = initial_vectors(params, truncation);
    const Eigen::VectorXcd* coh[2] = {&iv.plus, &iv.minus};
    FactorizedDensity rho;
    rho.truncation = truncation;
    // |psi+><psi+| = sum_{s,s'} |s a><s' a| x |s a><s' a| / L^2, and |phi+><phi+|
    // the same with mode b flipped.
    for (int s = 0; s < 2; ++s) {
        for (int t = 0; t < 2; ++t) {
            const Eigen::MatrixXcd a = (*coh[s]) * coh[t]->adjoint();
            const Eigen::MatrixXcd b_flip = (*coh[1 - s]) * coh[1 - t]->adjoint();
            rho.terms.push_back({params.p() * iv.inv_norm_sq, a, a});
            rho.terms.push_back({(1 - params.p()) * iv.inv_norm_sq, a, b_flip});
        }
    }
    return rho;
}

FactorizedDensity apply_channel_both_modes(const FactorizedDensity& rho, const ChannelSpec& spec) {
    if (rho.truncation != spec.truncation()) {
        throw DimensionError("density operator and channel have different truncations");
    }
    FactorizedDensity out;
    out.truncation = rho.truncation;
    out.terms.reserve(rho.terms.size());
    for (const auto& term : rho.terms) {
        out.terms.push_back({term.weight, apply_channel_single_mode(term.a, spec),
                             apply_channel_single_mode(term.b, spec)});
    }
    return out;
}

DensityOperator to_dense(const FactorizedDensity& rho) {
    const Eigen::Index d = rho.truncation + 1;
    DensityOperator out;
    out.truncation = rho.truncation;
    out.matrix = Eigen::MatrixXcd::Zero(d * d, d * d);
    for (const auto& term : rho.terms) {
        for (Eigen::Index mc = 0; mc < d; ++mc) {
            for (Eigen::Index mr = 0; mr < d; ++mr) {
                const Complex c = term.weight * term.a(mr, mc);
                if (c == Complex(0)) continue;
                out.matrix.block(mr * d, mc * d, d, d) += c * term.b;
            }
        }
    }
    return out;
}

double trace(const FactorizedDensity& rho) {
    Complex t = 0;
    for (const auto& term : rho.terms) t += term.weight * term.a.trace() * term.b.trace();
    return t.real();
}

CatProjection project_to_cat_basis(const FactorizedDensity& rho, double alpha_t,
                                   double leakage_bound) {
    const auto cats = cat_vectors(alpha_t, rho.truncation);
    Eigen::MatrixXcd basis(rho.truncation + 1, 2);
    basis.col(0) = cats[0];
    basis.col(1) = cats[1];
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    for (const auto& term : rho.terms) {
        const Eigen::Matrix2cd a = basis.adjoint() * term.a * basis;
        const Eigen::Matrix2cd b = basis.adjoint() * term.b * basis;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l)
                        m(2 * i + j, 2 * k + l) += term.weight * a(i, k) * b(j, l);
    }
    return finish_projection(m, leakage_bound);
}

CatProjection evolve_and_project(const ModelParams<double>& params, double gt, int truncation) {
    const ChannelSpec spec(transmissivity(gt), truncation);
    const auto rho = apply_channel_both_modes(initial_density(params, truncation), spec);
    return project_to_cat_basis(rho, std::sqrt(params.nbar() * spec.eta()));
}

CatProjection evolve_and_project_factorized(const ModelParams<double>& params, double gt,
                                            int truncation) {
    const ChannelSpec spec(transmissivity(gt), truncation);
    const auto rho =
        apply_channel_both_modes(initial_density_factorized(params, truncation), spec);
    return project_to_cat_basis(rho, std::sqrt(params.nbar() * spec.eta()));
}

Eigen::Matrix4cd to_matrix(const XState<double>& x) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = x.r11;
    m(1, 1) = x.r22;
    m(2, 2) = x.r33;
    m(3, 3) = x.r44;
    m(0, 3) = m(3, 0) = x.r14;
    m(1, 2) = m(2, 1) = x.r23;
    return m;
}

Eigen::Vector4d dense_spectrum(const Eigen::Matrix4cd& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(rho, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

Eigen::Matrix2cd partial_trace_qubit_b(const Eigen::Matrix4cd& rho) {
    Eigen::Matrix2cd out;
    for (int a = 0; a < 2; ++a)
        for (int ap = 0; ap < 2; ++ap) out(a, ap) = rho(2 * a, 2 * ap) + rho(2 * a + 1, 2 * ap + 1);
    return out;
}

Eigen::Matrix2cd partial_trace_qubit_a(const Eigen::Matrix4cd& rho) {
    Eigen::Matrix2cd out;
    for (int b = 0; b < 2; ++b)
        for (int bp = 0; bp < 2; ++bp) out(b, bp) = rho(b, bp) + rho(2 + b, 2 + bp);
    return out;
}

double wootters_concurrence(const Eigen::Matrix4cd& rho) {
    if (dense_spectrum(rho).minCoeff() < -1e-9) {
        throw PositivityError("wootters_concurrence: matrix is not positive semidefinite");
    }
    Eigen::Matrix2cd sy;
    sy << 0, Complex(0, -1), Complex(0, 1), 0;
    Eigen::Matrix4cd flip;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) flip.block<2, 2>(2 * i, 2 * j) = sy(i, j) * sy;
    const Eigen::Matrix4cd tilde = flip * rho.conjugate() * flip;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(rho * tilde, false);
    std::array<double, 4> l{};
    for (int i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(solver.eigenvalues()(i).real(), 0.0));
    std::sort(l.begin(), l.end(), std::greater<>());
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double conditional_entropy_general(const Eigen::Matrix4cd& rho, double theta, double phi) {
    const double nx = std::sin(theta) * std::cos(phi);
    const double ny = std::sin(theta) * std::sin(phi);
    const double nz = std::cos(theta);
    Eigen::Matrix2cd proj;
    proj << (1 + nz) / 2, Complex(nx, -ny) / 2.0, Complex(nx, ny) / 2.0, (1 - nz) / 2;

    double total = 0;
    for (int outcome = 0; outcome < 2; ++outcome) {
        const Eigen::Matrix2cd pk =
            outcome == 0 ? proj : Eigen::Matrix2cd(Eigen::Matrix2cd::Identity() - proj);
        // Tr_b[(I x P) rho (I x P)] = Tr_b[(I x P) rho].
        Eigen::Matrix2cd cond = Eigen::Matrix2cd::Zero();
        for (int a = 0; a < 2; ++a)
            for (int ap = 0; ap < 2; ++ap)
                for (int b = 0; b < 2; ++b)
                    for (int bp = 0; bp < 2; ++bp)
                        cond(a, ap) += pk(b, bp) * rho(2 * a + bp, 2 * ap + b);
        const double weight = cond.trace().real();
        if (weight <= 0) continue;
        total += weight * qubit_entropy(cond / weight);
    }
    return total;
}

namespace {

template <typename F>
std::pair<double, double> golden_section(F&& f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace

BruteForceResult brute_force_classical(const Eigen::Matrix4cd& rho, int coarse, int refine_iters) {
    if (coarse < 2) throw ParameterError("brute_force_classical needs at least 2 grid points");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> reduced(partial_trace_qubit_b(rho),
                                                            Eigen::EigenvaluesOnly);
    const double s_a = entropy_bits(reduced.eigenvalues());

    struct Candidate {
        double entropy;
        double theta;
        double phi;
    };
    std::vector<Candidate> grid;
    grid.reserve(static_cast<std::size_t>(coarse) * coarse);
    const double d_theta = kPi / (coarse - 1);
    const double d_phi = kPi / coarse;
    for (int i = 0; i < coarse; ++i) {
        for (int j = 0; j < coarse; ++j) {
            const double theta = i * d_theta;
            const double phi = j * d_phi;
            grid.push_back({conditional_entropy_general(rho, theta, phi), theta, phi});
        }
    }
    constexpr std::size_t kSeeds = 4;
    const std::size_t seeds = std::min(kSeeds, grid.size());
    std::partial_sort(grid.begin(), grid.begin() + seeds, grid.end(),
                      [](const Candidate& a, const Candidate& b) { return a.entropy < b.entropy; });

    Candidate best = grid.front();
    for (std::size_t s = 0; s < seeds; ++s) {
        Candidate c = grid[s];
        for (int iter = 0; iter < refine_iters; ++iter) {
            const auto [theta, e_theta] = golden_section(
                [&](double t) { return conditional_entropy_general(rho, t, c.phi); },
                std::max(0.0, c.theta - d_theta), std::min(kPi, c.theta + d_theta), 1e-8);
            if (e_theta < c.entropy) c = {e_theta, theta, c.phi};
            const auto [phi, e_phi] = golden_section(
                [&](double f) { return conditional_entropy_general(rho, c.theta, f); },
                c.phi - d_phi, c.phi + d_phi, 1e-8);
            if (e_phi < c.entropy) c = {e_phi, c.theta, phi};
        }
        if (c.entropy < best.entropy) best = c;
    }
    return {s_a - best.entropy, best.entropy, best.theta, best.phi};
}

BruteForceResult brute_force_classical(const XState<double>& x, int coarse, int refine_iters) {
    return brute_force_classical(to_matrix(x), coarse, refine_iters);
}

}  // namespace catdiscord::oracle

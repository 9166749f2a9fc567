#pragma once

// Brute-force reference for the analytic model: the two-mode state is built in
// a truncated photon-number basis, pushed through the amplitude-damping channel
// with explicit Kraus operators, and projected back onto the cat basis.
// Shares no formulas with model.hpp / correlations.hpp.

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "catdiscord/model.hpp"

namespace catdiscord::oracle {

using Complex = std::complex<double>;

/// Default photon-number cutoff ceil(nbar + 10 sqrt(nbar) + 20).
int default_truncation(double nbar);

struct FockVector {
    Eigen::VectorXcd amplitudes;  // length truncation + 1
    int truncation{0};
    /// 1 - |psi|^2 before renormalization (Poisson tail beyond the cutoff).
    double norm_deficit{0};
};

/// Coherent state e^{-|a|^2/2} sum a^n/sqrt(n!) |n>, renormalized.
/// Throws TruncationError if the discarded tail mass is >= tail_tol.
FockVector coherent_fock(Complex alpha, int truncation, double tail_tol = 1e-12);

/// Two-mode density operator, index (m, n) -> m * (N + 1) + n with mode a
/// as the slow index.
struct DensityOperator {
    int truncation{0};
    Eigen::MatrixXcd matrix;

    int mode_dim() const { return truncation + 1; }
    Eigen::Index dim() const { return matrix.rows(); }
};

struct DensityCheck {
    double hermiticity_error{0};
    double trace_error{0};
    std::optional<double> min_eigenvalue;  // only when requested
};

DensityCheck check_density(const DensityOperator& rho, bool with_spectrum = false);

/// p |psi+><psi+| + (1-p) |phi+><phi+| with |psi+> ~ |a,a> + |-a,-a>,
/// |phi+> ~ |a,-a> + |-a,a>, a = sqrt(nbar), normalized by 2(1 + e^{-4 nbar}).
DensityOperator initial_density(const ModelParams<double>& params, int truncation);

class ChannelSpec {
public:
    /// Throws ParameterError for eta outside [0, 1] or a negative cutoff, and
    /// std::runtime_error if the Kraus set fails completeness by more than 1e-10.
    ChannelSpec(double eta, int truncation);

    double eta() const { return eta_; }
    int truncation() const { return truncation_; }
    /// max |sum_k K_k^dag K_k - I| measured at construction.
    double completeness_error() const { return completeness_error_; }

    /// <n-k| K_k |n>, the only nonzero entries of K_k.
    double kraus_entry(int k, int n) const;

private:
    double eta_;
    int truncation_;
    Eigen::MatrixXd weights_;  // (k, n) -> <n-k|K_k|n>
    double completeness_error_{0};
};

/// Transmissivity e^{-gt}.
double transmissivity(double gt);

/// Dense Kraus operators K_0 ... K_N on one truncated mode.
std::vector<Eigen::MatrixXd> amplitude_damping_kraus(const ChannelSpec& spec);

/// sum_k K_k X K_k^dag for a single-mode operator X.
Eigen::MatrixXcd apply_channel_single_mode(const Eigen::MatrixXcd& op, const ChannelSpec& spec);

/// sum_{k,l} (K_k x K_l) rho (K_k x K_l)^dag, applied mode by mode.
DensityOperator apply_channel_both_modes(const DensityOperator& rho, const ChannelSpec& spec);

/// Even/odd cat pair built from coherent_fock(+-alpha_t) by Gram-Schmidt.
struct CatPair {
    Eigen::VectorXcd even;
    Eigen::VectorXcd odd;
};

/// Throws DomainError when alpha_t^2 < 1e-8 (odd cat undefined).
CatPair cat_pair(double alpha_t, int truncation);

struct CatProjection {
    XState<double> x;
    Eigen::Matrix4cd full;      // all 16 elements <ij|rho|kl>
    double leakage{0};          // 1 - projected trace
    double max_non_x{0};        // largest |element| off the X pattern
    double max_imaginary{0};    // largest |Im| of an X element
    double max_asymmetry{0};    // |r41 - r14|, |r32 - r23|
};

/// Throws SupportError when leakage exceeds leakage_bound.
CatProjection project_to_cat_basis(const DensityOperator& rho, double alpha_t,
                                   double leakage_bound = 1e-6);

/// Single-mode reduced state Tr_b rho.
Eigen::MatrixXcd partial_trace_b(const DensityOperator& rho);

/// 2x2 matrix <eta_i|op|eta_j> of a single-mode operator.
Eigen::Matrix2cd project_single_mode(const Eigen::MatrixXcd& op, double alpha_t);

// Factorized representation: a weighted sum of tensor products of single-mode
// operators. The initial state is a sum of eight such terms and the channel
// acts factor by factor, so large cutoffs stay cheap.
struct ProductTerm {
    Complex weight;
    Eigen::MatrixXcd a;
    Eigen::MatrixXcd b;
};

struct FactorizedDensity {
    int truncation{0};
    std::vector<ProductTerm> terms;
};

FactorizedDensity initial_density_factorized(const ModelParams<double>& params, int truncation);
FactorizedDensity apply_channel_both_modes(const FactorizedDensity& rho, const ChannelSpec& spec);
DensityOperator to_dense(const FactorizedDensity& rho);
double trace(const FactorizedDensity& rho);
CatProjection project_to_cat_basis(const FactorizedDensity& rho, double alpha_t,
                                   double leakage_bound = 1e-6);

/// Evolves the model state to gt in Fock space and projects it.
CatProjection evolve_and_project(const ModelParams<double>& params, double gt, int truncation);
CatProjection evolve_and_project_factorized(const ModelParams<double>& params, double gt,
                                            int truncation);

// Two-qubit checks on a general 4x4 matrix.

Eigen::Matrix4cd to_matrix(const XState<double>& x);

/// Ascending eigenvalues from a general Hermitian eigensolver.
Eigen::Vector4d dense_spectrum(const Eigen::Matrix4cd& rho);

/// Reduced state of qubit a (first tensor factor).
Eigen::Matrix2cd partial_trace_qubit_b(const Eigen::Matrix4cd& rho);
/// Reduced state of qubit b.
Eigen::Matrix2cd partial_trace_qubit_a(const Eigen::Matrix4cd& rho);

/// Spin-flip construction max(0, l1 - l2 - l3 - l4) with l_i the square roots
/// of the eigenvalues of rho (sy x sy) rho* (sy x sy). Throws PositivityError
/// when rho has an eigenvalue below -1e-9.
double wootters_concurrence(const Eigen::Matrix4cd& rho);

struct BruteForceResult {
    double value{0};          // S(rho_a) minus the minimal conditional entropy
    double min_entropy{0};    // minimal conditional entropy
    double theta{0};
    double phi{0};
};

/// Conditional entropy of qubit a after measuring qubit b along (theta, phi),
/// computed from the full 4x4 matrix.
double conditional_entropy_general(const Eigen::Matrix4cd& rho, double theta, double phi);

/// Grid search over (theta, phi) in [0, pi] x [0, pi) (the projector pair is
/// invariant under (theta, phi) -> (pi - theta, phi + pi)) followed by
/// alternating golden-section refinement of the best cells.
BruteForceResult brute_force_classical(const XState<double>& x, int coarse = 181,
                                       int refine_iters = 4);
BruteForceResult brute_force_classical(const Eigen::Matrix4cd& rho, int coarse = 181,
                                       int refine_iters = 4);

}  // namespace catdiscord::oracle

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "mph/errors.hpp"

namespace mph {

/// Tunables for the dense matrix-function kernels. The defaults are used
/// everywhere unless a caller passes its own record.
struct KernelOptions {
    /// Spectral methods reject the input when the estimated condition number
    /// of the eigenvector matrix exceeds this limit.
    double eigenvector_condition_limit = 1e8;

    /// The scalar Mittag-Leffler series is summed for |z| <= pow(series_radius_base, alpha);
    /// beyond that radius the asymptotic representation takes over. The
    /// alpha-dependent switch balances series cancellation against the
    /// truncation error of the asymptotic expansion.
    double series_radius_base = 22.0;
};

/// A matrix stored as value * exp(log_scale). Keeping the exponent separate
/// lets e^{Tx} be represented for x far beyond the underflow range of double.
struct ScaledMatrix {
    Eigen::MatrixXd value;
    double log_scale = 0.0;

    Eigen::MatrixXd unscaled() const { return value * std::exp(log_scale); }
};

/// e^{Ty} together with the coupled integral block
/// integral = int_0^y e^{T(y-u)} c e^{Tu} du, both scaled by exp(log_scale).
struct VanLoanResult {
    Eigen::MatrixXd exp_block;
    Eigen::MatrixXd integral_block;
};

struct ScaledVanLoanResult {
    Eigen::MatrixXd exp_block;
    Eigen::MatrixXd integral_block;
    double log_scale = 0.0;
};

/// Matrix exponential by scaling-and-squaring with Pade approximants up to
/// degree 13; the squaring count is chosen from the 1-norm.
/// Throws std::invalid_argument on non-finite input.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a);

/// Same algorithm, but the result is renormalized after every squaring and
/// the accumulated factor is returned as a log scale. Use this wherever
/// e^{Tx} decays below double range (likelihoods of extreme observations).
ScaledMatrix matrix_exponential_scaled(const Eigen::MatrixXd& a);

Eigen::MatrixXd kron_product(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Kronecker sum a (+) b = a x I + I x b; the generator of two independent
/// chains run jointly.
Eigen::MatrixXd kron_sum(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Evaluates exp([[T, t*pi],[0, T]] y) once and returns the diagonal block
/// e^{Ty} and the upper-right block int_0^y e^{T(y-u)} t pi e^{Tu} du.
VanLoanResult vanloan_integral(const Eigen::MatrixXd& T, const Eigen::VectorXd& t,
                               const Eigen::RowVectorXd& pi_row, double y);

/// Scaled variant of vanloan_integral; both blocks share one log factor.
ScaledVanLoanResult vanloan_integral_scaled(const Eigen::MatrixXd& T, const Eigen::VectorXd& t,
                                            const Eigen::RowVectorXd& pi_row, double y);

/// Returns m^{-theta}. Integer theta uses repeated linear solves (exact up to
/// LU roundoff); fractional theta goes through the complex eigendecomposition
/// and throws UnsupportedCaseError when the eigenvector matrix is too
/// ill-conditioned to trust.
Eigen::MatrixXd real_matrix_power(const Eigen::MatrixXd& m, double theta,
                                  const KernelOptions& opt = {});

/// Scalar Mittag-Leffler function E_{alpha,beta}(z) for alpha in (0,1].
std::complex<double> mittag_leffler(std::complex<double> z, double alpha, double beta,
                                    const KernelOptions& opt = {});

/// Matrix Mittag-Leffler E_{alpha,beta}(A) by applying the scalar function to
/// the spectrum and conjugating back. Same conditioning guard as
/// real_matrix_power. For alpha = beta = 1 this agrees with
/// matrix_exponential within 1e-10.
Eigen::MatrixXd mittag_leffler_matrix(const Eigen::MatrixXd& a, double alpha, double beta,
                                      const KernelOptions& opt = {});

} // namespace mph

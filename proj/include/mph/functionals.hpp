#pragma once

#include <utility>
#include <vector>

#include "mph/matrix_kernels.hpp"
#include "mph/model.hpp"

namespace mph {

struct EvalOptions {
    /// survival_kron materializes a p^d-state generator; refuse beyond this.
    Eigen::Index kron_state_cap = 4096;
    /// Quantile inversion stops when |F(x) - u| drops below this (probability
    /// scale, so copula accuracy is uniform across the square).
    double quantile_prob_tol = 1e-10;
    KernelOptions kernel;
};

/// Joint density at x > 0 (componentwise).
double density(const MphModel& model, const Eigen::VectorXd& x);

/// log f(x); -inf when the density is exactly zero. Evaluated with exponent
/// tracking, so it stays finite far beyond the underflow range of density().
double log_density(const MphModel& model, const Eigen::VectorXd& x);

/// Joint distribution function at x >= 0.
double cdf(const MphModel& model, const Eigen::VectorXd& x);

/// Joint survival P(X > x) in product form.
double survival(const MphModel& model, const Eigen::VectorXd& x);

/// Same quantity through the Kronecker-sum representation of the joint
/// process; exists for cross-validation of the product form.
double survival_kron(const MphModel& model, const Eigen::VectorXd& x, const EvalOptions& opt = {});

/// Joint Laplace transform E[exp(-<u, X>)] at u >= 0.
double laplace(const MphModel& model, const Eigen::VectorXd& u);

struct MomentResult {
    double value = 0.0;
    /// True when a defective component forced the quadrature fallback for
    /// some fractional exponent.
    bool used_quadrature = false;
};

/// Joint moment E[prod_i X_i^{theta_i}] for theta_i > -1. Integer exponents
/// go through exact repeated linear solves.
MomentResult moment(const MphModel& model, const Eigen::VectorXd& theta,
                    const KernelOptions& opt = {});

/// Pairwise dependence coefficients between margins k and l (0-based, k != l).
double pearson(const MphModel& model, int k, int l);
double kendall(const MphModel& model, int k, int l);
double spearman(const MphModel& model, int k, int l);

/// One margin of the model, which is univariate phase-type (pi, T_i).
struct UnivariatePh {
    Eigen::VectorXd pi;
    Eigen::MatrixXd T;
};
UnivariatePh marginal(const MphModel& model, int i);

double marginal_density(const MphModel& model, int i, double x);
double marginal_cdf(const MphModel& model, int i, double x);
double marginal_survival(const MphModel& model, int i, double x);

/// Inverts the marginal CDF by bracketed bisection (upper bracket doubled
/// until it covers u, then bisection to opt.quantile_prob_tol).
double marginal_quantile(const MphModel& model, int i, double u, const EvalOptions& opt = {});

/// Copula density of margins (k, l) at each grid point (u, v) in (0,1)^2.
std::vector<double> copula_density_grid(const MphModel& model, int k, int l,
                                        const std::vector<std::pair<double, double>>& grid,
                                        const EvalOptions& opt = {});

} // namespace mph

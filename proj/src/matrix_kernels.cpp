#include "mph/matrix_kernels.hpp"

#include <cmath>
#include <complex>
#include <limits>

namespace mph {

namespace {

bool all_finite(const Eigen::MatrixXd& a) { return a.allFinite(); }

double one_norm(const Eigen::MatrixXd& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().colwise().sum().maxCoeff();
}

double one_norm(const Eigen::MatrixXcd& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().colwise().sum().maxCoeff();
}

// Pade numerator/denominator pairs for exp(A), degrees 3..13.
void pade3(const Eigen::MatrixXd& a, Eigen::MatrixXd& u, Eigen::MatrixXd& v) {
    static const double b[] = {120., 60., 12., 1.};
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(a.rows(), a.cols());
    const Eigen::MatrixXd a2 = a * a;
    u = a * (b[3] * a2 + b[1] * id);
    v = b[2] * a2 + b[0] * id;
}

void pade5(const Eigen::MatrixXd& a, Eigen::MatrixXd& u, Eigen::MatrixXd& v) {
    static const double b[] = {30240., 15120., 3360., 420., 30., 1.};
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(a.rows(), a.cols());
    const Eigen::MatrixXd a2 = a * a;
    const Eigen::MatrixXd a4 = a2 * a2;
    u = a * (b[5] * a4 + b[3] * a2 + b[1] * id);
    v = b[4] * a4 + b[2] * a2 + b[0] * id;
}

void pade7(const Eigen::MatrixXd& a, Eigen::MatrixXd& u, Eigen::MatrixXd& v) {
    static const double b[] = {17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.};
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(a.rows(), a.cols());
    const Eigen::MatrixXd a2 = a * a;
    const Eigen::MatrixXd a4 = a2 * a2;
    const Eigen::MatrixXd a6 = a4 * a2;
    u = a * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

void pade9(const Eigen::MatrixXd& a, Eigen::MatrixXd& u, Eigen::MatrixXd& v) {
    static const double b[] = {17643225600., 8821612800., 2075673600., 302702400., 30270240.,
                               2162160.,     110880.,     3960.,       90.,        1.};
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(a.rows(), a.cols());
    const Eigen::MatrixXd a2 = a * a;
    const Eigen::MatrixXd a4 = a2 * a2;
    const Eigen::MatrixXd a6 = a4 * a2;
    const Eigen::MatrixXd a8 = a6 * a2;
    u = a * (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

void pade13(const Eigen::MatrixXd& a, Eigen::MatrixXd& u, Eigen::MatrixXd& v) {
    static const double b[] = {64764752532480000., 32382376266240000., 7771770303897600.,
                               1187353796428800.,  129060195264000.,   10559470521600.,
                               670442572800.,      33522128640.,       1323241920.,
                               40840800.,          960960.,            16380.,
                               182.,               1.};
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(a.rows(), a.cols());
    const Eigen::MatrixXd a2 = a * a;
    const Eigen::MatrixXd a4 = a2 * a2;
    const Eigen::MatrixXd a6 = a4 * a2;
    u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 +
             b[1] * id);
    v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

// 1-norm thresholds below which the degree-m approximant meets double accuracy.
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068;
constexpr double kTheta13 = 5.371920351148152;

// 1/Gamma(x) in extended precision; zero at the poles of Gamma.
long double rgamma(long double x) {
    if (x > 0.5L) return expl(-lgammal(x));
    const long double pil = 3.14159265358979323846264338327950288L;
    long double s = sinl(pil * x);
    if (s == 0.0L) return 0.0L;
    long double lg = lgammal(1.0L - x);
    if (lg > 11300.0L) return (s > 0 ? 1.0L : -1.0L) * std::numeric_limits<long double>::infinity();
    return s * expl(lg) / pil;
}

std::complex<long double> to_ld(std::complex<double> z) {
    return {static_cast<long double>(z.real()), static_cast<long double>(z.imag())};
}

} // namespace

ScaledMatrix matrix_exponential_scaled(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("matrix_exponential: matrix must be square");
    if (!all_finite(a)) throw std::invalid_argument("matrix_exponential: input has non-finite entries");

    const Eigen::Index n = a.rows();
    // Shifting out the mean eigenvalue keeps the Pade argument small for
    // strongly decaying generators; the shift returns through log_scale.
    const double mu = a.trace() / static_cast<double>(n);
    Eigen::MatrixXd b = a - mu * Eigen::MatrixXd::Identity(n, n);

    const double norm = one_norm(b);
    int squarings = 0;
    Eigen::MatrixXd u, v;
    if (norm <= kTheta3) {
        pade3(b, u, v);
    } else if (norm <= kTheta5) {
        pade5(b, u, v);
    } else if (norm <= kTheta7) {
        pade7(b, u, v);
    } else if (norm <= kTheta9) {
        pade9(b, u, v);
    } else {
        squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta13))));
        b /= std::exp2(squarings);
        pade13(b, u, v);
    }

    Eigen::MatrixXd x = (v - u).partialPivLu().solve(v + u);

    double log_scale = mu;
    for (int s = 0; s < squarings; ++s) {
        x = x * x;
        const double f = x.cwiseAbs().maxCoeff();
        if (f == 0.0 || !std::isfinite(f))
            throw NumericError("matrix_exponential: squaring phase produced a degenerate matrix");
        x /= f;
        log_scale += std::log(f);
    }
    return {std::move(x), log_scale};
}

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a) {
    ScaledMatrix s = matrix_exponential_scaled(a);
    return s.value * std::exp(s.log_scale);
}

Eigen::MatrixXd kron_product(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Eigen::MatrixXd kron_sum(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols())
        throw std::invalid_argument("kron_sum: both operands must be square");
    return kron_product(a, Eigen::MatrixXd::Identity(b.rows(), b.cols())) +
           kron_product(Eigen::MatrixXd::Identity(a.rows(), a.cols()), b);
}

ScaledVanLoanResult vanloan_integral_scaled(const Eigen::MatrixXd& T, const Eigen::VectorXd& t,
                                            const Eigen::RowVectorXd& pi_row, double y) {
    const Eigen::Index p = T.rows();
    if (T.cols() != p || t.size() != p || pi_row.size() != p)
        throw std::invalid_argument("vanloan_integral: dimension mismatch");
    if (!(y >= 0.0)) throw std::invalid_argument("vanloan_integral: y must be nonnegative");

    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(2 * p, 2 * p);
    block.topLeftCorner(p, p) = T;
    block.topRightCorner(p, p) = t * pi_row;
    block.bottomRightCorner(p, p) = T;
    ScaledMatrix e = matrix_exponential_scaled(block * y);
    return {e.value.topLeftCorner(p, p), e.value.topRightCorner(p, p), e.log_scale};
}

VanLoanResult vanloan_integral(const Eigen::MatrixXd& T, const Eigen::VectorXd& t,
                               const Eigen::RowVectorXd& pi_row, double y) {
    ScaledVanLoanResult s = vanloan_integral_scaled(T, t, pi_row, y);
    const double f = std::exp(s.log_scale);
    return {s.exp_block * f, s.integral_block * f};
}

namespace {

// Complex eigendecomposition with the shared conditioning guard. Returns
// eigenvalues, eigenvectors and the inverse eigenvector matrix.
void guarded_eigen(const Eigen::MatrixXd& m, double cond_limit, const char* caller,
                   Eigen::VectorXcd& lambda, Eigen::MatrixXcd& vec, Eigen::MatrixXcd& vec_inv) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success)
        throw NumericError(std::string(caller) + ": eigendecomposition failed to converge");
    lambda = es.eigenvalues();
    vec = es.eigenvectors();
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(vec);
    if (!lu.isInvertible())
        throw UnsupportedCaseError(std::string(caller) + ": defective matrix (singular eigenvector basis)");
    vec_inv = lu.inverse();
    const double cond = one_norm(vec) * one_norm(vec_inv);
    if (cond > cond_limit)
        throw UnsupportedCaseError(std::string(caller) + ": eigenvector condition estimate " +
                                   std::to_string(cond) + " exceeds limit");
}

} // namespace

Eigen::MatrixXd real_matrix_power(const Eigen::MatrixXd& m, double theta, const KernelOptions& opt) {
    if (m.rows() != m.cols()) throw std::invalid_argument("real_matrix_power: matrix must be square");
    if (!all_finite(m)) throw std::invalid_argument("real_matrix_power: input has non-finite entries");
    if (!(theta > -1.0)) throw std::domain_error("real_matrix_power: theta must exceed -1");

    const Eigen::Index n = m.rows();
    const double rounded = std::round(theta);
    if (rounded >= 0.0 && std::abs(theta - rounded) < 1e-12) {
        int k = static_cast<int>(rounded);
        Eigen::MatrixXd x = Eigen::MatrixXd::Identity(n, n);
        if (k == 0) return x;
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
        for (int i = 0; i < k; ++i) x = lu.solve(x);
        return x;
    }

    Eigen::VectorXcd lambda;
    Eigen::MatrixXcd vec, vec_inv;
    guarded_eigen(m, opt.eigenvector_condition_limit, "real_matrix_power", lambda, vec, vec_inv);
    Eigen::VectorXcd powered(n);
    for (Eigen::Index i = 0; i < n; ++i)
        powered[i] = std::exp(-theta * std::log(lambda[i]));
    Eigen::MatrixXcd r = vec * powered.asDiagonal() * vec_inv;
    return r.real();
}

std::complex<double> mittag_leffler(std::complex<double> z, double alpha, double beta,
                                    const KernelOptions& opt) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::invalid_argument("mittag_leffler: alpha must lie in (0, 1]");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || !std::isfinite(beta))
        throw std::invalid_argument("mittag_leffler: non-finite argument");
    if (alpha == 1.0 && beta == 1.0) return std::exp(z);

    using C = std::complex<long double>;
    const C zl = to_ld(z);
    const long double az = std::abs(zl);
    if (az == 0.0L) return static_cast<double>(rgamma(static_cast<long double>(beta)));

    const double radius = std::pow(opt.series_radius_base, alpha);
    if (static_cast<double>(az) <= radius) {
        // Power series in extended precision; the alpha-dependent radius keeps
        // the cancellation blow-up (~exp(|z|^{1/alpha})) below long-double eps.
        C sum = rgamma(static_cast<long double>(beta));
        C zpow = 1.0L;
        int small_streak = 0;
        for (int k = 1; k <= 800; ++k) {
            zpow *= zl;
            const C contrib = zpow * rgamma(static_cast<long double>(alpha) * k +
                                            static_cast<long double>(beta));
            sum += contrib;
            if (std::abs(contrib) <= 1e-24L * (std::abs(sum) + 1e-300L)) {
                if (++small_streak >= 3) break;
            } else {
                small_streak = 0;
            }
        }
        return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
    }

    // Asymptotic representation: algebraic tail, truncated at the smallest
    // term, plus the exponential contribution on |arg z| <= alpha*pi.
    const C zinv = 1.0L / zl;
    C sum = 0.0L;
    C zp = 1.0L;
    long double prev = std::numeric_limits<long double>::max();
    for (int k = 1; k <= 400; ++k) {
        zp *= zinv;
        const C u = zp * rgamma(static_cast<long double>(beta) - static_cast<long double>(alpha) * k);
        const long double au = std::abs(u);
        if (!(au < prev) && k > 2) break;
        sum -= u;
        prev = au;
        if (au <= 1e-24L * (std::abs(sum) + 1e-300L)) break;
    }
    const long double aarg = std::abs(std::arg(zl));
    const long double alphal = static_cast<long double>(alpha);
    if (aarg <= alphal * 3.14159265358979323846264338327950288L + 1e-15L) {
        const C logz = std::log(zl);
        const C root = std::exp(logz / alphal);
        sum += std::exp((1.0L - static_cast<long double>(beta)) / alphal * logz) * std::exp(root) /
               alphal;
    }
    return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

Eigen::MatrixXd mittag_leffler_matrix(const Eigen::MatrixXd& a, double alpha, double beta,
                                      const KernelOptions& opt) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("mittag_leffler_matrix: matrix must be square");
    if (!all_finite(a))
        throw std::invalid_argument("mittag_leffler_matrix: input has non-finite entries");
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::invalid_argument("mittag_leffler_matrix: alpha must lie in (0, 1]");

    Eigen::VectorXcd lambda;
    Eigen::MatrixXcd vec, vec_inv;
    guarded_eigen(a, opt.eigenvector_condition_limit, "mittag_leffler_matrix", lambda, vec, vec_inv);
    Eigen::VectorXcd f(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i)
        f[i] = mittag_leffler(lambda[i], alpha, beta, opt);
    Eigen::MatrixXcd r = vec * f.asDiagonal() * vec_inv;
    return r.real();
}

} // namespace mph

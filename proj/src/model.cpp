#include "mph/model.hpp"

#include <cmath>
#include <string>

namespace mph {

namespace {

std::string idx(Eigen::Index i) { return std::to_string(static_cast<long long>(i)); }

} // namespace

void validate(const MphModel& model) {
    const Eigen::Index p = model.pi.size();
    if (p < 1) throw ValidationError("pi: must have at least one state");
    if (model.components.empty()) throw ValidationError("components: d must be at least 1");

    for (Eigen::Index j = 0; j < p; ++j) {
        if (!std::isfinite(model.pi[j])) throw ValidationError("pi[" + idx(j) + "]: not finite");
        if (model.pi[j] < 0.0) throw ValidationError("pi[" + idx(j) + "]: negative entry");
    }
    if (std::abs(model.pi.sum() - 1.0) > 1e-12)
        throw ValidationError("pi not stochastic: entries must sum to 1 within 1e-12");

    for (std::size_t k = 0; k < model.components.size(); ++k) {
        const std::string name = "T[" + std::to_string(k) + "]";
        const Eigen::MatrixXd& T = model.components[k].T;
        if (T.rows() != T.cols()) throw ValidationError(name + ": must be square");
        if (T.rows() != p) throw ValidationError(name + ": order " + idx(T.rows()) +
                                                 " does not match pi length " + idx(p));
        for (Eigen::Index i = 0; i < p; ++i) {
            double row_sum = 0.0;
            for (Eigen::Index j = 0; j < p; ++j) {
                const double v = T(i, j);
                if (!std::isfinite(v))
                    throw ValidationError(name + "(" + idx(i) + "," + idx(j) + "): not finite");
                if (i == j) {
                    if (!(v < 0.0))
                        throw ValidationError(name + "(" + idx(i) + "," + idx(j) +
                                              "): diagonal must be negative");
                } else if (v < 0.0) {
                    throw ValidationError(name + "(" + idx(i) + "," + idx(j) +
                                          "): off-diagonal must be nonnegative");
                }
                row_sum += v;
            }
            if (row_sum > 1e-12)
                throw ValidationError(name + " row " + idx(i) +
                                      ": row sum must be nonpositive (exit rate would be negative)");
        }
        // All states must be transient: T invertible.
        Eigen::FullPivLU<Eigen::MatrixXd> lu(T);
        if (!lu.isInvertible())
            throw ValidationError(name + ": singular (some state is not transient)");
    }
}

MphStarRepresentation to_mphstar(const MphModel& model) {
    const Eigen::Index p = model.order();
    const Eigen::Index d = model.dim();
    const Eigen::Index block = p * d;  // one sequential run of all d chains
    const Eigen::Index total = p * block;

    MphStarRepresentation rep;
    rep.pi_tilde = Eigen::RowVectorXd::Zero(total);
    rep.T_tilde = Eigen::MatrixXd::Zero(total, total);
    rep.R_tilde = Eigen::MatrixXd::Zero(total, d);

    for (Eigen::Index k = 0; k < p; ++k) {
        const Eigen::Index base = k * block;
        // Start the run of chains in state k of margin 1.
        rep.pi_tilde[base + k] = model.pi[k];
        for (Eigen::Index i = 0; i < d; ++i) {
            const Eigen::Index off = base + i * p;
            rep.T_tilde.block(off, off, p, p) = model.components[i].T;
            if (i + 1 < d) {
                // On absorption of margin i, margin i+1 restarts at the
                // shared initial state k.
                const Eigen::VectorXd t = model.components[i].exit();
                for (Eigen::Index r = 0; r < p; ++r) rep.T_tilde(off + r, off + p + k) = t[r];
            }
            for (Eigen::Index r = 0; r < p; ++r) rep.R_tilde(off + r, i) = 1.0;
        }
    }
    return rep;
}

} // namespace mph

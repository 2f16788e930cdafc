#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mph/errors.hpp"

namespace mph {

/// Generator block of one margin's transient states. The exit vector
/// t = -T e (per-row absorption rate) is derived, never stored.
struct SubIntensityMatrix {
    Eigen::MatrixXd T;

    SubIntensityMatrix() = default;
    explicit SubIntensityMatrix(Eigen::MatrixXd m) : T(std::move(m)) {}

    Eigen::Index order() const { return T.rows(); }
    Eigen::VectorXd exit() const { return -T.rowwise().sum(); }
};

/// A multivariate phase-type law: one initial distribution over p states
/// shared by d margins, each margin evolving under its own sub-intensity
/// matrix until absorption. Immutable after validate(); all evaluators are
/// pure and safe for concurrent use.
struct MphModel {
    Eigen::VectorXd pi;
    std::vector<SubIntensityMatrix> components;

    Eigen::Index order() const { return pi.size(); }
    int dim() const { return static_cast<int>(components.size()); }
};

/// Reward-based representation of the same law on a p^2*d state space:
/// conditional on the shared initial state, every margin's chain is run in
/// sequence and its sojourn time is collected as a separate reward.
struct MphStarRepresentation {
    Eigen::RowVectorXd pi_tilde;  // length p^2 d
    Eigen::MatrixXd T_tilde;      // (p^2 d) x (p^2 d), block-bidiagonal
    Eigen::MatrixXd R_tilde;      // (p^2 d) x d, 0/1 rewards, rows sum to 1
};

/// Checks every structural invariant of the model and throws ValidationError
/// naming the first violation. Passing models are safe inputs for every
/// evaluator in this library.
void validate(const MphModel& model);

MphStarRepresentation to_mphstar(const MphModel& model);

} // namespace mph

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qst/state.hpp"

namespace qst {

/// Environment of a state, given as the declared transition amplitudes
/// <phi_i|psi> together with the declared pairwise overlaps <phi_i|phi_j>.
/// Dimensions are computed from the Gram matrix of declarations; the states
/// are never embedded into a concrete space.
struct EnvironmentSpec {
    std::vector<std::string> labels;
    Eigen::VectorXcd amplitudes;  // <phi_i|psi>
    Eigen::MatrixXcd gram;        // <phi_i|phi_j>, Hermitian, unit diagonal
    bool exhaustive = false;      // amplitudes enumerate every possible transition
    bool generic = true;          // false when some declared transition amplitude vanishes

    static EnvironmentSpec make(std::vector<std::string> labels, Eigen::VectorXcd amplitudes,
                                Eigen::MatrixXcd gram, bool exhaustive);
};

/// Dimension of span{phi_i}: the rank of the declared Gram matrix.
/// Throws ModelError when the Gram matrix is not positive semidefinite
/// within tolerance.
int span_dim(const EnvironmentSpec& env, double tol = kRankTol);

/// Environment of a photon passing a chain of polarizers at the given
/// oscillation angles: one label per possible absorption plus the final
/// pass-through, all declared mutually orthogonal. `initial_angle` is the
/// photon's starting polarization.
EnvironmentSpec polarizer_chain(const std::vector<double>& angles, double initial_angle = 0.0);

/// True iff span_dim(small) <= span_dim(large). Requires small.labels to be
/// a subset of large.labels with identical overlap declarations on the
/// common part; reports rather than asserts, since monotonicity is expected
/// but not guaranteed in general.
bool monotonicity_check(const EnvironmentSpec& small, const EnvironmentSpec& large);

}  // namespace qst

#pragma once

#include <Eigen/Dense>

#include "qst/state.hpp"

namespace qst {

/// Square complex matrix acting on a (possibly tensor-factored) space.
class Operator {
public:
    explicit Operator(Eigen::MatrixXcd m);

    Eigen::Index dim() const { return mat_.rows(); }
    const Eigen::MatrixXcd& matrix() const { return mat_; }

    static Operator identity(Eigen::Index d);
    static Operator projector(const StateVec& s);  // |s><s|

    friend Operator operator*(const Operator& a, const Operator& b);

private:
    Eigen::MatrixXcd mat_;
};

/// Matrix-vector product. No implicit renormalization: projections shrink
/// the norm and the result is flagged accordingly.
StateVec apply(const Operator& op, const StateVec& s);

/// Kronecker product, a's space as the leading factor.
Operator tensor(const Operator& a, const Operator& b);

// Standard small gates used by scenarios and tests.
Operator hadamard();   // |+><0| + |-><1|
Operator pauli_x();
Operator cnot();
Operator swap_gate();

}  // namespace qst

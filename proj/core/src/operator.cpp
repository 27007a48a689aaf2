#include "qst/operator.hpp"

#include <cmath>

namespace qst {

Operator::Operator(Eigen::MatrixXcd m) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols()) throw ShapeError("operator matrix must be square");
    if (mat_.rows() < 1) throw ShapeError("operator matrix must be nonempty");
    if (!mat_.allFinite()) throw ArgumentError("operator has non-finite entries");
}

Operator Operator::identity(Eigen::Index d) {
    return Operator(Eigen::MatrixXcd::Identity(d, d));
}

Operator Operator::projector(const StateVec& s) {
    return Operator(s.amps() * s.amps().adjoint());
}

Operator operator*(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim()) throw ShapeError("operator composition dimension mismatch");
    return Operator(a.mat_ * b.mat_);
}

StateVec apply(const Operator& op, const StateVec& s) {
    if (op.dim() != s.dim()) {
        throw ShapeError("operator of dimension " + std::to_string(op.dim()) +
                         " applied to state of dimension " + std::to_string(s.dim()));
    }
    return StateVec(s.n_qubits(), op.matrix() * s.amps(), StateVec::Unnormalized{});
}

Operator tensor(const Operator& a, const Operator& b) {
    Eigen::MatrixXcd m(a.dim() * b.dim(), a.dim() * b.dim());
    for (Eigen::Index i = 0; i < a.dim(); ++i) {
        for (Eigen::Index j = 0; j < a.dim(); ++j) {
            m.block(i * b.dim(), j * b.dim(), b.dim(), b.dim()) = a.matrix()(i, j) * b.matrix();
        }
    }
    return Operator(std::move(m));
}

Operator hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd m(2, 2);
    m << s, s, s, -s;
    return Operator(std::move(m));
}

Operator pauli_x() {
    Eigen::MatrixXcd m(2, 2);
    m << 0, 1, 1, 0;
    return Operator(std::move(m));
}

Operator cnot() {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 3) = 1;
    m(3, 2) = 1;
    return Operator(std::move(m));
}

Operator swap_gate() {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 2) = 1;
    m(2, 1) = 1;
    m(3, 3) = 1;
    return Operator(std::move(m));
}

}  // namespace qst

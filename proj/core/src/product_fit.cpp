#include "qst/product_fit.hpp"

namespace qst {

ProductFit fit_product(const Operator& op, const Factorization& f, int cut, int iterations) {
    const Eigen::MatrixXcd r = realign(op, f, cut);
    const double rnorm = r.norm();
    ProductFit fit;
    if (rnorm == 0.0) {
        fit.relative_residual = 1.0;  // the zero operator has no product form
        return fit;
    }

    // Minimize ||R - a b^T||_F by alternating the two closed-form updates.
    Eigen::VectorXcd b = Eigen::VectorXcd::Ones(r.cols());
    b(0) += 0.5;  // break symmetric starts
    b.normalize();
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(r.rows());
    for (int it = 0; it < iterations; ++it) {
        a = r * b.conjugate() / b.squaredNorm();
        const double an = a.squaredNorm();
        if (an == 0.0) break;
        b = r.transpose() * a.conjugate() / an;
    }

    fit.relative_residual = (r - a * b.transpose()).norm() / rnorm;
    const Eigen::Index d = f.dims[static_cast<std::size_t>(cut)];
    const Eigen::Index rest = op.dim() / d;
    fit.left = Eigen::Map<const Eigen::Matrix<Amplitude, Eigen::Dynamic, Eigen::Dynamic,
                                              Eigen::RowMajor>>(a.data(), d, d);
    fit.right = Eigen::Map<const Eigen::Matrix<Amplitude, Eigen::Dynamic, Eigen::Dynamic,
                                               Eigen::RowMajor>>(b.data(), rest, rest);
    return fit;
}

bool product_fit_local(const Operator& op, const Factorization& f, double residual_tol) {
    f.check_against(op.dim());
    if (op.matrix().norm() == 0.0) return false;
    if (f.count() == 1) return true;
    for (int c = 0; c < f.count(); ++c) {
        if (fit_product(op, f, c).relative_residual > residual_tol) return false;
    }
    return true;
}

}  // namespace qst

#pragma once

#include "qst/opclass.hpp"

namespace qst {

/// Result of a least-squares fit of op by A (x) B across one cut.
struct ProductFit {
    double relative_residual = 1.0;  // ||op - A x B||_F / ||op||_F
    Eigen::MatrixXcd left;
    Eigen::MatrixXcd right;
};

/// Alternating-least-squares fit of the best tensor-product approximation
/// A (x) B across (factor `cut` | rest). Deliberately avoids the SVD
/// realignment-rank route so the two can check each other.
ProductFit fit_product(const Operator& op, const Factorization& f, int cut, int iterations = 200);

/// Declares op local when every single-factor cut admits a product fit with
/// relative residual below residual_tol.
bool product_fit_local(const Operator& op, const Factorization& f, double residual_tol = 1e-6);

}  // namespace qst

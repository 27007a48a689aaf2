#pragma once

#include <vector>

#include "qst/operator.hpp"

namespace qst {

/// Ordered tensor-product decomposition of an operator's space.
struct Factorization {
    std::vector<Eigen::Index> dims;

    Eigen::Index product() const;
    int count() const { return static_cast<int>(dims.size()); }

    /// One 2-dimensional factor per qubit.
    static Factorization qubits(int n);

    /// Throws unless product() matches dim and every factor is >= 2
    /// (a single factor of 1 is allowed only for dim 1).
    void check_against(Eigen::Index dim) const;
};

/// Local / invertible classification of a linear map. A map is LI exactly
/// when it is both; under the model implemented here those are the maps
/// through which no time passes.
struct OpClass {
    bool local = false;
    bool invertible = false;
    bool zero = false;  // the zero operator is classified non-local by convention

    bool is_li() const { return local && invertible; }
    bool operator==(const OpClass&) const = default;
};

/// Count of singular values above tol * sigma_max; 0 for the zero matrix.
int matrix_rank(const Operator& op, double tol = kRankTol);

bool is_invertible(const Operator& op, double tol = kRankTol);

/// Row/column realignment grouping factor `cut`'s (row, col) indices against
/// the rest. The operator is a tensor product across that cut iff the
/// realigned matrix has rank 1.
Eigen::MatrixXcd realign(const Operator& op, const Factorization& f, int cut);

int operator_schmidt_rank(const Operator& op, const Factorization& f, int cut,
                          double tol = kRankTol);

/// True iff op factors as c * T_1 x ... x T_k over the given decomposition,
/// i.e. the realignment rank is 1 for every single-factor cut.
bool is_local(const Operator& op, const Factorization& f, double tol = kRankTol);

OpClass classify(const Operator& op, const Factorization& f, double tol = kRankTol);

/// Extract the tensor factors of a local operator. Every factor except the
/// first has Frobenius norm sqrt(dim) with its largest entry real positive;
/// the first factor absorbs the global scalar.
std::vector<Operator> factor(const Operator& op, const Factorization& f, double tol = kRankTol);

/// Action induced on the one-dimensional space spanned by psi: Zero when
/// psi lies in the kernel of op, otherwise Identity. Other is reserved.
enum class RayAction { Identity, Zero, Other };

RayAction ray_action(const Operator& op, const StateVec& psi, double tol = kRankTol);

}  // namespace qst

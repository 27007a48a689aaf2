#include "qst/opclass.hpp"

#include <cmath>
#include <numeric>

namespace qst {

namespace {

// Mixed-radix digits of idx for the given dims, most significant first.
void to_digits(Eigen::Index idx, const std::vector<Eigen::Index>& dims,
               std::vector<Eigen::Index>& out) {
    out.resize(dims.size());
    for (std::size_t i = dims.size(); i-- > 0;) {
        out[i] = idx % dims[i];
        idx /= dims[i];
    }
}

Eigen::Index digits_skip(const std::vector<Eigen::Index>& digits,
                         const std::vector<Eigen::Index>& dims, std::size_t skip) {
    Eigen::Index v = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i == skip) continue;
        v = v * dims[i] + digits[i];
    }
    return v;
}

int rank_of_singular_values(const Eigen::VectorXd& sv, double tol) {
    if (sv.size() == 0 || sv(0) <= 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > tol * sv(0)) ++rank;
    }
    return rank;
}

}  // namespace

Eigen::Index Factorization::product() const {
    Eigen::Index p = 1;
    for (Eigen::Index d : dims) p *= d;
    return p;
}

Factorization Factorization::qubits(int n) {
    Factorization f;
    f.dims.assign(static_cast<std::size_t>(n), 2);
    return f;
}

void Factorization::check_against(Eigen::Index dim) const {
    if (dims.empty()) throw ArgumentError("factorization has no factors");
    for (Eigen::Index d : dims) {
        if (d < 1 || (d < 2 && dim != 1)) throw ArgumentError("factor dimensions must be >= 2");
    }
    if (product() != dim) {
        throw ArgumentError("factor dimensions multiply to " + std::to_string(product()) +
                            ", operator dimension is " + std::to_string(dim));
    }
}

int matrix_rank(const Operator& op, double tol) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(op.matrix());
    return rank_of_singular_values(svd.singularValues(), tol);
}

bool is_invertible(const Operator& op, double tol) {
    return matrix_rank(op, tol) == op.dim();
}

Eigen::MatrixXcd realign(const Operator& op, const Factorization& f, int cut) {
    f.check_against(op.dim());
    if (cut < 0 || cut >= f.count()) throw ArgumentError("cut index out of range");
    const Eigen::Index d = f.dims[static_cast<std::size_t>(cut)];
    const Eigen::Index rest = op.dim() / d;
    Eigen::MatrixXcd r(d * d, rest * rest);
    std::vector<Eigen::Index> rd, cd;
    for (Eigen::Index i = 0; i < op.dim(); ++i) {
        to_digits(i, f.dims, rd);
        for (Eigen::Index j = 0; j < op.dim(); ++j) {
            to_digits(j, f.dims, cd);
            const Eigen::Index row = rd[static_cast<std::size_t>(cut)] * d +
                                     cd[static_cast<std::size_t>(cut)];
            const Eigen::Index col = digits_skip(rd, f.dims, static_cast<std::size_t>(cut)) * rest +
                                     digits_skip(cd, f.dims, static_cast<std::size_t>(cut));
            r(row, col) = op.matrix()(i, j);
        }
    }
    return r;
}

int operator_schmidt_rank(const Operator& op, const Factorization& f, int cut, double tol) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(realign(op, f, cut));
    return rank_of_singular_values(svd.singularValues(), tol);
}

bool is_local(const Operator& op, const Factorization& f, double tol) {
    f.check_against(op.dim());
    if (op.matrix().norm() == 0.0) return false;  // by convention; see classify()
    if (f.count() == 1) return true;              // a single factor is vacuously local
    for (int c = 0; c < f.count(); ++c) {
        if (operator_schmidt_rank(op, f, c, tol) != 1) return false;
    }
    return true;
}

OpClass classify(const Operator& op, const Factorization& f, double tol) {
    OpClass cls;
    cls.zero = op.matrix().norm() == 0.0;
    cls.local = is_local(op, f, tol);
    cls.invertible = is_invertible(op, tol);
    return cls;
}

std::vector<Operator> factor(const Operator& op, const Factorization& f, double tol) {
    if (!is_local(op, f, tol)) throw PreconditionError("operator is not local; cannot factor");

    std::vector<Operator> factors;
    Eigen::MatrixXcd cur = op.matrix();
    std::vector<Eigen::Index> dims = f.dims;
    while (dims.size() > 1) {
        Factorization sub{dims};
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(realign(Operator(cur), sub, 0),
                                               Eigen::ComputeThinU | Eigen::ComputeThinV);
        const double sigma = svd.singularValues()(0);
        const Eigen::Index d = dims.front();
        const Eigen::Index rest = static_cast<Eigen::Index>(cur.rows()) / d;
        // R = sigma * u * v^H, so vec(front) = sigma*u and vec(rest) = conj(v).
        Eigen::MatrixXcd front = Eigen::Map<const Eigen::Matrix<Amplitude, Eigen::Dynamic,
                                                                Eigen::Dynamic, Eigen::RowMajor>>(
                                     svd.matrixU().col(0).data(), d, d) *
                                 sigma;
        Eigen::VectorXcd vconj = svd.matrixV().col(0).conjugate();
        Eigen::MatrixXcd tail = Eigen::Map<const Eigen::Matrix<Amplitude, Eigen::Dynamic,
                                                               Eigen::Dynamic, Eigen::RowMajor>>(
            vconj.data(), rest, rest);
        factors.emplace_back(std::move(front));
        cur = std::move(tail);
        dims.erase(dims.begin());
    }
    factors.emplace_back(std::move(cur));

    // Normalization convention: factors after the first get Frobenius norm
    // sqrt(dim) and a real-positive leading entry; the first absorbs the rest.
    Amplitude carried = 1.0;
    for (std::size_t i = 1; i < factors.size(); ++i) {
        Eigen::MatrixXcd m = factors[i].matrix();
        const double fro = m.norm();
        if (fro <= 0.0) throw PreconditionError("zero factor encountered");
        const double scale = std::sqrt(static_cast<double>(m.rows())) / fro;

        Eigen::Index rmax = 0, cmax = 0;
        m.cwiseAbs().maxCoeff(&rmax, &cmax);
        const Amplitude phase = m(rmax, cmax) / std::abs(m(rmax, cmax));

        const Amplitude c = scale * std::conj(phase);
        m *= c;
        carried /= c;
        factors[i] = Operator(std::move(m));
    }
    if (carried != Amplitude(1.0)) {
        factors[0] = Operator(factors[0].matrix() * carried);
    }
    return factors;
}

RayAction ray_action(const Operator& op, const StateVec& psi, double tol) {
    if (op.dim() != psi.dim()) throw ShapeError("ray_action dimension mismatch");
    if (!psi.is_normalized()) throw ArgumentError("ray_action expects a normalized state");
    return (op.matrix() * psi.amps()).norm() <= tol ? RayAction::Zero : RayAction::Identity;
}

}  // namespace qst

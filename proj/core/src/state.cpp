#include "qst/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qst {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void check_finite(const Eigen::VectorXcd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag())) {
            throw ArgumentError("amplitude " + std::to_string(i) + " is not finite");
        }
    }
}

void check_qubits(int n) {
    if (n < 1) throw ArgumentError("state needs at least one qubit");
    if (n > kMaxQubits) {
        throw CapacityError("state of " + std::to_string(n) + " qubits exceeds the cap of " +
                            std::to_string(kMaxQubits));
    }
}

// Sorted copy, validated as a nonempty proper subset of 0..n-1.
std::vector<int> checked_cut(const std::vector<int>& qubits, int n) {
    if (qubits.empty()) throw ArgumentError("qubit cut must be nonempty");
    std::vector<int> cut = qubits;
    std::sort(cut.begin(), cut.end());
    if (std::adjacent_find(cut.begin(), cut.end()) != cut.end()) {
        throw ArgumentError("duplicate qubit index in cut");
    }
    if (cut.front() < 0 || cut.back() >= n) throw ArgumentError("qubit index out of range");
    if (static_cast<int>(cut.size()) == n) throw ArgumentError("cut must be a proper subset");
    return cut;
}

// Reshape amplitudes into a matrix with `rows` qubits indexing rows and the
// complement indexing columns, both MSB-first in slot order.
Eigen::MatrixXcd cut_matrix(const StateVec& s, const std::vector<int>& rows) {
    const int n = s.n_qubits();
    std::vector<int> cols;
    for (int q = 0; q < n; ++q) {
        if (!std::binary_search(rows.begin(), rows.end(), q)) cols.push_back(q);
    }
    Eigen::MatrixXcd m(Eigen::Index(1) << rows.size(), Eigen::Index(1) << cols.size());
    for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(s.dim()); ++k) {
        std::uint64_t r = 0, c = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            r = (r << 1) | ((k >> (n - 1 - rows[i])) & 1u);
        }
        for (std::size_t i = 0; i < cols.size(); ++i) {
            c = (c << 1) | ((k >> (n - 1 - cols[i])) & 1u);
        }
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = s.amp(k);
    }
    return m;
}

}  // namespace

const char* to_string(BellKind k) {
    switch (k) {
        case BellKind::PhiPlus: return "PhiPlus";
        case BellKind::PhiMinus: return "PhiMinus";
        case BellKind::PsiPlus: return "PsiPlus";
        case BellKind::PsiMinus: return "PsiMinus";
    }
    return "?";
}

BellKind bell_kind_from_string(const std::string& s) {
    if (s == "PhiPlus") return BellKind::PhiPlus;
    if (s == "PhiMinus") return BellKind::PhiMinus;
    if (s == "PsiPlus") return BellKind::PsiPlus;
    if (s == "PsiMinus") return BellKind::PsiMinus;
    throw LookupError("unknown Bell state '" + s + "'");
}

StateVec::StateVec(int n_qubits, Eigen::VectorXcd amps) : StateVec(n_qubits, std::move(amps), Unnormalized{}) {
    if (!is_normalized()) {
        throw ArgumentError("state is not normalized (|norm^2 - 1| = " +
                            std::to_string(std::abs(squared_norm() - 1.0)) + ")");
    }
}

StateVec::StateVec(int n_qubits, Eigen::VectorXcd amps, Unnormalized)
    : n_qubits_(n_qubits), amps_(std::move(amps)) {
    check_qubits(n_qubits_);
    if (amps_.size() != (Eigen::Index(1) << n_qubits_)) {
        throw ShapeError("amplitude vector has length " + std::to_string(amps_.size()) +
                         ", expected " + std::to_string(Eigen::Index(1) << n_qubits_));
    }
    check_finite(amps_);
}

StateVec StateVec::basis(int n_qubits, std::uint64_t index) {
    check_qubits(n_qubits);
    if (index >= (std::uint64_t(1) << n_qubits)) throw ArgumentError("basis index out of range");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index(1) << n_qubits);
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVec(n_qubits, std::move(v));
}

StateVec StateVec::zero_state(int n_qubits) { return basis(n_qubits, 0); }

StateVec StateVec::qubit(Amplitude a0, Amplitude a1) {
    Eigen::VectorXcd v(2);
    v << a0, a1;
    return StateVec(1, std::move(v));
}

StateVec StateVec::plus() { return qubit(kInvSqrt2, kInvSqrt2); }
StateVec StateVec::minus() { return qubit(kInvSqrt2, -kInvSqrt2); }

StateVec StateVec::polarization(double angle) { return qubit(std::cos(angle), std::sin(angle)); }

bool StateVec::is_normalized(double tol) const { return std::abs(squared_norm() - 1.0) <= tol; }

StateVec StateVec::normalized() const {
    const double n = amps_.norm();
    if (n <= 0.0) throw ArgumentError("cannot normalize the zero vector");
    return StateVec(n_qubits_, amps_ / n, Unnormalized{});
}

StateVec tensor(const StateVec& a, const StateVec& b) {
    const int n = a.n_qubits() + b.n_qubits();
    if (n > kMaxQubits) {
        throw CapacityError("tensor product of " + std::to_string(n) + " qubits exceeds the cap of " +
                            std::to_string(kMaxQubits));
    }
    Eigen::VectorXcd v(a.dim() * b.dim());
    for (Eigen::Index i = 0; i < a.dim(); ++i) {
        v.segment(i * b.dim(), b.dim()) = a.amps()(i) * b.amps();
    }
    return StateVec(n, std::move(v), StateVec::Unnormalized{});
}

Amplitude inner(const StateVec& a, const StateVec& b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw ShapeError("inner product of states with different qubit counts");
    }
    return a.amps().dot(b.amps());  // Eigen's dot conjugates the first factor
}

bool equal_up_to_global_phase(const StateVec& a, const StateVec& b, double tol) {
    if (a.n_qubits() != b.n_qubits()) {
        throw ShapeError("phase comparison of states with different qubit counts");
    }
    const double na = std::sqrt(a.squared_norm());
    const double nb = std::sqrt(b.squared_norm());
    if (na <= 0.0 || nb <= 0.0) throw ArgumentError("phase comparison with a zero vector");
    return std::abs(a.amps().dot(b.amps())) / (na * nb) >= 1.0 - tol;
}

StateVec bell(BellKind kind) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    switch (kind) {
        case BellKind::PhiPlus: v(0) = kInvSqrt2; v(3) = kInvSqrt2; break;
        case BellKind::PhiMinus: v(0) = kInvSqrt2; v(3) = -kInvSqrt2; break;
        case BellKind::PsiPlus: v(1) = kInvSqrt2; v(2) = kInvSqrt2; break;
        case BellKind::PsiMinus: v(1) = kInvSqrt2; v(2) = -kInvSqrt2; break;
    }
    return StateVec(2, std::move(v));
}

int schmidt_rank(const StateVec& s, const std::vector<int>& left_qubits, double tol) {
    const std::vector<int> cut = checked_cut(left_qubits, s.n_qubits());
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cut_matrix(s, cut));
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > tol * sv(0)) ++rank;
    }
    return rank;
}

double concurrence(const StateVec& s) {
    if (s.n_qubits() != 2) throw ShapeError("concurrence is defined for two qubits");
    if (!s.is_normalized()) throw ArgumentError("concurrence expects a normalized state");
    return 2.0 * std::abs(s.amp(0) * s.amp(3) - s.amp(1) * s.amp(2));
}

StateVec permute_qubits(const StateVec& s, const std::vector<int>& targets) {
    const int n = s.n_qubits();
    if (static_cast<int>(targets.size()) != n) throw ArgumentError("permutation has wrong length");
    std::vector<bool> seen(n, false);
    for (int t : targets) {
        if (t < 0 || t >= n || seen[t]) throw ArgumentError("targets is not a permutation");
        seen[t] = true;
    }
    Eigen::VectorXcd v(s.dim());
    for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(s.dim()); ++k) {
        std::uint64_t out = 0;
        for (int i = 0; i < n; ++i) {
            out |= ((k >> (n - 1 - i)) & 1u) << (n - 1 - targets[i]);
        }
        v(static_cast<Eigen::Index>(out)) = s.amp(k);
    }
    return StateVec(n, std::move(v), StateVec::Unnormalized{});
}

StateVec delete_qubits(const StateVec& s, const std::vector<int>& drop, double tol) {
    const int n = s.n_qubits();
    std::vector<int> d = drop;
    std::sort(d.begin(), d.end());
    if (d.empty()) throw ArgumentError("no qubits to delete");
    if (std::adjacent_find(d.begin(), d.end()) != d.end()) throw ArgumentError("duplicate qubit index");
    if (d.front() < 0 || d.back() >= n) throw ArgumentError("qubit index out of range");
    const int m = n - static_cast<int>(d.size());
    if (m < 1) throw ArgumentError("cannot delete every qubit");

    std::vector<int> keep;
    for (int q = 0; q < n; ++q) {
        if (!std::binary_search(d.begin(), d.end(), q)) keep.push_back(q);
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index(1) << m);
    for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(s.dim()); ++k) {
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < keep.size(); ++i) {
            out = (out << 1) | ((k >> (n - 1 - keep[i])) & 1u);
        }
        v(static_cast<Eigen::Index>(out)) += s.amp(k);
    }
    const double norm = v.norm();
    if (norm <= tol) throw ArgumentError("deletion cancels every amplitude");
    return StateVec(m, v / norm, StateVec::Unnormalized{});
}

std::pair<StateVec, StateVec> split_product(const StateVec& s, const std::vector<int>& subset,
                                            double tol) {
    const std::vector<int> cut = checked_cut(subset, s.n_qubits());
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cut_matrix(s, cut),
                                           Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(0) <= 0.0 || (sv.size() > 1 && sv(1) > tol * sv(0))) {
        throw PreconditionError("state is not a product across the requested cut");
    }
    Eigen::VectorXcd left = svd.matrixU().col(0);
    Eigen::VectorXcd right = sv(0) * svd.matrixV().col(0).conjugate();

    // Fix the split's phase freedom: largest entry of the left factor real positive.
    Eigen::Index imax = 0;
    left.cwiseAbs().maxCoeff(&imax);
    const Amplitude phase = left(imax) / std::abs(left(imax));
    left *= std::conj(phase);
    right *= phase;

    const int nl = static_cast<int>(cut.size());
    return {StateVec(nl, std::move(left), StateVec::Unnormalized{}).normalized(),
            StateVec(s.n_qubits() - nl, std::move(right), StateVec::Unnormalized{}).normalized()};
}

}  // namespace qst

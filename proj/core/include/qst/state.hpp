#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qst/errors.hpp"

namespace qst {

using Amplitude = std::complex<double>;

/// Norm / identity tolerance. Every identity handled here is exact in
/// +-1/2, +-1/sqrt(2) arithmetic, so this is generous.
inline constexpr double kNormTol = 1e-9;

/// Relative singular-value cutoff for all rank decisions.
inline constexpr double kRankTol = 1e-9;

/// Dense amplitude vectors become pointless beyond this.
inline constexpr int kMaxQubits = 12;

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

const char* to_string(BellKind k);
BellKind bell_kind_from_string(const std::string& s);

/// Pure n-qubit state as a dense amplitude vector.
///
/// Index convention: qubit 0 is the leftmost tensor factor and the most
/// significant bit of the basis index, so |01> sits at index 1.
class StateVec {
public:
    struct Unnormalized {};  // constructor tag: skip the unit-norm check

    StateVec(int n_qubits, Eigen::VectorXcd amps);
    StateVec(int n_qubits, Eigen::VectorXcd amps, Unnormalized);

    static StateVec basis(int n_qubits, std::uint64_t index);
    static StateVec zero_state(int n_qubits);           // |0...0>
    static StateVec qubit(Amplitude a0, Amplitude a1);  // single qubit, normalized
    static StateVec plus();
    static StateVec minus();
    /// Linear polarization at `angle`: cos(angle)|0> + sin(angle)|1>.
    static StateVec polarization(double angle);

    int n_qubits() const { return n_qubits_; }
    Eigen::Index dim() const { return amps_.size(); }
    const Eigen::VectorXcd& amps() const { return amps_; }
    Amplitude amp(std::uint64_t index) const { return amps_(static_cast<Eigen::Index>(index)); }

    double squared_norm() const { return amps_.squaredNorm(); }
    bool is_normalized(double tol = kNormTol) const;
    StateVec normalized() const;

    bool operator==(const StateVec&) const = default;

private:
    int n_qubits_;
    Eigen::VectorXcd amps_;
};

/// Kronecker composition; `a`'s qubits become the leading factors.
StateVec tensor(const StateVec& a, const StateVec& b);

/// <a|b>, conjugate-linear in the first argument.
Amplitude inner(const StateVec& a, const StateVec& b);

/// True iff a = c*b for some unit-modulus scalar c, within tol.
bool equal_up_to_global_phase(const StateVec& a, const StateVec& b, double tol = kNormTol);

StateVec bell(BellKind kind);

/// Schmidt rank across the cut (left_qubits | rest): number of singular
/// values of the reshaped amplitude matrix above tol * sigma_max.
/// Rank 1 means the state is a product across the cut.
int schmidt_rank(const StateVec& s, const std::vector<int>& left_qubits, double tol = kRankTol);

/// Two-qubit concurrence 2|a00*a11 - a01*a10|: 1 for maximally entangled
/// states, 0 for products.
double concurrence(const StateVec& s);

/// Move qubit slot i to position targets[i]; targets must be a permutation
/// of 0..n-1.
StateVec permute_qubits(const StateVec& s, const std::vector<int>& targets);

/// Drop the given qubit slots from every computational-basis ket string,
/// summing amplitudes of strings that collide, then renormalize.
/// This is a term-dropping re-indexing, not a partial trace.
StateVec delete_qubits(const StateVec& s, const std::vector<int>& drop, double tol = kNormTol);

/// Split a product state across (subset | rest) into its two normalized
/// factors. Precondition: schmidt_rank(s, subset) == 1.
std::pair<StateVec, StateVec> split_product(const StateVec& s, const std::vector<int>& subset,
                                            double tol = kRankTol);

}  // namespace qst

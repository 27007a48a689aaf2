#include "qst/envspace.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace qst {

namespace {

constexpr double kGenericTol = 1e-12;
constexpr double kPsdTol = 1e-9;  // smallest Gram eigenvalue must exceed -kPsdTol

}  // namespace

EnvironmentSpec EnvironmentSpec::make(std::vector<std::string> labels, Eigen::VectorXcd amplitudes,
                                      Eigen::MatrixXcd gram, bool exhaustive) {
    const auto n = static_cast<Eigen::Index>(labels.size());
    if (n == 0) throw ArgumentError("environment needs at least one transition");
    if (amplitudes.size() != n || gram.rows() != n || gram.cols() != n) {
        throw ShapeError("environment label/amplitude/gram sizes disagree");
    }
    if ((gram - gram.adjoint()).norm() > 1e-12 * std::max(1.0, gram.norm())) {
        throw ModelError("overlap declarations are not Hermitian");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(gram(i, i) - Amplitude(1.0)) > 1e-12) {
            throw ModelError("a state must have unit overlap with itself");
        }
    }
    EnvironmentSpec env{std::move(labels), std::move(amplitudes), std::move(gram), exhaustive, true};
    if (exhaustive && std::abs(env.amplitudes.squaredNorm() - 1.0) > kNormTol) {
        throw ModelError("exhaustive transition amplitudes must have unit total probability");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(env.amplitudes(i)) < kGenericTol) env.generic = false;
    }
    return env;
}

int span_dim(const EnvironmentSpec& env, double tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(env.gram, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd eig = es.eigenvalues();
    if (eig(0) < -kPsdTol) {
        throw ModelError("overlap declarations are inconsistent (Gram matrix not PSD, min eig " +
                         std::to_string(eig(0)) + ")");
    }
    const double top = eig(eig.size() - 1);
    if (top <= 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < eig.size(); ++i) {
        if (eig(i) > tol * top) ++rank;
    }
    return rank;
}

EnvironmentSpec polarizer_chain(const std::vector<double>& angles, double initial_angle) {
    if (angles.empty()) throw ArgumentError("polarizer chain needs at least one polarizer");
    const int m = static_cast<int>(angles.size());

    std::vector<std::string> labels;
    Eigen::VectorXcd amps(m + 1);

    // Walk the chain: at polarizer i the photon is absorbed onto the
    // oscillation direction theta_i or passes into its orthogonal
    // complement, which carries the label pi/2 - theta_i. The branch
    // amplitudes at each step are (cos, sin) of the angle between the
    // current polarization and theta_i, so the m+1 outcome probabilities
    // sum to one.
    double current = initial_angle;
    double through = 1.0;  // amplitude of having passed every polarizer so far
    for (int i = 0; i < m; ++i) {
        const double delta = angles[static_cast<std::size_t>(i)] - current;
        labels.push_back("absorbed@" + std::to_string(i + 1));
        amps(i) = through * std::cos(delta);
        through *= std::sin(delta);
        current = angles[static_cast<std::size_t>(i)] + std::numbers::pi / 2.0;
    }
    labels.push_back("passed@" + std::to_string(m));
    amps(m) = through;

    // The paper-level declaration: distinct outcomes have zero transition
    // probability between them, so the Gram matrix is the identity.
    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Identity(m + 1, m + 1);
    return EnvironmentSpec::make(std::move(labels), std::move(amps), std::move(gram), true);
}

bool monotonicity_check(const EnvironmentSpec& small, const EnvironmentSpec& large) {
    std::map<std::string, Eigen::Index> pos;
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(large.labels.size()); ++i) {
        pos[large.labels[static_cast<std::size_t>(i)]] = i;
    }
    std::vector<Eigen::Index> idx;
    for (const auto& l : small.labels) {
        auto it = pos.find(l);
        if (it == pos.end()) {
            throw ArgumentError("environment is not nested: label '" + l + "' missing");
        }
        idx.push_back(it->second);
    }
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = 0; j < idx.size(); ++j) {
            const Amplitude a = small.gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            const Amplitude b = large.gram(idx[i], idx[j]);
            if (std::abs(a - b) > 1e-12) {
                throw ArgumentError("overlap declarations differ on the common labels");
            }
        }
    }
    return span_dim(small) <= span_dim(large);
}

}  // namespace qst

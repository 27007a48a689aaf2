#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include "qst/event_graph.hpp"
#include "qst/state.hpp"

namespace qst {

/// Finite ontological model: preparation distributions over the ontic space
/// and response functions for measurements on one system or on a pair.
struct OnticModel {
    int lambda_size = 0;
    std::map<std::string, Eigen::VectorXd> preparations;                  // p(lambda | P)
    std::map<std::string, std::vector<Eigen::VectorXd>> responses;        // M -> k -> p(k | M, lambda)
    std::map<std::string, std::vector<Eigen::MatrixXd>> pair_responses;   // M -> k -> p(k | M, l1, l2)

    /// Throws ModelError unless every preparation sums to 1 and every
    /// response column sums to 1 over outcomes.
    void check(double tol = kNormTol) const;
};

/// Finite version of the reformulated Born rule:
/// sum_lambda p(k | M, lambda) p(lambda | P).
double born_sum(const OnticModel& m, const std::string& prep, const std::string& measurement, int k);

/// sum_lambda p(lambda | P1) p(lambda | P2). Zero iff the model is
/// psi-ontic on this pair of preparations.
double overlap(const OnticModel& m, const std::string& p1, const std::string& p2);

/// The four entangled measurement states phi_1..phi_4 used against the
/// product preparations {|00>, |0->, |-0>, |-->}.
std::array<StateVec, 4> phi_basis();

/// The four product preparations, in table order.
std::array<StateVec, 4> pbr_preparations();

/// 4x4 table of |<phi_k | psi_P>|^2, rows k = 1..4, columns
/// P = 00, 0-, -0, --. The pairing (k, P_k) on the diagonal is exactly zero.
Eigen::Matrix4d phi_table();

/// max |joint - m1 x m2| over the ontic pairs; zero iff preparation
/// independence holds.
double independence_gap(const Eigen::MatrixXd& joint, const Eigen::VectorXd& m1,
                        const Eigen::VectorXd& m2);

struct PbrWitness {
    int k = 0;                  // outcome index 1..4
    std::string preparation;    // which product preparation cannot satisfy its zero
    double min_born = 0;        // smallest achievable born_sum under the other three zeros
};

/// Searches for an outcome/preparation pair whose quantum zero cannot be
/// reproduced by any response assignment once the other three zeros hold,
/// assuming the bipartite preparations are products of the model's single
/// system preparations "P0" and "P-". Returns nullopt when the preparations
/// do not overlap (the psi-ontic case, where all four zeros are satisfiable)
/// or when a non-product joint is supplied (the independence step fails, so
/// no contradiction can be derived).
std::optional<PbrWitness> pbr_contradiction_witness(
    const OnticModel& m, const std::optional<Eigen::MatrixXd>& joint_override = std::nullopt);

/// Toy bipartite preparation distribution over event ids built from a
/// two-particle scenario's partition: when the particles' pre-measurement
/// supports were fused into one event, the joint is perfectly correlated
/// across the diagonal while the marginals stay spread, so the independence
/// gap is positive. This is a demonstration model, not a reconstruction of
/// quantum statistics.
struct BipartiteJoint {
    Eigen::MatrixXd joint;
    Eigen::VectorXd marginal1;
    Eigen::VectorXd marginal2;
    bool merged = false;
    std::string note = "demonstration model";
};

BipartiteJoint merged_event_joint(const Scenario& sc, const EventPartition& partition);

}  // namespace qst

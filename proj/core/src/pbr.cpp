#include "qst/pbr.hpp"

#include <cmath>

namespace qst {

namespace {

constexpr double kProbTol = 1e-12;

const Eigen::VectorXd& prep_or_throw(const OnticModel& m, const std::string& label) {
    auto it = m.preparations.find(label);
    if (it == m.preparations.end()) throw LookupError("unknown preparation '" + label + "'");
    return it->second;
}

}  // namespace

void OnticModel::check(double tol) const {
    if (lambda_size < 1) throw ModelError("ontic space must be nonempty");
    for (const auto& [label, p] : preparations) {
        if (p.size() != lambda_size) throw ModelError("preparation '" + label + "' has wrong length");
        if (p.minCoeff() < -kProbTol) throw ModelError("preparation '" + label + "' has negative mass");
        if (std::abs(p.sum() - 1.0) > tol) throw ModelError("preparation '" + label + "' does not sum to 1");
    }
    for (const auto& [label, ks] : responses) {
        for (const auto& r : ks) {
            if (r.size() != lambda_size) throw ModelError("response '" + label + "' has wrong length");
            if (r.minCoeff() < -kProbTol || r.maxCoeff() > 1 + kProbTol) {
                throw ModelError("response '" + label + "' outside [0,1]");
            }
        }
        for (int l = 0; l < lambda_size; ++l) {
            double s = 0;
            for (const auto& r : ks) s += r(l);
            if (std::abs(s - 1.0) > tol) {
                throw ModelError("response '" + label + "' outcomes do not sum to 1 at lambda=" +
                                 std::to_string(l));
            }
        }
    }
    for (const auto& [label, ks] : pair_responses) {
        for (const auto& r : ks) {
            if (r.rows() != lambda_size || r.cols() != lambda_size) {
                throw ModelError("pair response '" + label + "' has wrong shape");
            }
        }
        for (int a = 0; a < lambda_size; ++a) {
            for (int b = 0; b < lambda_size; ++b) {
                double s = 0;
                for (const auto& r : ks) s += r(a, b);
                if (std::abs(s - 1.0) > tol) {
                    throw ModelError("pair response '" + label + "' outcomes do not sum to 1");
                }
            }
        }
    }
}

double born_sum(const OnticModel& m, const std::string& prep, const std::string& measurement, int k) {
    const Eigen::VectorXd& p = prep_or_throw(m, prep);
    auto it = m.responses.find(measurement);
    if (it == m.responses.end()) throw LookupError("unknown measurement '" + measurement + "'");
    if (k < 0 || k >= static_cast<int>(it->second.size())) {
        throw LookupError("measurement '" + measurement + "' has no outcome " + std::to_string(k));
    }
    return it->second[static_cast<std::size_t>(k)].dot(p);
}

double overlap(const OnticModel& m, const std::string& p1, const std::string& p2) {
    return prep_or_throw(m, p1).cwiseProduct(prep_or_throw(m, p2)).sum();
}

std::array<StateVec, 4> phi_basis() {
    const StateVec zero = StateVec::basis(1, 0);
    const StateVec one = StateVec::basis(1, 1);
    const StateVec plus = StateVec::plus();
    const StateVec minus = StateVec::minus();
    const auto mix = [](const StateVec& a, const StateVec& b) {
        return StateVec(2, (a.amps() + b.amps()) / std::sqrt(2.0));
    };
    return {
        bell(BellKind::PsiPlus),                             // (|01> + |10>)/sqrt2
        mix(tensor(zero, plus), tensor(one, minus)),         // (|0+> + |1->)/sqrt2
        mix(tensor(minus, one), tensor(plus, zero)),         // (|-1> + |+0>)/sqrt2
        mix(tensor(minus, plus), tensor(plus, minus)),       // (|-+> + |+->)/sqrt2
    };
}

std::array<StateVec, 4> pbr_preparations() {
    const StateVec zero = StateVec::basis(1, 0);
    const StateVec minus = StateVec::minus();
    return {tensor(zero, zero), tensor(zero, minus), tensor(minus, zero), tensor(minus, minus)};
}

Eigen::Matrix4d phi_table() {
    const auto phis = phi_basis();
    const auto preps = pbr_preparations();
    Eigen::Matrix4d t;
    for (int k = 0; k < 4; ++k) {
        for (int p = 0; p < 4; ++p) {
            t(k, p) = std::norm(inner(phis[static_cast<std::size_t>(k)], preps[static_cast<std::size_t>(p)]));
        }
    }
    return t;
}

double independence_gap(const Eigen::MatrixXd& joint, const Eigen::VectorXd& m1,
                        const Eigen::VectorXd& m2) {
    if (joint.rows() != m1.size() || joint.cols() != m2.size()) {
        throw ShapeError("joint and marginals have inconsistent dimensions");
    }
    return (joint - m1 * m2.transpose()).cwiseAbs().maxCoeff();
}

std::optional<PbrWitness> pbr_contradiction_witness(const OnticModel& m,
                                                    const std::optional<Eigen::MatrixXd>& joint_override) {
    m.check();
    const Eigen::VectorXd& p0 = prep_or_throw(m, "P0");
    const Eigen::VectorXd& pm = prep_or_throw(m, "P-");

    if (joint_override) {
        // A correlated joint breaks the product step of the argument, so the
        // four zeros impose no pointwise conflict through it.
        if (independence_gap(*joint_override, p0, pm) > kNormTol) return std::nullopt;
    }
    if (overlap(m, "P0", "P-") <= kProbTol) return std::nullopt;

    // Bipartite product preparations in the table order 00, 0-, -0, --,
    // paired with the outcome whose quantum probability vanishes.
    const std::array<const Eigen::VectorXd*, 2> singles{&p0, &pm};
    const std::array<std::pair<int, int>, 4> pairs{{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
    const std::array<std::string, 4> labels{"00", "0-", "-0", "--"};
    const auto joint_of = [&](int which) {
        return (*singles[static_cast<std::size_t>(pairs[static_cast<std::size_t>(which)].first)]) *
               singles[static_cast<std::size_t>(pairs[static_cast<std::size_t>(which)].second)]->transpose();
    };

    // born_sum(k_P, P) = 0 forces the response of outcome k_P to vanish on
    // the support of P's joint, because every term is nonnegative. A
    // candidate is a witness when, with the other three zeros in force, the
    // response normalization pins its outcome to 1 somewhere inside its own
    // joint's support. This solves the response-feasibility program exactly.
    for (int cand = 0; cand < 4; ++cand) {
        const Eigen::MatrixXd jc = joint_of(cand);
        double min_born = 0;
        for (int a = 0; a < m.lambda_size; ++a) {
            for (int b = 0; b < m.lambda_size; ++b) {
                if (jc(a, b) <= kProbTol) continue;
                bool all_forced = true;
                for (int other = 0; other < 4; ++other) {
                    if (other == cand) continue;
                    if (joint_of(other)(a, b) <= kProbTol) {
                        all_forced = false;
                        break;
                    }
                }
                if (all_forced) min_born += jc(a, b);
            }
        }
        if (min_born > kProbTol) {
            return PbrWitness{cand + 1, labels[static_cast<std::size_t>(cand)], min_born};
        }
    }
    return std::nullopt;
}

BipartiteJoint merged_event_joint(const Scenario& sc, const EventPartition& partition) {
    if (sc.particles.size() != 2) {
        throw ArgumentError("merged_event_joint expects a two-particle scenario");
    }
    const int n = static_cast<int>(partition.events.size());
    if (n < 1) throw ArgumentError("partition has no events");

    // The event holding each particle's earliest segment is its
    // pre-measurement ontic state.
    std::array<int, 2> pre_event{-1, -1};
    for (int which = 0; which < 2; ++which) {
        const std::string& pid = sc.particles[static_cast<std::size_t>(which)].id;
        double best = 0;
        for (const auto& ev : partition.events) {
            for (const auto& s : ev.segments) {
                if (s.particle_id != pid) continue;
                if (pre_event[static_cast<std::size_t>(which)] < 0 || s.start.t < best) {
                    pre_event[static_cast<std::size_t>(which)] = ev.id;
                    best = s.start.t;
                }
            }
        }
        if (pre_event[static_cast<std::size_t>(which)] < 0) {
            throw ArgumentError("particle '" + pid + "' has no segments");
        }
    }

    BipartiteJoint out;
    out.merged = pre_event[0] == pre_event[1];
    if (out.merged) {
        // One shared event: the ontic states coincide, so all the joint
        // weight sits on the diagonal while each marginal alone is spread
        // over the event ids.
        out.joint = Eigen::MatrixXd::Identity(n, n) / n;
        out.marginal1 = Eigen::VectorXd::Constant(n, 1.0 / n);
        out.marginal2 = out.marginal1;
    } else {
        out.joint = Eigen::MatrixXd::Zero(n, n);
        out.joint(pre_event[0], pre_event[1]) = 1.0;
        out.marginal1 = Eigen::VectorXd::Zero(n);
        out.marginal1(pre_event[0]) = 1.0;
        out.marginal2 = Eigen::VectorXd::Zero(n);
        out.marginal2(pre_event[1]) = 1.0;
    }
    return out;
}

}  // namespace qst

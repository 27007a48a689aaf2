#include "qst/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace qst {

namespace {

bool is_terminal(const NodeKind& k) {
    if (std::holds_alternative<DetectorNode>(k)) return true;
    if (const auto* p = std::get_if<PolarizerNode>(&k)) return !p->pass;
    return false;
}

}  // namespace

const char* node_kind_name(const NodeKind& k) {
    switch (k.index()) {
        case 0: return "pair";
        case 1: return "bs";
        case 2: return "mirror";
        case 3: return "polarizer";
        case 4: return "detector";
        case 5: return "gate";
    }
    return "?";
}

const ParticleDecl* Scenario::find_particle(const std::string& id) const {
    for (const auto& p : particles) {
        if (p.id == id) return &p;
    }
    return nullptr;
}

std::vector<int> Scenario::time_order() const {
    std::vector<int> order(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [this](int a, int b) {
        return nodes[static_cast<std::size_t>(a)].at.t < nodes[static_cast<std::size_t>(b)].at.t;
    });
    return order;
}

std::vector<int> Scenario::nodes_of(const std::string& id) const {
    std::vector<int> out;
    for (int i : time_order()) {
        const auto& parts = nodes[static_cast<std::size_t>(i)].participants;
        if (std::find(parts.begin(), parts.end(), id) != parts.end()) out.push_back(i);
    }
    return out;
}

double Scenario::leg_velocity(const ParticleDecl& p, int leg_index) const {
    if (p.velocities.empty()) return 0.0;
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(leg_index), p.velocities.size() - 1);
    return p.velocities[i];
}

double Scenario::position_at(const std::string& id, double t) const {
    const ParticleDecl* p = find_particle(id);
    if (!p) throw LookupError("unknown particle '" + id + "'");
    if (t < p->birth.t - 1e-12) throw ArgumentError("time before particle birth");
    InferredEvent pos = p->birth;
    int leg = 0;
    for (int ni : nodes_of(id)) {
        const InferredEvent& at = nodes[static_cast<std::size_t>(ni)].at;
        if (t <= at.t) break;
        pos = at;
        ++leg;
    }
    return pos.x + leg_velocity(*p, leg) * (t - pos.t);
}

std::vector<Violation> validate(const Scenario& sc) {
    std::vector<Violation> out;

    std::set<std::string> ids;
    for (const auto& p : sc.particles) {
        if (!ids.insert(p.id).second) {
            out.push_back({"duplicate", "particle " + p.id, "particle id declared twice"});
        }
        for (double v : p.velocities) {
            if (std::abs(v) > 1.0 + 1e-12) {
                out.push_back({"velocity", "particle " + p.id,
                               "speed " + std::to_string(v) + " exceeds lightspeed"});
            }
        }
        if (p.velocities.empty()) {
            out.push_back({"velocity", "particle " + p.id, "no velocity declared"});
        }
    }

    const std::vector<int> order = sc.time_order();
    for (std::size_t oi = 0; oi + 1 < order.size(); ++oi) {
        const auto& a = sc.nodes[static_cast<std::size_t>(order[oi])];
        const auto& b = sc.nodes[static_cast<std::size_t>(order[oi + 1])];
        if (a.at.t == b.at.t) {
            // Simultaneous nodes on disjoint particles commute; a shared
            // participant would make the processing order ambiguous.
            for (const auto& id : a.participants) {
                if (std::find(b.participants.begin(), b.participants.end(), id) !=
                    b.participants.end()) {
                    out.push_back({"ordering", "node " + std::string(node_kind_name(b.kind)),
                                   "two nodes at t=" + std::to_string(a.at.t) +
                                       " share participant " + id});
                }
            }
        }
    }

    for (std::size_t i = 0; i < sc.nodes.size(); ++i) {
        const auto& n = sc.nodes[i];
        const std::string subject = "node " + std::string(node_kind_name(n.kind)) + " at t=" +
                                    std::to_string(n.at.t);

        std::set<std::string> seen;
        for (const auto& id : n.participants) {
            if (!sc.find_particle(id)) {
                out.push_back({"reference", subject, "unknown participant '" + id + "'"});
            }
            if (!seen.insert(id).second) {
                out.push_back({"arity", subject, "participant '" + id + "' repeated"});
            }
        }

        const std::size_t arity = n.participants.size();
        const bool two = arity == 2, one = arity == 1;
        switch (n.kind.index()) {
            case 0:  // pair
            case 1:  // bs
            case 2:  // mirror
                if (!two) out.push_back({"arity", subject, "needs exactly two participants"});
                break;
            case 3:  // polarizer
            case 4:  // detector
                if (!one) out.push_back({"arity", subject, "needs exactly one participant"});
                break;
            case 5: {  // gate
                const auto& g = std::get<GateNode>(n.kind);
                const Eigen::Index want = Eigen::Index(1) << arity;
                if (arity < 1) out.push_back({"arity", subject, "needs participants"});
                if (g.matrix.rows() != g.matrix.cols() || g.matrix.rows() != want) {
                    out.push_back({"arity", subject, "gate matrix dimension does not match 2^participants"});
                }
                break;
            }
        }

        if (const auto* b = std::get_if<BeamSplitterNode>(&n.kind)) {
            if (b->outcome < 1 || b->outcome > 4) out.push_back({"outcome", subject, "bs outcome must be 1..4"});
        }
        if (const auto* m = std::get_if<MirrorNode>(&n.kind)) {
            if (m->outcome < 1 || m->outcome > 4) out.push_back({"outcome", subject, "mirror outcome must be 1..4"});
        }
        if (const auto* d = std::get_if<DetectorNode>(&n.kind)) {
            if (d->outcome < 0 || d->outcome > 1) out.push_back({"outcome", subject, "detector outcome must be 0 or 1"});
        }
    }

    // Per-particle worldline checks: chronology, geometry, terminality.
    for (const auto& p : sc.particles) {
        const std::vector<int> mine = sc.nodes_of(p.id);
        if (mine.empty()) {
            out.push_back({"worldline", "particle " + p.id, "participates in no interaction node"});
            continue;
        }
        InferredEvent pos = p.birth;
        int leg = 0;
        for (std::size_t k = 0; k < mine.size(); ++k) {
            const auto& n = sc.nodes[static_cast<std::size_t>(mine[k])];
            const std::string subject = "node " + std::string(node_kind_name(n.kind)) + " at t=" +
                                        std::to_string(n.at.t);
            if (n.at.t < p.birth.t) {
                out.push_back({"chronology", subject, "before the birth of participant " + p.id});
                break;
            }
            const double dt = n.at.t - pos.t;
            if (dt < 0) {
                out.push_back({"chronology", subject, "worldline of " + p.id + " runs backwards"});
                break;
            }
            const double expect = pos.x + sc.leg_velocity(p, leg) * dt;
            if (std::abs(expect - n.at.x) > kGeoTol) {
                out.push_back({"geometry", subject,
                               "particle " + p.id + " is at x=" + std::to_string(expect) +
                                   ", node at x=" + std::to_string(n.at.x)});
            }
            if (is_terminal(n.kind) && k + 1 < mine.size()) {
                out.push_back({"terminal", subject,
                               "particle " + p.id + " has nodes after its terminal interaction"});
            }
            if (std::holds_alternative<PreparePairNode>(n.kind) && k != 0) {
                out.push_back({"preparation", subject,
                               "pair preparation must be the first node of " + p.id});
            }
            pos = n.at;
            ++leg;
        }
    }

    return out;
}

}  // namespace qst

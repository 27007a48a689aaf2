#include "qst/event_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace qst {

namespace {

constexpr double kZeroProbTol = 1e-12;

// ---------------------------------------------------------------------------
// live multi-particle state

struct LiveState {
    std::optional<StateVec> state;
    std::vector<std::string> order;  // slot order, slot 0 = leftmost factor

    int slot(const std::string& id) const {
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (order[i] == id) return static_cast<int>(i);
        }
        return -1;
    }

    void ensure(const std::string& id) {
        if (slot(id) >= 0) return;
        state = state ? tensor(*state, StateVec::zero_state(1)) : StateVec::zero_state(1);
        order.push_back(id);
    }

    void remove(const std::string& id) {
        const int s = slot(id);
        if (s < 0) return;
        if (order.size() == 1) {
            state.reset();
        } else {
            state = delete_qubits(*state, {s});
        }
        order.erase(order.begin() + s);
    }

    int count() const { return static_cast<int>(order.size()); }
};

// op acting on the listed slots (in that qubit order), identity elsewhere.
Eigen::MatrixXcd embed(const Eigen::MatrixXcd& op, const std::vector<int>& slots, int n) {
    const Eigen::Index dim = Eigen::Index(1) << n;
    const std::uint64_t hit = [&] {
        std::uint64_t m = 0;
        for (int s : slots) m |= std::uint64_t(1) << (n - 1 - s);
        return m;
    }();
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(dim); ++i) {
        std::uint64_t r = 0;
        for (int s : slots) r = (r << 1) | ((i >> (n - 1 - s)) & 1u);
        for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(dim); ++j) {
            if ((i & ~hit) != (j & ~hit)) continue;
            std::uint64_t c = 0;
            for (int s : slots) c = (c << 1) | ((j >> (n - 1 - s)) & 1u);
            full(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    return full;
}

BellKind bell_from_outcome(int outcome) {
    switch (outcome) {
        case 1: return BellKind::PhiPlus;
        case 2: return BellKind::PhiMinus;
        case 3: return BellKind::PsiPlus;
        case 4: return BellKind::PsiMinus;
    }
    throw ArgumentError("bell outcome index must be 1..4");
}

StateVec mirror_outcome_state(int outcome) {
    if (outcome < 1 || outcome > 4) throw ArgumentError("mirror outcome index must be 1..4");
    return StateVec::basis(2, static_cast<std::uint64_t>(outcome - 1));
}

// Is the pair of slots a maximally entangled pure pair, unentangled with the
// rest of the live state?
bool max_entangled_pair(const StateVec& s, int slot_a, int slot_b) {
    if (s.n_qubits() == 2) {
        return concurrence(s.normalized()) >= 1.0 - kMergeTol;
    }
    if (schmidt_rank(s, {slot_a, slot_b}) != 1) return false;
    auto [pair_state, rest] = split_product(s, {slot_a, slot_b});
    (void)rest;
    return concurrence(pair_state) >= 1.0 - kMergeTol;
}

struct NodeOp {
    Eigen::MatrixXcd full;     // on the whole live state
    bool projective = false;   // single declared outcome of a measurement
    bool absorptive = false;   // participants are destroyed (detector, polarizer absorb)
    std::string note;
};

NodeOp build_node_op(const InteractionNode& node, const LiveState& live) {
    std::vector<int> slots;
    for (const auto& id : node.participants) slots.push_back(live.slot(id));
    const int n = live.count();

    NodeOp out;
    switch (node.kind.index()) {
        case 0: {  // pair: replace two fresh |0> qubits with the Bell state
            const auto& k = std::get<PreparePairNode>(node.kind);
            const StateVec b = bell(k.kind);
            Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(4, 4);
            op.col(0) = b.amps();  // |bell><00|
            out.full = embed(op, slots, n);
            out.note = "preparation";
            return out;
        }
        case 1: {
            const auto& bs = std::get<BeamSplitterNode>(node.kind);
            const StateVec b = bell(bell_from_outcome(bs.outcome));
            out.full = embed(Operator::projector(b).matrix(), slots, n);
            out.projective = true;
            return out;
        }
        case 2: {
            const auto& m = std::get<MirrorNode>(node.kind);
            out.full = embed(Operator::projector(mirror_outcome_state(m.outcome)).matrix(), slots, n);
            out.projective = true;
            return out;
        }
        case 3: {
            const auto& p = std::get<PolarizerNode>(node.kind);
            const double dir = p.pass ? std::numbers::pi / 2.0 - p.angle : p.angle;
            out.full = embed(Operator::projector(StateVec::polarization(dir)).matrix(), slots, n);
            out.projective = true;
            out.absorptive = !p.pass;
            if (out.absorptive) out.note = "absorption";
            return out;
        }
        case 4: {
            const auto& d = std::get<DetectorNode>(node.kind);
            out.full = embed(Operator::projector(StateVec::basis(1, d.outcome != 0)).matrix(), slots, n);
            out.projective = true;
            out.absorptive = true;
            out.note = "absorption";
            return out;
        }
        case 5: {
            const auto& g = std::get<GateNode>(node.kind);
            out.full = embed(g.matrix, slots, n);
            return out;
        }
    }
    throw ArgumentError("unhandled node kind");
}

struct Engine {
    Scenario scenario;
    std::mt19937_64* rng = nullptr;  // when set, outcomes are sampled and written back

    TimeOrderedTrace run() {
        const std::vector<Violation> violations = validate(scenario);
        for (const auto& v : violations) {
            const std::string msg = v.rule + ": " + v.subject + ": " + v.message;
            if (v.rule == "geometry") throw GeometryError(msg);
            throw ArgumentError(msg);
        }

        TimeOrderedTrace trace;
        LiveState live;
        for (int ni : scenario.time_order()) {
            if (rng) resample(scenario.nodes[static_cast<std::size_t>(ni)], live);
            trace.steps.push_back(process(ni, live));
            trace.joint_outcome_probability *= trace.steps.back().born_prob;
        }
        trace.scenario = scenario;
        return trace;
    }

private:
    TraceStep process(int node_index, LiveState& live) {
        const InteractionNode& node = scenario.nodes[static_cast<std::size_t>(node_index)];
        for (const auto& id : node.participants) live.ensure(id);
        const int n = live.count();
        std::vector<int> slots;
        for (const auto& id : node.participants) slots.push_back(live.slot(id));

        TraceStep step;
        step.node_index = node_index;
        const StateVec pre = *live.state;
        const NodeOp op = build_node_op(node, live);
        const Operator full(op.full);

        step.op_class = classify(full, Factorization::qubits(n));
        step.ray_invertible = ray_action(full, pre) == RayAction::Identity;
        step.note = op.note;

        const bool is_pair = std::holds_alternative<PreparePairNode>(node.kind);
        if (is_pair) {
            step.effective_li = false;
        } else if (op.projective) {
            // A single-outcome collapse acts invertibly on the ray of the
            // state it actually meets; it breaks no event unless it is
            // non-local across the participants or absorbs them.
            step.effective_li = !op.absorptive && step.op_class.local && step.ray_invertible;
            if (step.effective_li) step.note = "ray-restricted";
        } else {
            step.effective_li = step.op_class.is_li();
        }
        step.terminal = op.absorptive;

        StateVec post(1, Eigen::Vector2cd(1, 0), StateVec::Unnormalized{});
        {
            StateVec raw = apply(full, pre);
            const double w = raw.squared_norm();
            step.born_prob = is_pair ? 1.0 : w;
            if (w <= kZeroProbTol) {
                throw ContradictionError("declared outcome of node '" +
                                         std::string(node_kind_name(node.kind)) + "' at t=" +
                                         std::to_string(node.at.t) + " has zero probability");
            }
            post = raw.normalized();
        }

        // Merge rule: a node that maximally entangles two previously
        // unentangled participants fuses their past events.
        if (!step.effective_li && node.participants.size() == 2) {
            const bool pre_max = !is_pair && max_entangled_pair(pre, slots[0], slots[1]);
            const bool post_max = max_entangled_pair(post, slots[0], slots[1]);
            step.merged_past = post_max && !pre_max;
            step.shared_fresh = post_max && !step.terminal;
        }

        live.state = post;
        if (step.terminal) {
            for (const auto& id : node.participants) live.remove(id);
        }
        step.post_state = live.state;
        step.live_after = live.order;
        return step;
    }

    // Draw this node's outcome from the Born weights of its candidate
    // outcomes and overwrite the declared one.
    void resample(InteractionNode& node, LiveState& live) {
        for (const auto& id : node.participants) live.ensure(id);
        std::vector<double> weights;
        const auto weigh = [&](const NodeKind& kind) {
            InteractionNode probe = node;
            probe.kind = kind;
            const NodeOp op = build_node_op(probe, live);
            return (op.full * live.state->amps()).squaredNorm();
        };
        switch (node.kind.index()) {
            case 1:
                for (int k = 1; k <= 4; ++k) weights.push_back(weigh(BeamSplitterNode{k}));
                break;
            case 2:
                for (int k = 1; k <= 4; ++k) weights.push_back(weigh(MirrorNode{k}));
                break;
            case 3: {
                const double angle = std::get<PolarizerNode>(node.kind).angle;
                weights.push_back(weigh(PolarizerNode{angle, true}));
                weights.push_back(weigh(PolarizerNode{angle, false}));
                break;
            }
            case 4:
                for (int k = 0; k <= 1; ++k) weights.push_back(weigh(DetectorNode{k}));
                break;
            default:
                return;  // nothing to sample
        }
        std::discrete_distribution<int> dist(weights.begin(), weights.end());
        const int pick = dist(*rng);
        switch (node.kind.index()) {
            case 1: node.kind = BeamSplitterNode{pick + 1}; break;
            case 2: node.kind = MirrorNode{pick + 1}; break;
            case 3: node.kind = PolarizerNode{std::get<PolarizerNode>(node.kind).angle, pick == 0}; break;
            case 4: node.kind = DetectorNode{pick}; break;
        }
    }
};

// ---------------------------------------------------------------------------
// event partition

struct UnionFind {
    std::vector<int> parent;

    int make() {
        parent.push_back(static_cast<int>(parent.size()));
        return parent.back();
    }
    int find(int i) {
        while (parent[static_cast<std::size_t>(i)] != i) {
            parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
            i = parent[static_cast<std::size_t>(i)];
        }
        return i;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

struct RawSegment {
    std::string pid;
    InferredEvent a, b;
    int uf_event;
    bool a_closed, b_closed;
};

std::pair<std::int64_t, std::int64_t> vertex_key(const InferredEvent& e) {
    return {std::llround(e.t * 1e9), std::llround(e.x * 1e9)};
}

bool collinear(const RawSegment& s1, const RawSegment& s2) {
    const double v1 = (s1.b.x - s1.a.x) / (s1.b.t - s1.a.t);
    const double v2 = (s2.b.x - s2.a.x) / (s2.b.t - s2.a.t);
    return std::abs(v1 - v2) <= 1e-9;
}

}  // namespace

const char* to_string(BoundaryMode m) {
    switch (m) {
        case BoundaryMode::Closed: return "closed";
        case BoundaryMode::HalfOpen: return "halfopen";
        case BoundaryMode::Open: return "open";
    }
    return "?";
}

BoundaryMode boundary_mode_from_string(const std::string& s) {
    if (s == "closed") return BoundaryMode::Closed;
    if (s == "halfopen") return BoundaryMode::HalfOpen;
    if (s == "open") return BoundaryMode::Open;
    throw LookupError("unknown boundary mode '" + s + "' (closed, halfopen, open)");
}

TimeOrderedTrace simulate(const Scenario& sc) {
    Engine e{sc, nullptr};
    return e.run();
}

Scenario sample_outcomes(const Scenario& sc, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Engine e{sc, &rng};
    e.run();
    return e.scenario;
}

EventPartition build_partition(const TimeOrderedTrace& trace, BoundaryMode mode) {
    const Scenario& sc = trace.scenario;
    UnionFind uf;
    std::vector<RawSegment> raw;

    struct PState {
        InferredEvent last;
        int event = -1;
        bool pending_closed = true;
        bool alive = true;
    };
    std::map<std::string, PState> ps;
    for (const auto& p : sc.particles) {
        ps[p.id] = {p.birth, uf.make(), mode != BoundaryMode::Open, true};
    }

    for (const auto& step : trace.steps) {
        const InteractionNode& node = sc.nodes[static_cast<std::size_t>(step.node_index)];
        std::vector<bool> emitted(node.participants.size(), false);
        for (std::size_t pi = 0; pi < node.participants.size(); ++pi) {
            PState& st = ps.at(node.participants[pi]);
            if (node.at.t > st.last.t) {
                const bool closing = !step.effective_li;
                raw.push_back({node.participants[pi], st.last, node.at, st.event, st.pending_closed,
                               closing ? mode == BoundaryMode::Closed : true});
                st.last = node.at;
                st.pending_closed = false;
                emitted[pi] = true;
            } else {
                st.last = node.at;
            }
        }

        if (step.effective_li) continue;

        if (step.merged_past && node.participants.size() == 2) {
            uf.unite(ps.at(node.participants[0]).event, ps.at(node.participants[1]).event);
        }

        std::optional<int> shared;
        for (std::size_t pi = 0; pi < node.participants.size(); ++pi) {
            PState& st = ps.at(node.participants[pi]);
            if (step.terminal) {
                st.alive = false;
                continue;
            }
            if (step.shared_fresh) {
                if (!shared) shared = uf.make();
                st.event = *shared;
            } else {
                st.event = uf.make();
            }
            // A vertex that ended a previous segment belongs to the ending
            // event under Closed and to this fresh event under HalfOpen; a
            // vertex opening an event with no past (a source) belongs to it
            // unless the mode is Open.
            st.pending_closed = emitted[pi] ? mode == BoundaryMode::HalfOpen
                                            : mode != BoundaryMode::Open;
        }
    }

    // Group by union-find root, coalescing collinear continuations so that an
    // LI vertex on a straight flight leaves no trace.
    std::map<int, std::vector<RawSegment>> by_root;
    for (auto& s : raw) {
        s.uf_event = uf.find(s.uf_event);
        by_root[s.uf_event].push_back(s);
    }

    std::vector<EventData> events;
    for (auto& [root, segs] : by_root) {
        std::map<std::string, std::vector<RawSegment>> per_pid;
        for (const auto& s : segs) per_pid[s.pid].push_back(s);
        EventData ev;
        for (auto& [pid, list] : per_pid) {
            std::sort(list.begin(), list.end(),
                      [](const RawSegment& a, const RawSegment& b) { return a.a.t < b.a.t; });
            std::vector<RawSegment> merged;
            for (const auto& s : list) {
                if (!merged.empty() && vertex_key(merged.back().b) == vertex_key(s.a) &&
                    collinear(merged.back(), s)) {
                    merged.back().b = s.b;
                    merged.back().b_closed = s.b_closed;
                } else {
                    merged.push_back(s);
                }
            }
            for (const auto& s : merged) {
                ev.segments.push_back({s.pid, s.a, s.b, s.a_closed, s.b_closed});
            }
        }
        if (!ev.segments.empty()) events.push_back(std::move(ev));
    }

    std::sort(events.begin(), events.end(), [](const EventData& a, const EventData& b) {
        const auto key = [](const EventData& e) {
            double t = e.segments.front().start.t;
            std::string pid = e.segments.front().particle_id;
            for (const auto& s : e.segments) {
                if (s.start.t < t) t = s.start.t;
                if (s.particle_id < pid) pid = s.particle_id;
            }
            return std::pair(t, pid);
        };
        return key(a) < key(b);
    });

    EventPartition part;
    part.boundary_mode = mode;
    for (std::size_t i = 0; i < events.size(); ++i) {
        events[i].id = static_cast<int>(i);
        std::sort(events[i].segments.begin(), events[i].segments.end(),
                  [](const WorldlineSegment& a, const WorldlineSegment& b) {
                      return std::tie(a.start.t, a.particle_id, a.start.x) <
                             std::tie(b.start.t, b.particle_id, b.start.x);
                  });
        events[i].shape = shape_signature(events[i].segments);
        part.events.push_back(std::move(events[i]));
    }
    return part;
}

ShapeSignature shape_signature(const std::vector<WorldlineSegment>& segments) {
    if (segments.empty()) throw ArgumentError("shape of an empty segment set");

    using Key = std::pair<std::int64_t, std::int64_t>;
    std::map<Key, int> vid;
    std::map<Key, double> vtime;
    std::vector<std::vector<int>> adj;
    const auto vertex = [&](const InferredEvent& e) {
        const Key k = vertex_key(e);
        auto it = vid.find(k);
        if (it == vid.end()) {
            it = vid.emplace(k, static_cast<int>(adj.size())).first;
            adj.emplace_back();
            vtime[k] = e.t;
        }
        return it->second;
    };
    std::vector<double> times;
    for (const auto& s : segments) {
        const int a = vertex(s.start);
        const int b = vertex(s.end);
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    times.resize(adj.size());
    for (const auto& [k, id] : vid) times[static_cast<std::size_t>(id)] = vtime[k];

    // connectivity
    std::vector<bool> seen(adj.size(), false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                stack.push_back(w);
            }
        }
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
        throw ArgumentError("segments do not form a connected event");
    }

    ShapeSignature sig;
    sig.n_segments = static_cast<int>(segments.size());
    std::vector<int> leaves;
    for (std::size_t v = 0; v < adj.size(); ++v) {
        if (adj[v].size() == 1) {
            ++sig.n_leaves;
            leaves.push_back(static_cast<int>(v));
        } else {
            ++sig.n_branch_vertices;
        }
    }

    const auto t_of = [&](int v) { return times[static_cast<std::size_t>(v)]; };
    if (sig.n_segments == 1) {
        sig.canonical_name = "I";
    } else if (sig.n_segments == 2 && sig.n_leaves == 2 && sig.n_branch_vertices == 1) {
        int mid = -1;
        for (std::size_t v = 0; v < adj.size(); ++v) {
            if (adj[v].size() == 2) mid = static_cast<int>(v);
        }
        if (t_of(mid) < std::min(t_of(leaves[0]), t_of(leaves[1]))) {
            sig.canonical_name = "V";
        } else if (t_of(mid) > std::max(t_of(leaves[0]), t_of(leaves[1]))) {
            sig.canonical_name = "Lambda";
        }
    } else if (sig.n_segments == 4 && sig.n_leaves == 2 && sig.n_branch_vertices == 3) {
        // Walk the path and test for the letter's up-down-up-down-up profile.
        std::vector<int> path{leaves[0]};
        int prev = -1;
        while (path.size() < adj.size()) {
            const int cur = path.back();
            for (int w : adj[static_cast<std::size_t>(cur)]) {
                if (w != prev) {
                    prev = cur;
                    path.push_back(w);
                    break;
                }
            }
        }
        if (path.size() == 5) {
            const double t0 = t_of(path[0]), t1 = t_of(path[1]), t2 = t_of(path[2]),
                         t3 = t_of(path[3]), t4 = t_of(path[4]);
            if (t1 < t0 && t1 < t2 && t3 < t2 && t3 < t4) sig.canonical_name = "W";
        }
    }
    return sig;
}

std::multimap<std::string, std::pair<double, double>> event_membership(const EventData& ev) {
    std::multimap<std::string, std::pair<double, double>> out;
    for (const auto& s : ev.segments) out.emplace(s.particle_id, std::pair(s.start.t, s.end.t));
    return out;
}

namespace {

// Per-event sets of (particle, interval ordinal); ordinals ignore times so
// the signature survives re-timing.
std::multiset<std::set<std::pair<std::string, int>>> membership_signature(const EventPartition& p) {
    std::map<std::string, std::vector<std::pair<double, int>>> per;
    for (const auto& ev : p.events) {
        for (const auto& s : ev.segments) per[s.particle_id].push_back({s.start.t, ev.id});
    }
    std::map<int, std::set<std::pair<std::string, int>>> by_event;
    for (auto& [pid, list] : per) {
        std::sort(list.begin(), list.end());
        for (std::size_t i = 0; i < list.size(); ++i) {
            by_event[list[i].second].insert({pid, static_cast<int>(i)});
        }
    }
    std::multiset<std::set<std::pair<std::string, int>>> sig;
    for (auto& [id, s] : by_event) sig.insert(std::move(s));
    return sig;
}

std::multiset<std::string> shape_names(const EventPartition& p) {
    std::multiset<std::string> out;
    for (const auto& ev : p.events) {
        out.insert(ev.shape.canonical_name.value_or(
            std::to_string(ev.shape.n_segments) + "/" + std::to_string(ev.shape.n_leaves) + "/" +
            std::to_string(ev.shape.n_branch_vertices)));
    }
    return out;
}

// Node signature for comparability: participants and structural kind only.
// Placement and declared outcomes are free (outcomes are replay data, and
// the bs/mirror choice is exactly the delayed choice being compared).
std::multiset<std::string> node_signature(const Scenario& sc) {
    std::multiset<std::string> out;
    for (const auto& n : sc.nodes) {
        std::vector<std::string> parts = n.participants;
        std::sort(parts.begin(), parts.end());
        std::string s;
        for (const auto& p : parts) s += p + "|";
        if (std::holds_alternative<BeamSplitterNode>(n.kind) ||
            std::holds_alternative<MirrorNode>(n.kind)) {
            s += "pair-measurement";
        } else {
            s += node_kind_name(n.kind);
            if (const auto* pp = std::get_if<PreparePairNode>(&n.kind)) {
                s += std::string("=") + to_string(pp->kind);
            } else if (const auto* pol = std::get_if<PolarizerNode>(&n.kind)) {
                s += "=" + std::to_string(pol->angle);
            }
        }
        out.insert(std::move(s));
    }
    return out;
}

}  // namespace

bool delayed_choice_equivalence(const Scenario& a, const Scenario& b) {
    std::set<std::string> ids_a, ids_b;
    for (const auto& p : a.particles) ids_a.insert(p.id);
    for (const auto& p : b.particles) ids_b.insert(p.id);
    if (ids_a != ids_b) throw ArgumentError("scenarios have different particles");
    if (node_signature(a) != node_signature(b)) {
        throw ArgumentError("scenarios differ beyond the pair measurement and node placement");
    }

    const TimeOrderedTrace ta = simulate(a);
    const TimeOrderedTrace tb = simulate(b);
    const EventPartition pa = build_partition(ta, BoundaryMode::Closed);
    const EventPartition pb = build_partition(tb, BoundaryMode::Closed);

    if (pa.events.size() != pb.events.size()) return false;
    if (shape_names(pa) != shape_names(pb)) return false;
    if (membership_signature(pa) != membership_signature(pb)) return false;
    return std::abs(ta.joint_outcome_probability - tb.joint_outcome_probability) <= 1e-9;
}

CollapsedSupport collapsed_support(const Scenario& sc, double t_c, BoundaryMode mode) {
    if (sc.particles.size() != 1) {
        throw ArgumentError("collapsed_support expects a single-particle scenario");
    }
    const TimeOrderedTrace trace = simulate(sc);
    const EventPartition part = build_partition(trace, mode);
    if (part.events.empty()) throw ArgumentError("scenario produced no worldline segments");
    const EventData& ev = part.events.front();

    double t0 = ev.segments.front().start.t, t1 = ev.segments.front().end.t;
    for (const auto& s : ev.segments) {
        t0 = std::min(t0, s.start.t);
        t1 = std::max(t1, s.end.t);
    }
    if (t_c < t0 || t_c > t1) throw ArgumentError("collapse time outside the state's support");

    bool inside = false;
    switch (mode) {
        case BoundaryMode::Closed: inside = true; break;
        case BoundaryMode::HalfOpen: inside = t_c < t1; break;
        case BoundaryMode::Open: inside = t_c > t0 && t_c < t1; break;
    }

    CollapsedSupport out;
    out.collapse_point = {t_c, sc.position_at(sc.particles.front().id, t_c)};
    out.whole_support = inside;
    if (inside) out.segments = ev.segments;
    return out;
}

}  // namespace qst

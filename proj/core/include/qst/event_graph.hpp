#pragma once

#include <map>
#include <optional>

#include "qst/opclass.hpp"
#include "qst/scenario.hpp"

namespace qst {

/// Does a spacetime event, as a set of inferred-time intervals, contain its
/// endpoints? The model leaves this open, so callers must always choose.
enum class BoundaryMode { Closed, HalfOpen, Open };

const char* to_string(BoundaryMode m);
BoundaryMode boundary_mode_from_string(const std::string& s);

/// Concurrence threshold for "maximally entangled".
inline constexpr double kMergeTol = 1e-9;

/// Straight worldline piece assigned to exactly one event. The closed flags
/// say whether each endpoint belongs to the segment's event under the
/// partition's boundary mode.
struct WorldlineSegment {
    std::string particle_id;
    InferredEvent start;
    InferredEvent end;
    bool start_closed = true;
    bool end_closed = false;
};

/// One simulated interaction. `op_class` is the full-matrix classification;
/// `ray_invertible` is the classification of the map induced on the ray of
/// the pre-measurement state, which is what single-outcome pass-through
/// collapses are judged by. `effective_li` is the verdict the partition
/// rules use.
struct TraceStep {
    int node_index = 0;
    OpClass op_class;
    bool ray_invertible = false;
    bool effective_li = false;
    bool merged_past = false;   // this node fused its participants' past events
    bool shared_fresh = false;  // participants continue inside one new event
    bool terminal = false;      // participants are absorbed here
    double born_prob = 1.0;
    std::string note;  // "preparation", "ray-restricted", "absorption", or empty
    std::optional<StateVec> post_state;
    std::vector<std::string> live_after;  // slot order of post_state
};

struct TimeOrderedTrace {
    Scenario scenario;
    std::vector<TraceStep> steps;
    double joint_outcome_probability = 1.0;
};

/// Run the scenario: process nodes in time order, maintain the global state
/// of all live particles, classify each node's operator with one qubit
/// factor per live particle, and record outcome probabilities. Outcomes are
/// the scenario's declared ones; a zero-probability declaration throws
/// ContradictionError.
TimeOrderedTrace simulate(const Scenario& sc);

/// Replace declared measurement outcomes by draws from the Born
/// distribution, using the given seed. Deterministic per seed.
Scenario sample_outcomes(const Scenario& sc, std::uint64_t seed);

struct ShapeSignature {
    int n_segments = 0;
    int n_leaves = 0;
    int n_branch_vertices = 0;
    std::optional<std::string> canonical_name;

    bool operator==(const ShapeSignature&) const = default;
};

struct EventData {
    int id = 0;
    std::vector<WorldlineSegment> segments;
    ShapeSignature shape;
};

/// Partition of every worldline segment into spacetime events. Events are
/// connected through shared vertices (merge vertices included).
struct EventPartition {
    BoundaryMode boundary_mode = BoundaryMode::Closed;
    std::vector<EventData> events;
};

/// Apply the event rules to a trace, in time order:
///  - a non-LI node ends the current event of each participant there and
///    starts a fresh one after it;
///  - an LI node leaves events untouched (worldlines just gain a vertex);
///  - a node that maximally entangles two previously unentangled
///    participants fuses their past events into one;
///  - boundary_mode decides which side owns each terminating vertex.
EventPartition build_partition(const TimeOrderedTrace& trace, BoundaryMode mode);

/// Segment/leaf/branch counts plus a canonical letter for the handful of
/// named shapes ("I", "V", "Lambda", "W"). Input must be one connected event.
ShapeSignature shape_signature(const std::vector<WorldlineSegment>& segments);

/// True iff the two scenarios produce isomorphic event partitions (same
/// event count, shapes, and per-particle segment membership up to
/// re-timing) and the same joint outcome probability. The scenarios must
/// agree except for node placement and the choice of pair measurement.
bool delayed_choice_equivalence(const Scenario& a, const Scenario& b);

/// Portion of a single particle's event that is collapsed when the collapse
/// is pinned at inferred time t_c.
struct CollapsedSupport {
    bool whole_support = false;
    std::vector<WorldlineSegment> segments;  // empty when only the point collapses
    InferredEvent collapse_point;
};

CollapsedSupport collapsed_support(const Scenario& sc, double t_c, BoundaryMode mode);

// Internals shared with the report/verify layer.
std::multimap<std::string, std::pair<double, double>> event_membership(const EventData& ev);

}  // namespace qst

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qst/operator.hpp"

namespace qst {

/// Classical Minkowski point in one fixed inertial frame, natural units.
struct InferredEvent {
    double t = 0;
    double x = 0;

    bool operator==(const InferredEvent&) const = default;
};

/// Spatial tolerance for "the particle is at this node".
inline constexpr double kGeoTol = 1e-6;

struct ParticleDecl {
    std::string id;
    InferredEvent birth;
    std::vector<double> velocities;  // one per worldline leg; the last repeats

    bool operator==(const ParticleDecl&) const = default;
};

// Interaction node kinds. Measurement outcomes are scenario data so that
// runs replay deterministically; sampling is a separate, seeded step.
struct PreparePairNode {
    BellKind kind = BellKind::PsiMinus;
    bool operator==(const PreparePairNode&) const = default;
};
struct BeamSplitterNode {
    int outcome = 1;  // 1..4: PhiPlus, PhiMinus, PsiPlus, PsiMinus
    bool operator==(const BeamSplitterNode&) const = default;
};
struct MirrorNode {
    int outcome = 1;  // 1..4: |00>, |01>, |10>, |11> on the pair
    bool operator==(const MirrorNode&) const = default;
};
struct PolarizerNode {
    double angle = 0;
    bool pass = true;  // pass projects onto |pi/2 - angle>, absorb onto |angle>
    bool operator==(const PolarizerNode&) const = default;
};
struct DetectorNode {
    int outcome = 0;  // computational-basis result
    bool operator==(const DetectorNode&) const = default;
};
struct GateNode {
    Eigen::MatrixXcd matrix;  // dimension 2^participants
    bool operator==(const GateNode& o) const { return matrix == o.matrix; }
};

using NodeKind =
    std::variant<PreparePairNode, BeamSplitterNode, MirrorNode, PolarizerNode, DetectorNode, GateNode>;

const char* node_kind_name(const NodeKind& k);

struct InteractionNode {
    InferredEvent at;
    std::vector<std::string> participants;
    NodeKind kind;

    bool operator==(const InteractionNode&) const = default;
};

struct Scenario {
    std::string name;
    std::string description;
    std::vector<ParticleDecl> particles;
    std::vector<InteractionNode> nodes;

    const ParticleDecl* find_particle(const std::string& id) const;
    /// Node indices sorted by (t, declaration order).
    std::vector<int> time_order() const;
    /// Indices of the nodes a particle participates in, time-ordered.
    std::vector<int> nodes_of(const std::string& id) const;
    /// Velocity of the particle's leg ending at its leg_index-th node.
    double leg_velocity(const ParticleDecl& p, int leg_index) const;
    /// Position at time t, walking the piecewise-linear worldline.
    /// Valid from birth until the particle's last node.
    double position_at(const std::string& id, double t) const;

    bool operator==(const Scenario&) const = default;
};

struct ParseError {
    int line = 0;    // 1-based
    int column = 0;  // 1-based
    std::string message;
    std::string expected;
};

struct Violation {
    std::string rule;     // "geometry", "ordering", "arity", ...
    std::string subject;  // particle or node description
    std::string message;
};

/// Parse the scenario text format. Returns the first error with its
/// position; trailing garbage on a line is an error, not a warning.
std::variant<Scenario, ParseError> parse(const std::string& text);

/// Canonical serialization; parse(render(sc)) == sc.
std::string render(const Scenario& sc);

/// Hardcoded scenarios for the standard experiments. Accepts
/// polarizer_chain(n) with an explicit count.
Scenario builtin(const std::string& name);
std::vector<std::string> builtin_names();

/// Empty iff every scenario invariant holds. Violations are data, not errors.
std::vector<Violation> validate(const Scenario& sc);

}  // namespace qst

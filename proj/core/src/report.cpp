#include "qst/report.hpp"

#include <sstream>

#include <json.hpp>

namespace qst {

namespace {

std::string outcome_string(const NodeKind& k) {
    switch (k.index()) {
        case 0: return to_string(std::get<PreparePairNode>(k).kind);
        case 1: {
            static const char* names[] = {"PhiPlus", "PhiMinus", "PsiPlus", "PsiMinus"};
            return names[std::get<BeamSplitterNode>(k).outcome - 1];
        }
        case 2: {
            const int o = std::get<MirrorNode>(k).outcome - 1;
            return std::string(1, static_cast<char>('0' + (o >> 1))) +
                   static_cast<char>('0' + (o & 1));
        }
        case 3: return std::get<PolarizerNode>(k).pass ? "pass" : "absorb";
        case 4: return std::to_string(std::get<DetectorNode>(k).outcome);
        case 5: return "";
    }
    return "";
}

nlohmann::ordered_json shape_json(const ShapeSignature& s) {
    nlohmann::ordered_json j;
    j["segments"] = s.n_segments;
    j["leaves"] = s.n_leaves;
    j["branches"] = s.n_branch_vertices;
    j["name"] = s.canonical_name ? nlohmann::ordered_json(*s.canonical_name)
                                 : nlohmann::ordered_json(nullptr);
    return j;
}

}  // namespace

Report build_report(const TimeOrderedTrace& trace, const EventPartition& partition) {
    Report r;
    r.scenario = trace.scenario.name;
    r.boundary = to_string(partition.boundary_mode);
    r.joint_outcome_probability = trace.joint_outcome_probability;
    for (const auto& step : trace.steps) {
        const InteractionNode& n = trace.scenario.nodes[static_cast<std::size_t>(step.node_index)];
        NodeReport nr;
        nr.t = n.at.t;
        nr.x = n.at.x;
        nr.kind = node_kind_name(n.kind);
        nr.participants = n.participants;
        nr.outcome = outcome_string(n.kind);
        nr.op_class = step.op_class;
        nr.ray_invertible = step.ray_invertible;
        nr.effective_li = step.effective_li;
        nr.note = step.note;
        nr.born_prob = step.born_prob;
        r.nodes.push_back(std::move(nr));
    }
    r.partition = partition;
    return r;
}

std::string report_to_json(const Report& r) {
    nlohmann::ordered_json j;
    j["scenario"] = r.scenario;
    j["boundary"] = r.boundary;
    j["joint_outcome_probability"] = r.joint_outcome_probability;
    j["nodes"] = nlohmann::ordered_json::array();
    for (const auto& n : r.nodes) {
        nlohmann::ordered_json nj;
        nj["t"] = n.t;
        nj["x"] = n.x;
        nj["kind"] = n.kind;
        nj["participants"] = n.participants;
        nj["outcome"] = n.outcome;
        nj["class"] = {{"local", n.op_class.local},
                       {"invertible", n.op_class.invertible},
                       {"zero", n.op_class.zero},
                       {"ray_invertible", n.ray_invertible},
                       {"effective_li", n.effective_li}};
        nj["note"] = n.note;
        nj["born_probability"] = n.born_prob;
        j["nodes"].push_back(std::move(nj));
    }
    j["events"] = nlohmann::ordered_json::array();
    for (const auto& ev : r.partition.events) {
        nlohmann::ordered_json ej;
        ej["id"] = ev.id;
        ej["shape"] = shape_json(ev.shape);
        ej["segments"] = nlohmann::ordered_json::array();
        for (const auto& s : ev.segments) {
            nlohmann::ordered_json sj;
            sj["particle"] = s.particle_id;
            sj["from"] = {s.start.t, s.start.x};
            sj["to"] = {s.end.t, s.end.x};
            sj["start_closed"] = s.start_closed;
            sj["end_closed"] = s.end_closed;
            ej["segments"].push_back(std::move(sj));
        }
        j["events"].push_back(std::move(ej));
    }
    return j.dump(2) + "\n";
}

std::string report_to_text(const Report& r) {
    std::ostringstream os;
    os << "scenario: " << r.scenario << "  (boundary " << r.boundary << ")\n";
    os << "joint outcome probability: " << r.joint_outcome_probability << "\n\nnodes:\n";
    for (const auto& n : r.nodes) {
        os << "  t=" << n.t << " x=" << n.x << "  " << n.kind;
        if (!n.outcome.empty()) os << " -> " << n.outcome;
        os << "  on";
        for (const auto& p : n.participants) os << ' ' << p;
        os << "  [" << (n.effective_li ? "LI" : "non-LI");
        if (!n.note.empty()) os << ", " << n.note;
        os << "]  p=" << n.born_prob << '\n';
    }
    os << "\nevents:\n";
    for (const auto& ev : r.partition.events) {
        os << "  event " << ev.id << "  shape "
           << ev.shape.canonical_name.value_or("(" + std::to_string(ev.shape.n_segments) + " seg, " +
                                               std::to_string(ev.shape.n_leaves) + " leaves)")
           << '\n';
        for (const auto& s : ev.segments) {
            os << "    " << s.particle_id << ": (" << s.start.t << ',' << s.start.x << ") "
               << (s.start_closed ? '[' : '(') << "--" << (s.end_closed ? ']' : ')') << " ("
               << s.end.t << ',' << s.end.x << ")\n";
        }
    }
    return os.str();
}

std::string error_json(const std::string& type, const std::string& message, int line, int column) {
    nlohmann::ordered_json j;
    j["error"]["type"] = type;
    j["error"]["message"] = message;
    if (line > 0) {
        j["error"]["line"] = line;
        j["error"]["column"] = column;
    }
    return j.dump() + "\n";
}

}  // namespace qst

#pragma once

#include "qst/event_graph.hpp"

namespace qst {

struct NodeReport {
    double t = 0;
    double x = 0;
    std::string kind;
    std::vector<std::string> participants;
    std::string outcome;
    OpClass op_class;
    bool ray_invertible = false;
    bool effective_li = false;
    std::string note;
    double born_prob = 1.0;
};

struct Report {
    std::string scenario;
    std::string boundary;
    double joint_outcome_probability = 1.0;
    std::vector<NodeReport> nodes;
    EventPartition partition;
};

Report build_report(const TimeOrderedTrace& trace, const EventPartition& partition);

/// Stable key order, so equal inputs give byte-identical output.
std::string report_to_json(const Report& r);
std::string report_to_text(const Report& r);

/// Exit-code contract of the command line tool: stderr carries one JSON
/// object built here when anything fails.
std::string error_json(const std::string& type, const std::string& message, int line = 0,
                       int column = 0);

}  // namespace qst

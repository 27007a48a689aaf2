#pragma once

#include <string>

#include "qst/event_graph.hpp"

namespace qst {

/// Spacetime diagram: x horizontal, t vertical (up). One stroke color per
/// event id (0 red, 1 blue, then green, orange, purple, brown, cycling),
/// a dotted tick at beam-splitter and mirror nodes, filled dots at
/// absorbing nodes. Output is byte-deterministic for fixed input.
std::string render_svg_string(const EventPartition& partition, const Scenario& sc);

void render_svg(const EventPartition& partition, const Scenario& sc, const std::string& path);

}  // namespace qst

#include <cmath>
#include <numbers>

#include "qst/scenario.hpp"

namespace qst {

namespace {

Scenario bell_pair() {
    Scenario sc;
    sc.name = "bell_pair";
    sc.description = "Bell pair flying apart, detected on both wings";
    sc.particles = {{"a", {0, 0}, {-1}}, {"b", {0, 0}, {1}}};
    sc.nodes = {
        {{0, 0}, {"a", "b"}, PreparePairNode{BellKind::PsiMinus}},
        {{10, -10}, {"a"}, DetectorNode{0}},
        {{10, 10}, {"b"}, DetectorNode{1}},
    };
    return sc;
}

Scenario swap_core(bool mirror, bool delayed) {
    Scenario sc;
    sc.particles = {
        {"p1", {-10, -10}, {-1}},
        {"p2", {-10, -10}, {1, -1}},
        {"p3", {-10, 10}, {-1, 1}},
        {"p4", {-10, 10}, {1}},
    };
    sc.nodes.push_back({{-10, -10}, {"p1", "p2"}, PreparePairNode{BellKind::PsiMinus}});
    sc.nodes.push_back({{-10, 10}, {"p3", "p4"}, PreparePairNode{BellKind::PsiMinus}});
    if (delayed) {
        sc.nodes.push_back({{-5, -15}, {"p1"}, DetectorNode{0}});
        sc.nodes.push_back({{-5, 15}, {"p4"}, DetectorNode{1}});
    }
    if (mirror) {
        sc.nodes.push_back({{0, 0}, {"p2", "p3"}, MirrorNode{2}});  // |01> on the pair
        sc.nodes.push_back({{5, -5}, {"p2"}, DetectorNode{0}});
        sc.nodes.push_back({{5, 5}, {"p3"}, DetectorNode{1}});
        sc.nodes.push_back({{10, -30}, {"p1"}, DetectorNode{1}});
        sc.nodes.push_back({{10, 30}, {"p4"}, DetectorNode{0}});
    } else {
        sc.nodes.push_back({{0, 0}, {"p2", "p3"}, BeamSplitterNode{4}});  // PsiMinus
        sc.nodes.push_back({{5, -5}, {"p2"}, DetectorNode{0}});
        sc.nodes.push_back({{5, 5}, {"p3"}, DetectorNode{1}});
        if (!delayed) {
            sc.nodes.push_back({{10, -30}, {"p1"}, DetectorNode{0}});
            sc.nodes.push_back({{10, 30}, {"p4"}, DetectorNode{1}});
        }
    }
    return sc;
}

Scenario swap_bs() {
    Scenario sc = swap_core(false, false);
    sc.name = "swap_bs";
    sc.description = "entanglement swapping of two Bell pairs via a beam-splitter Bell measurement";
    return sc;
}

Scenario swap_mirror() {
    Scenario sc = swap_core(true, false);
    sc.name = "swap_mirror";
    sc.description = "the four-photon setup with a mirror (separable measurement) instead of the beam splitter";
    return sc;
}

Scenario swap_delayed() {
    Scenario sc = swap_core(false, true);
    sc.name = "swap_delayed";
    sc.description = "delayed-choice entanglement swapping: photons 1 and 4 are detected before the Bell measurement";
    return sc;
}

Scenario pbr_prep(bool minus) {
    Scenario sc;
    sc.name = minus ? "pbr_prep_mm" : "pbr_prep_00";
    sc.description = minus ? "two independent |-> preparations meeting an entangling measurement"
                           : "two independent |0> preparations meeting an entangling measurement";
    sc.particles = {{"A", {-10, -10}, {1, -1}}, {"B", {-10, 10}, {-1, 1}}};
    if (minus) {
        const Eigen::MatrixXcd h = hadamard().matrix();
        sc.nodes.push_back({{-10, -10}, {"A"}, GateNode{h}});
        sc.nodes.push_back({{-10, 10}, {"B"}, GateNode{h}});
    }
    sc.nodes.push_back({{0, 0}, {"A", "B"}, BeamSplitterNode{1}});  // PhiPlus
    sc.nodes.push_back({{5, -5}, {"A"}, DetectorNode{0}});
    sc.nodes.push_back({{5, 5}, {"B"}, DetectorNode{0}});
    return sc;
}

Scenario single_prep_measure() {
    Scenario sc;
    sc.name = "single_prep_measure";
    sc.description = "one particle prepared at t=0, measured at t=1";
    sc.particles = {{"p", {0, 0}, {0}}};
    sc.nodes = {
        {{0, 0}, {"p"}, GateNode{hadamard().matrix()}},
        {{1, 0}, {"p"}, DetectorNode{0}},
    };
    return sc;
}

Scenario polarizer_chain_scenario(int n) {
    if (n < 1) throw ArgumentError("polarizer_chain needs at least one polarizer");
    Scenario sc;
    sc.name = "polarizer_chain";
    sc.description = "a photon passing " + std::to_string(n) + " polarizers, then detected";
    sc.particles = {{"gamma", {0, 0}, {0}}};
    for (int i = 1; i <= n; ++i) {
        const double theta = i * std::numbers::pi / (2.0 * (n + 1));
        sc.nodes.push_back({{static_cast<double>(i), 0}, {"gamma"}, PolarizerNode{theta, true}});
    }
    sc.nodes.push_back({{static_cast<double>(n + 1), 0}, {"gamma"}, DetectorNode{0}});
    return sc;
}

}  // namespace

Scenario builtin(const std::string& name) {
    if (name == "bell_pair") return bell_pair();
    if (name == "swap_bs") return swap_bs();
    if (name == "swap_mirror") return swap_mirror();
    if (name == "swap_delayed") return swap_delayed();
    if (name == "pbr_prep_00") return pbr_prep(false);
    if (name == "pbr_prep_mm") return pbr_prep(true);
    if (name == "single_prep_measure") return single_prep_measure();
    if (name.rfind("polarizer_chain", 0) == 0) {
        int n = 3;
        if (name.size() > 15) {
            if (name[15] != '(' || name.back() != ')') {
                throw LookupError("malformed polarizer_chain name; use polarizer_chain(n)");
            }
            n = std::stoi(name.substr(16, name.size() - 17));
        }
        return polarizer_chain_scenario(n);
    }
    std::string all;
    for (const auto& b : builtin_names()) all += (all.empty() ? "" : ", ") + b;
    throw LookupError("unknown builtin scenario '" + name + "'; valid names: " + all);
}

std::vector<std::string> builtin_names() {
    return {"bell_pair",   "swap_bs",     "swap_mirror",         "swap_delayed",
            "pbr_prep_00", "pbr_prep_mm", "polarizer_chain(n)",  "single_prep_measure"};
}

}  // namespace qst

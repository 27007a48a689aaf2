#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "qst/scenario.hpp"

namespace qst {

namespace {

struct Cursor {
    std::string line;
    int line_no = 1;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& message, const std::string& expected) const {
        throw ParseError{line_no, static_cast<int>(pos) + 1, message, expected};
    }

    void skip_ws() {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos >= line.size();
    }

    char peek() {
        skip_ws();
        return pos < line.size() ? line[pos] : '\0';
    }

    void punct(char c) {
        skip_ws();
        if (pos >= line.size() || line[pos] != c) {
            fail("unexpected " + (pos < line.size() ? "'" + std::string(1, line[pos]) + "'" : "end of line"),
                 std::string("'") + c + "'");
        }
        ++pos;
    }

    std::string ident() {
        skip_ws();
        const std::size_t start = pos;
        while (pos < line.size() && (std::isalnum(static_cast<unsigned char>(line[pos])) ||
                                     line[pos] == '_')) {
            ++pos;
        }
        if (pos == start ||
            std::isdigit(static_cast<unsigned char>(line[start]))) {
            pos = start;
            fail("expected an identifier", "identifier");
        }
        return line.substr(start, pos - start);
    }

    void keyword(const std::string& w) {
        skip_ws();
        const std::size_t start = pos;
        if (ident() != w) {
            pos = start;
            fail("expected '" + w + "'", "'" + w + "'");
        }
    }

    double number() {
        skip_ws();
        const char* begin = line.c_str() + pos;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("expected a number", "number");
        pos += static_cast<std::size_t>(end - begin);
        return v;
    }

    int integer() {
        const double v = number();
        const int i = static_cast<int>(std::llround(v));
        if (v != static_cast<double>(i)) fail("expected an integer", "integer");
        return i;
    }

    std::string quoted() {
        punct('"');
        const std::size_t start = pos;
        while (pos < line.size() && line[pos] != '"') ++pos;
        if (pos >= line.size()) fail("unterminated string", "'\"'");
        std::string s = line.substr(start, pos - start);
        ++pos;
        return s;
    }

    void end_of_line() {
        if (!at_end()) fail("trailing input '" + line.substr(pos) + "'", "end of line");
    }
};

InferredEvent parse_point(Cursor& c) {
    c.punct('(');
    InferredEvent e;
    e.t = c.number();
    c.punct(',');
    e.x = c.number();
    c.punct(')');
    return e;
}

Amplitude parse_entry(Cursor& c) {
    if (c.peek() == '(') {
        c.punct('(');
        const double re = c.number();
        c.punct(',');
        const double im = c.number();
        c.punct(')');
        return {re, im};
    }
    return {c.number(), 0.0};
}

Eigen::MatrixXcd parse_matrix(Cursor& c) {
    c.punct('[');
    std::vector<std::vector<Amplitude>> rows(1);
    while (true) {
        rows.back().push_back(parse_entry(c));
        const char ch = c.peek();
        if (ch == ',') {
            c.punct(',');
        } else if (ch == ';') {
            c.punct(';');
            rows.emplace_back();
        } else {
            c.punct(']');
            break;
        }
    }
    const auto nrows = static_cast<Eigen::Index>(rows.size());
    const auto ncols = static_cast<Eigen::Index>(rows.front().size());
    for (const auto& row : rows) {
        if (static_cast<Eigen::Index>(row.size()) != ncols) {
            c.fail("matrix rows have different lengths", "rectangular matrix");
        }
    }
    Eigen::MatrixXcd m(nrows, ncols);
    for (Eigen::Index i = 0; i < nrows; ++i) {
        for (Eigen::Index j = 0; j < ncols; ++j) {
            m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }
    return m;
}

struct Params {
    std::optional<std::string> kind;
    std::optional<int> outcome_int;
    std::optional<std::string> outcome_word;
    std::optional<double> angle;
    std::optional<Eigen::MatrixXcd> matrix;
};

Params parse_params(Cursor& c, const char* node_kind) {
    Params p;
    while (!c.at_end()) {
        const std::string key = c.ident();
        c.punct('=');
        if (key == "kind") {
            p.kind = c.ident();
        } else if (key == "outcome") {
            if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
                p.outcome_int = c.integer();
            } else {
                p.outcome_word = c.ident();
            }
        } else if (key == "angle") {
            p.angle = c.number();
        } else if (key == "matrix") {
            p.matrix = parse_matrix(c);
        } else {
            c.fail("unknown parameter '" + key + "' for node kind '" + node_kind + "'",
                   "kind/outcome/angle/matrix");
        }
    }
    return p;
}

NodeKind parse_node_kind(Cursor& c, const std::string& word) {
    if (word == "pair") {
        Params p = parse_params(c, "pair");
        PreparePairNode n;
        if (!p.kind) c.fail("pair node needs kind=<BellState>", "kind=");
        try {
            n.kind = bell_kind_from_string(*p.kind);
        } catch (const LookupError& e) {
            c.fail(e.what(), "PhiPlus/PhiMinus/PsiPlus/PsiMinus");
        }
        return n;
    }
    if (word == "bs") {
        Params p = parse_params(c, "bs");
        BeamSplitterNode n;
        n.outcome = p.outcome_int.value_or(1);
        return n;
    }
    if (word == "mirror") {
        Params p = parse_params(c, "mirror");
        MirrorNode n;
        n.outcome = p.outcome_int.value_or(1);
        return n;
    }
    if (word == "polarizer") {
        Params p = parse_params(c, "polarizer");
        PolarizerNode n;
        n.angle = p.angle.value_or(0.0);
        const std::string w = p.outcome_word.value_or("pass");
        if (w != "pass" && w != "absorb") c.fail("polarizer outcome must be pass or absorb", "pass/absorb");
        n.pass = w == "pass";
        return n;
    }
    if (word == "detector") {
        Params p = parse_params(c, "detector");
        DetectorNode n;
        n.outcome = p.outcome_int.value_or(0);
        return n;
    }
    if (word == "gate") {
        Params p = parse_params(c, "gate");
        if (!p.matrix) c.fail("gate node needs matrix=[...]", "matrix=");
        return GateNode{*p.matrix};
    }
    c.fail("unknown node kind '" + word + "'", "pair/bs/mirror/polarizer/detector/gate");
}

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void render_entry(std::ostringstream& os, const Amplitude& a) {
    if (a.imag() == 0.0) {
        os << format_number(a.real());
    } else {
        os << '(' << format_number(a.real()) << ',' << format_number(a.imag()) << ')';
    }
}

}  // namespace

std::variant<Scenario, ParseError> parse(const std::string& text) {
    Scenario sc;
    bool any_decl = false;

    try {
        std::istringstream in(text);
        std::string raw;
        int line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
            Cursor c{raw, line_no, 0};
            if (c.at_end()) continue;

            const std::string head = c.ident();
            if (head == "scenario") {
                sc.name = c.ident();
            } else if (head == "desc") {
                sc.description = c.quoted();
            } else if (head == "particle") {
                ParticleDecl p;
                p.id = c.ident();
                c.keyword("at");
                p.birth = parse_point(c);
                c.keyword("vel");
                p.velocities.push_back(c.number());
                while (!c.at_end() && c.peek() == 'v') {
                    c.keyword("vel");
                    p.velocities.push_back(c.number());
                }
                for (double v : p.velocities) {
                    if (std::abs(v) > 1.0) c.fail("speed exceeds lightspeed (natural units)", "|v| <= 1");
                }
                sc.particles.push_back(std::move(p));
            } else if (head == "node") {
                InteractionNode n;
                const std::string kind_word = c.ident();
                c.keyword("at");
                n.at = parse_point(c);
                c.keyword("on");
                n.participants.push_back(c.ident());
                while (c.peek() == ',') {
                    c.punct(',');
                    n.participants.push_back(c.ident());
                }
                for (const auto& id : n.participants) {
                    bool known = false;
                    for (const auto& p : sc.particles) known = known || p.id == id;
                    if (!known) c.fail("participant '" + id + "' is not a declared particle", "declared particle id");
                }
                n.kind = parse_node_kind(c, kind_word);
                sc.nodes.push_back(std::move(n));
            } else {
                c.fail("unknown declaration '" + head + "'", "scenario/desc/particle/node");
            }
            c.end_of_line();
            any_decl = true;
        }
        if (!any_decl) {
            return ParseError{1, 1, "empty scenario: no declarations", "particle or node declaration"};
        }
    } catch (const ParseError& e) {
        return e;
    }
    return sc;
}

std::string render(const Scenario& sc) {
    std::ostringstream os;
    if (!sc.name.empty()) os << "scenario " << sc.name << '\n';
    if (!sc.description.empty()) os << "desc \"" << sc.description << "\"\n";
    for (const auto& p : sc.particles) {
        os << "particle " << p.id << " at (" << format_number(p.birth.t) << ','
           << format_number(p.birth.x) << ')';
        for (double v : p.velocities) os << " vel " << format_number(v);
        os << '\n';
    }
    for (const auto& n : sc.nodes) {
        os << "node " << node_kind_name(n.kind) << " at (" << format_number(n.at.t) << ','
           << format_number(n.at.x) << ") on ";
        for (std::size_t i = 0; i < n.participants.size(); ++i) {
            if (i) os << ',';
            os << n.participants[i];
        }
        switch (n.kind.index()) {
            case 0:
                os << " kind=" << to_string(std::get<PreparePairNode>(n.kind).kind);
                break;
            case 1:
                os << " outcome=" << std::get<BeamSplitterNode>(n.kind).outcome;
                break;
            case 2:
                os << " outcome=" << std::get<MirrorNode>(n.kind).outcome;
                break;
            case 3: {
                const auto& p = std::get<PolarizerNode>(n.kind);
                os << " angle=" << format_number(p.angle) << " outcome=" << (p.pass ? "pass" : "absorb");
                break;
            }
            case 4:
                os << " outcome=" << std::get<DetectorNode>(n.kind).outcome;
                break;
            case 5: {
                const auto& m = std::get<GateNode>(n.kind).matrix;
                os << " matrix=[";
                for (Eigen::Index i = 0; i < m.rows(); ++i) {
                    if (i) os << ';';
                    for (Eigen::Index j = 0; j < m.cols(); ++j) {
                        if (j) os << ',';
                        render_entry(os, m(i, j));
                    }
                }
                os << ']';
                break;
            }
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace qst

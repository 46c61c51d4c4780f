#include "wcount/quantum.hpp"

#include <map>
#include <sstream>

namespace wcount {

std::string_view to_string(GateKind kind)
{
    switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::S: return "S";
    case GateKind::T: return "T";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
    case GateKind::Measure: return "MEASURE";
    }
    return "?";
}

RingMatrix gate_matrix(GateKind kind)
{
    const RingAmplitude o = RingAmplitude::zero();
    const RingAmplitude l = RingAmplitude::one();
    const RingAmplitude i = RingAmplitude::i();
    const RingAmplitude h = RingAmplitude::inv_sqrt2();
    switch (kind) {
    case GateKind::H: return {{h, h}, {h, -h}};
    case GateKind::X: return {{o, l}, {l, o}};
    case GateKind::Y: return {{o, -i}, {i, o}};
    case GateKind::Z: return {{l, o}, {o, -l}};
    case GateKind::S: return {{l, o}, {o, i}};
    case GateKind::T: return {{l, o}, {o, RingAmplitude::omega()}};
    case GateKind::CNOT: return {{l, o, o, o}, {o, l, o, o}, {o, o, o, l}, {o, o, l, o}};
    case GateKind::CZ: return {{l, o, o, o}, {o, l, o, o}, {o, o, l, o}, {o, o, o, -l}};
    case GateKind::Measure: break;
    }
    throw std::invalid_argument("measurement has no unitary matrix");
}

void Circuit::validate() const
{
    if (n_qubits == 0) {
        throw InvariantViolation("circuit needs at least one qubit");
    }
    for (const Gate& g : ops) {
        const std::size_t arity = (g.kind == GateKind::CNOT || g.kind == GateKind::CZ) ? 2 : 1;
        if (g.qubits.size() != arity) {
            throw InvariantViolation(std::string(to_string(g.kind)) + " needs " +
                                     std::to_string(arity) + " qubit(s)");
        }
        for (std::size_t q : g.qubits) {
            if (q >= n_qubits) {
                throw InvariantViolation("qubit index " + std::to_string(q) + " out of range");
            }
        }
        if (arity == 2 && g.qubits[0] == g.qubits[1]) {
            throw InvariantViolation(std::string(to_string(g.kind)) + " on a single qubit");
        }
    }
    if (accept.empty()) {
        throw InvariantViolation("circuit needs at least one accept constraint");
    }
    for (const auto& [q, bit] : accept) {
        if (q >= n_qubits || (bit != 0 && bit != 1)) {
            throw InvariantViolation("bad accept constraint on qubit " + std::to_string(q));
        }
    }
}

std::size_t Circuit::branching_gates() const
{
    std::size_t h = 0;
    for (const Gate& g : ops) {
        h += g.kind == GateKind::H ? 1 : 0;
    }
    return h;
}

std::size_t Circuit::measurements() const
{
    std::size_t m = 0;
    for (const Gate& g : ops) {
        m += g.kind == GateKind::Measure ? 1 : 0;
    }
    return m;
}

void Circuit::add_tdg(std::size_t q)
{
    ops.push_back(Gate::single(GateKind::Z, q));
    ops.push_back(Gate::single(GateKind::S, q));
    ops.push_back(Gate::single(GateKind::T, q));
}

void Circuit::add_toffoli(std::size_t a, std::size_t b, std::size_t t)
{
    ops.push_back(Gate::single(GateKind::H, t));
    ops.push_back(Gate::cnot(b, t));
    add_tdg(t);
    ops.push_back(Gate::cnot(a, t));
    ops.push_back(Gate::single(GateKind::T, t));
    ops.push_back(Gate::cnot(b, t));
    add_tdg(t);
    ops.push_back(Gate::cnot(a, t));
    ops.push_back(Gate::single(GateKind::T, b));
    ops.push_back(Gate::single(GateKind::T, t));
    ops.push_back(Gate::single(GateKind::H, t));
    ops.push_back(Gate::cnot(a, b));
    ops.push_back(Gate::single(GateKind::T, a));
    add_tdg(b);
    ops.push_back(Gate::cnot(a, b));
}

Circuit Circuit::parse(const std::string& text)
{
    static const std::map<std::string, GateKind> kinds = {
        {"H", GateKind::H},   {"X", GateKind::X},       {"Y", GateKind::Y},
        {"Z", GateKind::Z},   {"S", GateKind::S},       {"T", GateKind::T},
        {"CNOT", GateKind::CNOT}, {"CZ", GateKind::CZ}, {"MEASURE", GateKind::Measure},
    };
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    int stage = 0;  // 0: magic, 1: qubit count, 2: ops, 3: after ACCEPT
    Circuit c;
    auto index = [&](const std::string& tok) -> std::size_t {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(tok, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != tok.size() || tok.empty() || tok[0] == '-') {
            throw ParseError(line_no, "bad qubit index '" + tok + "'");
        }
        if (v >= c.n_qubits) {
            throw ParseError(line_no, "qubit index " + tok + " out of range");
        }
        return v;
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) {
            tok.push_back(t);
        }
        if (tok.empty()) {
            continue;
        }
        if (stage == 0) {
            if (tok.size() != 1 || tok[0] != "WCQC") {
                throw ParseError(line_no, "expected 'WCQC'");
            }
            stage = 1;
            continue;
        }
        if (stage == 1) {
            std::size_t pos = 0;
            try {
                c.n_qubits = std::stoul(tok[0], &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (tok.size() != 1 || pos != tok[0].size() || c.n_qubits == 0 || tok[0][0] == '-') {
                throw ParseError(line_no, "expected a positive qubit count");
            }
            stage = 2;
            continue;
        }
        if (stage == 3) {
            throw ParseError(line_no, "content after ACCEPT");
        }
        if (tok[0] == "ACCEPT") {
            if (tok.size() < 2) {
                throw ParseError(line_no, "ACCEPT needs at least one q=b constraint");
            }
            for (std::size_t i = 1; i < tok.size(); ++i) {
                const auto eq = tok[i].find('=');
                if (eq == std::string::npos) {
                    throw ParseError(line_no, "expected q=b, got '" + tok[i] + "'");
                }
                const std::string bit = tok[i].substr(eq + 1);
                if (bit != "0" && bit != "1") {
                    throw ParseError(line_no, "accept bit must be 0 or 1");
                }
                c.accept.emplace_back(index(tok[i].substr(0, eq)), bit == "1" ? 1 : 0);
            }
            stage = 3;
            continue;
        }
        auto kind = kinds.find(tok[0]);
        if (kind == kinds.end()) {
            throw ParseError(line_no, "unknown operation '" + tok[0] + "'");
        }
        const bool two = kind->second == GateKind::CNOT || kind->second == GateKind::CZ;
        if (tok.size() != (two ? 3U : 2U)) {
            throw ParseError(line_no, tok[0] + " takes " + (two ? "two qubits" : "one qubit"));
        }
        Gate g{kind->second, {index(tok[1])}};
        if (two) {
            g.qubits.push_back(index(tok[2]));
            if (g.qubits[0] == g.qubits[1]) {
                throw ParseError(line_no, tok[0] + " needs two distinct qubits");
            }
        }
        c.ops.push_back(std::move(g));
    }
    if (stage != 3) {
        throw ParseError(line_no, stage == 0 ? "missing 'WCQC' header" : "missing ACCEPT line");
    }
    c.validate();
    return c;
}

std::string Circuit::to_text() const
{
    std::ostringstream os;
    os << "WCQC\n" << n_qubits << "\n";
    for (const Gate& g : ops) {
        os << to_string(g.kind);
        for (std::size_t q : g.qubits) {
            os << " " << q;
        }
        os << "\n";
    }
    os << "ACCEPT";
    for (const auto& [q, bit] : accept) {
        os << " " << q << "=" << bit;
    }
    os << "\n";
    return os.str();
}

}  // namespace wcount

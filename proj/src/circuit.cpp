#include "quidd/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <unordered_set>

namespace quidd {

namespace {

struct GateSpec {
    Gate::Kind kind;
    int n_qubits;   // -1: variable-length list (cps)
    bool has_angle;
};

const std::unordered_map<std::string, GateSpec>& gate_table() {
    static const std::unordered_map<std::string, GateSpec> table{
        {"x", {Gate::Kind::X, 1, false}},     {"y", {Gate::Kind::Y, 1, false}},
        {"z", {Gate::Kind::Z, 1, false}},     {"h", {Gate::Kind::H, 1, false}},
        {"ry", {Gate::Kind::RY, 1, true}},    {"rz", {Gate::Kind::RZ, 1, true}},
        {"phase", {Gate::Kind::Phase, 1, true}}, {"cx", {Gate::Kind::CX, 2, false}},
        {"ccx", {Gate::Kind::CCX, 3, false}}, {"cps", {Gate::Kind::CPS, -1, false}},
    };
    return table;
}

std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == '#') break;
        if (std::isspace(static_cast<unsigned char>(ch))) {
            if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

int parse_int(const std::string& tok, int line_no, const char* what) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line_no, std::string("bad ") + what + " '" + tok + "'");
    return v;
}

double parse_angle(const std::string& tok, int line_no) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(line_no, "bad angle '" + tok + "'");
    }
    if (pos != tok.size() || !std::isfinite(v))
        throw ParseError(line_no, "bad angle '" + tok + "'");
    return v;
}

}  // namespace

void Gate::validate(int n_qubits) const {
    std::size_t expected = 0;
    switch (kind) {
        case Kind::X: case Kind::Y: case Kind::Z: case Kind::H:
        case Kind::RY: case Kind::RZ: case Kind::Phase: expected = 1; break;
        case Kind::CX: expected = 2; break;
        case Kind::CCX: expected = 3; break;
        case Kind::CPS: expected = qubits.size(); break;
    }
    if (qubits.empty() || qubits.size() != expected)
        throw std::invalid_argument("gate has a malformed qubit list");
    std::unordered_set<int> seen;
    for (int q : qubits) {
        if (q < 0 || q >= n_qubits)
            throw std::invalid_argument("qubit " + std::to_string(q) + " out of range");
        if (!seen.insert(q).second)
            throw std::invalid_argument("duplicate qubit " + std::to_string(q));
    }
    if (!std::isfinite(theta)) throw std::invalid_argument("non-finite gate angle");
}

void Circuit::validate() const {
    if (n_qubits <= 0) throw std::invalid_argument("circuit has no qubits");
    if (!initial.empty() && static_cast<int>(initial.size()) != n_qubits)
        throw std::invalid_argument("initial bitstring length differs from qubit count");
    for (const Gate& g : gates) g.validate(n_qubits);
}

Circuit parse_circuit(std::string_view text) {
    Circuit c;
    bool have_header = false;
    bool have_gates = false;
    int line_no = 0;

    std::string_view rest = text;
    while (!rest.empty()) {
        const std::size_t nl = rest.find('\n');
        const std::string_view line = rest.substr(0, nl);
        rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
        ++line_no;

        const std::vector<std::string> tok = tokenize(line);
        if (tok.empty()) continue;

        if (tok[0] == "qubits") {
            if (have_header) throw ParseError(line_no, "duplicate qubits directive");
            if (tok.size() != 2) throw ParseError(line_no, "expected: qubits <n>");
            c.n_qubits = parse_int(tok[1], line_no, "qubit count");
            if (c.n_qubits <= 0) throw ParseError(line_no, "qubit count must be positive");
            have_header = true;
            continue;
        }
        if (!have_header)
            throw ParseError(line_no, "circuit must start with 'qubits <n>'");

        if (tok[0] == "init") {
            if (have_gates) throw ParseError(line_no, "init must precede gates");
            if (tok.size() != 2) throw ParseError(line_no, "expected: init <bitstring>");
            if (static_cast<int>(tok[1].size()) != c.n_qubits)
                throw ParseError(line_no, "init bitstring length differs from qubit count");
            c.initial.clear();
            for (char ch : tok[1]) {
                if (ch != '0' && ch != '1')
                    throw ParseError(line_no, "init bitstring must be 0s and 1s");
                c.initial.push_back(ch == '1');
            }
            continue;
        }

        const auto it = gate_table().find(tok[0]);
        if (it == gate_table().end())
            throw ParseError(line_no, "unknown gate '" + tok[0] + "'");
        const GateSpec& spec = it->second;

        Gate g;
        g.kind = spec.kind;
        const std::size_t qubit_args = tok.size() - 1 - (spec.has_angle ? 1 : 0);
        if (spec.n_qubits >= 0 && qubit_args != static_cast<std::size_t>(spec.n_qubits))
            throw ParseError(line_no, "gate '" + tok[0] + "' expects " +
                                          std::to_string(spec.n_qubits) + " qubit(s)");
        if (spec.n_qubits < 0 && qubit_args == 0)
            throw ParseError(line_no, "gate 'cps' expects at least one qubit");
        for (std::size_t i = 1; i <= qubit_args; ++i) {
            const int q = parse_int(tok[i], line_no, "qubit index");
            if (q < 0 || q >= c.n_qubits)
                throw ParseError(line_no, "qubit " + std::to_string(q) + " out of range");
            g.qubits.push_back(q);
        }
        if (spec.has_angle) g.theta = parse_angle(tok.back(), line_no);

        try {
            g.validate(c.n_qubits);
        } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, e.what());
        }
        c.gates.push_back(std::move(g));
        have_gates = true;
    }

    if (!have_header) throw ParseError(line_no == 0 ? 1 : line_no, "empty circuit file");
    return c;
}

std::string format_circuit(const Circuit& c) {
    std::ostringstream os;
    os.precision(17);
    os << "qubits " << c.n_qubits << '\n';
    if (!c.initial.empty()) {
        os << "init ";
        for (bool b : c.initial) os << (b ? '1' : '0');
        os << '\n';
    }
    for (const Gate& g : c.gates) {
        switch (g.kind) {
            case Gate::Kind::X: os << "x"; break;
            case Gate::Kind::Y: os << "y"; break;
            case Gate::Kind::Z: os << "z"; break;
            case Gate::Kind::H: os << "h"; break;
            case Gate::Kind::RY: os << "ry"; break;
            case Gate::Kind::RZ: os << "rz"; break;
            case Gate::Kind::Phase: os << "phase"; break;
            case Gate::Kind::CX: os << "cx"; break;
            case Gate::Kind::CCX: os << "ccx"; break;
            case Gate::Kind::CPS: os << "cps"; break;
        }
        for (int q : g.qubits) os << ' ' << q;
        switch (g.kind) {
            case Gate::Kind::RY: case Gate::Kind::RZ: case Gate::Kind::Phase:
                os << ' ' << g.theta;
                break;
            default: break;
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace quidd

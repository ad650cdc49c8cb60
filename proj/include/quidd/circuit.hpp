#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "quidd/dd.hpp"

namespace quidd {

struct ParseError : Error {
    ParseError(int line_no, const std::string& msg)
        : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
    int line;
};

/// One gate of the circuit IR. Qubit lists hold controls before targets:
/// CX {control, target}, CCX {control, control, target}. CPS acts on its
/// whole list as 2|0...0><0...0| - I.
struct Gate {
    enum class Kind { X, Y, Z, H, RY, RZ, Phase, CX, CCX, CPS };

    Kind kind = Kind::X;
    std::vector<int> qubits;
    double theta = 0.0;  // RY / RZ / Phase only; radians

    static Gate x(int q) { return {Kind::X, {q}, 0.0}; }
    static Gate y(int q) { return {Kind::Y, {q}, 0.0}; }
    static Gate z(int q) { return {Kind::Z, {q}, 0.0}; }
    static Gate h(int q) { return {Kind::H, {q}, 0.0}; }
    static Gate ry(int q, double theta) { return {Kind::RY, {q}, theta}; }
    /// rz(theta) = exp(-i*theta*Z) = diag(exp(-i*theta), exp(i*theta))
    static Gate rz(int q, double theta) { return {Kind::RZ, {q}, theta}; }
    static Gate phase(int q, double theta) { return {Kind::Phase, {q}, theta}; }
    static Gate cx(int c, int t) { return {Kind::CX, {c, t}, 0.0}; }
    static Gate ccx(int c1, int c2, int t) { return {Kind::CCX, {c1, c2, t}, 0.0}; }
    static Gate cps(std::vector<int> qs) { return {Kind::CPS, std::move(qs), 0.0}; }

    /// Throws std::invalid_argument on out-of-range or duplicate qubits,
    /// non-finite angles, or a malformed qubit list for the kind.
    void validate(int n_qubits) const;
};

struct Circuit {
    int n_qubits = 0;
    std::vector<bool> initial;  // basis bitstring, qubit 0 first; empty = all zero
    std::vector<Gate> gates;

    explicit Circuit(int n = 0) : n_qubits(n) {}

    Circuit& add(Gate g) {
        gates.push_back(std::move(g));
        return *this;
    }

    void validate() const;
    [[nodiscard]] bool initial_bit(int q) const {
        return !initial.empty() && initial[static_cast<std::size_t>(q)];
    }
};

/// Parses the line-oriented circuit text format:
///   qubits <n>
///   init <bitstring>            (optional)
///   x|y|z|h <q>
///   ry|rz|phase <q> <theta>
///   cx <c> <t>
///   ccx <c1> <c2> <t>
///   cps <q1> ... <qk>
/// '#' starts a comment. Angles are radians in decimal.
Circuit parse_circuit(std::string_view text);

std::string format_circuit(const Circuit& c);

}  // namespace quidd

#include "quidd/serialize.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace quidd {

namespace {

void collect(const DDManager& m, NodeRef r, std::unordered_map<NodeRef, int>& seen,
             std::vector<NodeRef>& terminals, std::vector<NodeRef>& internals) {
    if (seen.contains(r)) return;
    seen.emplace(r, -1);
    if (m.is_terminal(r)) {
        terminals.push_back(r);
        return;
    }
    collect(m, m.then_child(r), seen, terminals, internals);
    collect(m, m.else_child(r), seen, terminals, internals);
    internals.push_back(r);  // post-order: children precede parents
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_dd(std::ostream& os, const QuIDD& q) {
    const DDManager& m = q.manager();
    std::unordered_map<NodeRef, int> id;
    std::vector<NodeRef> terminals, internals;
    collect(m, q.root, id, terminals, internals);

    int next = 0;
    for (NodeRef r : terminals) id[r] = next++;
    for (NodeRef r : internals) id[r] = next++;

    os << "quidd v1 kind=" << (q.kind == DDKind::State ? "state" : "operator")
       << " qubits=" << q.n_qubits << " root=" << id[q.root] << '\n';
    for (NodeRef r : terminals) {
        const cplx v = m.value(r);
        os << "T " << id[r] << ' ' << fmt_double(v.real()) << ' ' << fmt_double(v.imag()) << '\n';
    }
    for (NodeRef r : internals) {
        os << "N " << id[r] << ' ' << m.var(r).str() << ' ' << id[m.then_child(r)] << ' '
           << id[m.else_child(r)] << '\n';
    }
}

std::string write_dd_string(const QuIDD& q) {
    std::ostringstream os;
    write_dd(os, q);
    return os.str();
}

QuIDD read_dd(std::istream& is, DDManager& m) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError(1, "empty DD file");

    std::string kind_str;
    int qubits = -1;
    long root_id = -1;
    {
        std::istringstream hs(line);
        std::string magic, version, field;
        hs >> magic >> version;
        if (magic != "quidd" || version != "v1")
            throw ParseError(1, "expected header 'quidd v1 ...'");
        while (hs >> field) {
            const std::size_t eq = field.find('=');
            if (eq == std::string::npos) throw ParseError(1, "malformed header field '" + field + "'");
            const std::string key = field.substr(0, eq), val = field.substr(eq + 1);
            if (key == "kind") kind_str = val;
            else if (key == "qubits") qubits = std::stoi(val);
            else if (key == "root") root_id = std::stol(val);
            else throw ParseError(1, "unknown header field '" + key + "'");
        }
    }
    if (kind_str != "state" && kind_str != "operator")
        throw ParseError(1, "kind must be 'state' or 'operator'");
    if (qubits <= 0) throw ParseError(1, "missing or bad qubits field");
    if (root_id < 0) throw ParseError(1, "missing root field");

    std::vector<NodeRef> by_id;
    const auto lookup = [&](long want, int line_no) {
        if (want < 0 || want >= static_cast<long>(by_id.size()))
            throw ParseError(line_no, "dangling node id " + std::to_string(want));
        return by_id[static_cast<std::size_t>(want)];
    };

    int line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;  // blank line
        long id = -1;
        if (!(ls >> id)) throw ParseError(line_no, "missing node id");
        if (id != static_cast<long>(by_id.size()))
            throw ParseError(line_no, "node ids must be dense and ascending");
        if (tag == "T") {
            double re = 0, im = 0;
            if (!(ls >> re >> im)) throw ParseError(line_no, "malformed terminal line");
            by_id.push_back(m.make_terminal({re, im}));
        } else if (tag == "N") {
            std::string var;
            long t = -1, e = -1;
            if (!(ls >> var >> t >> e)) throw ParseError(line_no, "malformed node line");
            if (var.size() < 2 || (var[0] != 'R' && var[0] != 'C'))
                throw ParseError(line_no, "bad variable '" + var + "'");
            int qubit = 0;
            const auto [p, ec] = std::from_chars(var.data() + 1, var.data() + var.size(), qubit);
            if (ec != std::errc{} || p != var.data() + var.size() || qubit < 0 || qubit >= qubits)
                throw ParseError(line_no, "bad variable '" + var + "'");
            const VarId v = var[0] == 'R' ? VarId::row(qubit) : VarId::col(qubit);
            if (kind_str == "state" && v.kind == VarId::Kind::Col)
                throw ParseError(line_no, "column variable in a state DD");
            try {
                by_id.push_back(m.ite(v, lookup(t, line_no), lookup(e, line_no)));
            } catch (const OrderError& oe) {
                throw ParseError(line_no, oe.what());
            }
        } else {
            throw ParseError(line_no, "unknown record '" + tag + "'");
        }
        std::string extra;
        if (ls >> extra) throw ParseError(line_no, "trailing tokens on line");
    }

    return {lookup(root_id, line_no), qubits,
            kind_str == "state" ? DDKind::State : DDKind::Operator, false, &m};
}

QuIDD read_dd_string(const std::string& text, DDManager& m) {
    std::istringstream is(text);
    return read_dd(is, m);
}

}  // namespace quidd

#include "quidd/dense_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace quidd::dense {

namespace {

using cnum = std::complex<double>;

constexpr double kZeroTol = 1e-9;

bool near_zero(cnum v) { return std::abs(v) <= kZeroTol; }

// applies one gate in place; bit q of the index is (idx >> (n-1-q)) & 1
void apply_gate(cvec& amps, int n, const Gate& g) {
    const auto bit_of = [&](int q) { return 1ull << (n - 1 - q); };
    const std::uint64_t dim = 1ull << n;

    switch (g.kind) {
        case Gate::Kind::CX: {
            const std::uint64_t c = bit_of(g.qubits[0]), t = bit_of(g.qubits[1]);
            for (std::uint64_t i = 0; i < dim; ++i)
                if ((i & c) != 0 && (i & t) == 0) std::swap(amps[i], amps[i | t]);
            return;
        }
        case Gate::Kind::CCX: {
            const std::uint64_t c1 = bit_of(g.qubits[0]), c2 = bit_of(g.qubits[1]),
                                t = bit_of(g.qubits[2]);
            for (std::uint64_t i = 0; i < dim; ++i)
                if ((i & c1) != 0 && (i & c2) != 0 && (i & t) == 0) std::swap(amps[i], amps[i | t]);
            return;
        }
        case Gate::Kind::CPS: {
            // 2|0...0><0...0| - I on the listed qubits
            std::uint64_t mask = 0;
            for (int q : g.qubits) mask |= bit_of(q);
            for (std::uint64_t i = 0; i < dim; ++i)
                if ((i & mask) != 0) amps[i] = -amps[i];
            return;
        }
        default: break;
    }

    // one-qubit gates
    cnum u00, u01, u10, u11;
    const double t = g.theta;
    switch (g.kind) {
        case Gate::Kind::X: u00 = 0; u01 = 1; u10 = 1; u11 = 0; break;
        case Gate::Kind::Y: u00 = 0; u01 = cnum{0, -1}; u10 = cnum{0, 1}; u11 = 0; break;
        case Gate::Kind::Z: u00 = 1; u01 = 0; u10 = 0; u11 = -1; break;
        case Gate::Kind::H: {
            const double s = 1.0 / std::sqrt(2.0);
            u00 = s; u01 = s; u10 = s; u11 = -s;
            break;
        }
        case Gate::Kind::RY:
            u00 = std::cos(t / 2); u01 = -std::sin(t / 2);
            u10 = std::sin(t / 2); u11 = std::cos(t / 2);
            break;
        case Gate::Kind::RZ:
            u00 = std::polar(1.0, -t); u01 = 0; u10 = 0; u11 = std::polar(1.0, t);
            break;
        case Gate::Kind::Phase:
            u00 = 1; u01 = 0; u10 = 0; u11 = std::polar(1.0, t);
            break;
        default: throw std::invalid_argument("apply_gate: unhandled gate kind");
    }
    const std::uint64_t tb = bit_of(g.qubits[0]);
    for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & tb) != 0) continue;
        const cnum a0 = amps[i], a1 = amps[i | tb];
        amps[i] = u00 * a0 + u01 * a1;
        amps[i | tb] = u10 * a0 + u11 * a1;
    }
}

DenseVerdict verdict_not_equivalent() { return {}; }

DenseVerdict equiv_exact(const cvec& a, const cvec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > kZeroTol) return verdict_not_equivalent();
    DenseVerdict v;
    v.equivalent = true;
    return v;
}

DenseVerdict equiv_global(const cvec& a, const cvec& b) {
    // phase from the first non-negligible entry of a, then full verify
    cnum phase{1.0, 0.0};
    bool found = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!near_zero(a[i])) {
            phase = b[i] / a[i];
            found = true;
            break;
        }
    }
    if (!found || std::abs(std::abs(phase) - 1.0) > kZeroTol) return verdict_not_equivalent();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(b[i] - phase * a[i]) > kZeroTol) return verdict_not_equivalent();
    DenseVerdict v;
    v.equivalent = true;
    v.phase = phase;
    return v;
}

DenseVerdict equiv_relative_states(const cvec& a, const cvec& b) {
    cvec phases(a.size(), cnum{1.0, 0.0});
    for (std::size_t i = 0; i < a.size(); ++i) {
        const bool az = near_zero(a[i]), bz = near_zero(b[i]);
        if (az && bz) continue;
        if (az || bz) return verdict_not_equivalent();
        const cnum p = b[i] / a[i];
        if (std::abs(std::abs(p) - 1.0) > kZeroTol) return verdict_not_equivalent();
        phases[i] = p;
    }
    DenseVerdict v;
    v.equivalent = true;
    v.phases = std::move(phases);
    return v;
}

// b = diag(d) * a (left, d indexed by row) or b = a * diag(d) (right)
std::optional<cvec> one_sided_diag(const DenseOperator& a, const DenseOperator& b, bool left) {
    const std::uint64_t dim = 1ull << a.n_qubits;
    cvec d(dim, cnum{1.0, 0.0});
    for (std::uint64_t i = 0; i < dim; ++i) {
        bool found = false;
        for (std::uint64_t j = 0; j < dim; ++j) {
            const cnum av = left ? a.at(i, j) : a.at(j, i);
            const cnum bv = left ? b.at(i, j) : b.at(j, i);
            if (near_zero(av)) {
                if (!near_zero(bv)) return std::nullopt;
                continue;
            }
            if (!found) {
                d[i] = bv / av;
                if (std::abs(std::abs(d[i]) - 1.0) > kZeroTol) return std::nullopt;
                found = true;
            }
            if (std::abs(bv - d[i] * av) > kZeroTol) return std::nullopt;
        }
    }
    return d;
}

void expand_rec(const DDManager& m, NodeRef r, std::uint32_t lvl, std::uint32_t total_levels,
                std::uint64_t idx, cvec& out) {
    if (lvl == total_levels) {
        out[idx] = m.value(r);
        return;
    }
    const std::uint32_t node_lvl = m.level(r);
    if (node_lvl > lvl) {  // variable absent: both assignments see r
        expand_rec(m, r, lvl + 1, total_levels, idx << 1, out);
        expand_rec(m, r, lvl + 1, total_levels, (idx << 1) | 1, out);
        return;
    }
    expand_rec(m, m.else_child(r), lvl + 1, total_levels, idx << 1, out);
    expand_rec(m, m.then_child(r), lvl + 1, total_levels, (idx << 1) | 1, out);
}

}  // namespace

DenseState dense_state(const Circuit& c) {
    c.validate();
    if (c.n_qubits > 12) throw std::invalid_argument("dense_state: capped at 12 qubits");
    DenseState s;
    s.n_qubits = c.n_qubits;
    s.amps.assign(1ull << c.n_qubits, cnum{0.0, 0.0});
    std::uint64_t idx = 0;
    for (int q = 0; q < c.n_qubits; ++q)
        if (c.initial_bit(q)) idx |= 1ull << (c.n_qubits - 1 - q);
    s.amps[idx] = 1.0;
    for (const Gate& g : c.gates) apply_gate(s.amps, c.n_qubits, g);
    return s;
}

DenseOperator dense_operator(const Circuit& c) {
    c.validate();
    if (c.n_qubits > 8) throw std::invalid_argument("dense_operator: capped at 8 qubits");
    const std::uint64_t dim = 1ull << c.n_qubits;
    DenseOperator op;
    op.n_qubits = c.n_qubits;
    op.entries.assign(dim * dim, cnum{0.0, 0.0});
    // simulate each basis column
    cvec col(dim);
    for (std::uint64_t k = 0; k < dim; ++k) {
        std::fill(col.begin(), col.end(), cnum{0.0, 0.0});
        col[k] = 1.0;
        for (const Gate& g : c.gates) apply_gate(col, c.n_qubits, g);
        for (std::uint64_t j = 0; j < dim; ++j) op.at(j, k) = col[j];
    }
    return op;
}

DenseVerdict dense_equiv(const DenseState& a, const DenseState& b, Level level) {
    if (a.n_qubits != b.n_qubits) throw std::invalid_argument("dense_equiv: size mismatch");
    switch (level) {
        case Level::Exact: return equiv_exact(a.amps, b.amps);
        case Level::Global: return equiv_global(a.amps, b.amps);
        case Level::Relative: return equiv_relative_states(a.amps, b.amps);
    }
    return verdict_not_equivalent();
}

DenseVerdict dense_equiv(const DenseOperator& a, const DenseOperator& b, Level level) {
    if (a.n_qubits != b.n_qubits) throw std::invalid_argument("dense_equiv: size mismatch");
    switch (level) {
        case Level::Exact: return equiv_exact(a.entries, b.entries);
        case Level::Global: return equiv_global(a.entries, b.entries);
        case Level::Relative: {
            DenseVerdict v;
            const auto left = one_sided_diag(a, b, true);
            const auto right = one_sided_diag(a, b, false);
            if (left) {
                v.equivalent = true;
                v.phases = *left;
                v.side = right ? DiagSide::Both : DiagSide::Left;
            } else if (right) {
                v.equivalent = true;
                v.phases = *right;
                v.side = DiagSide::Right;
            }
            return v;
        }
    }
    return verdict_not_equivalent();
}

cvec expand_state(const QuIDD& q) {
    if (q.kind != DDKind::State) throw std::invalid_argument("expand_state: not a state");
    if (q.n_qubits > 20) throw std::invalid_argument("expand_state: too large");
    cvec out(1ull << q.n_qubits);
    const DDManager& m = q.manager();
    // states use levels 0, 2, 4, ...; walk qubit by qubit
    struct Walker {
        const DDManager& m;
        int n;
        cvec& out;
        void rec(NodeRef r, int q, std::uint64_t idx) {
            if (q == n) {
                out[idx] = m.value(r);
                return;
            }
            const std::uint32_t lvl = 2 * static_cast<std::uint32_t>(q);
            rec(m.cofactor(r, lvl, false), q + 1, idx << 1);
            rec(m.cofactor(r, lvl, true), q + 1, (idx << 1) | 1);
        }
    } w{m, q.n_qubits, out};
    w.rec(q.root, 0, 0);
    return out;
}

cvec expand_operator(const QuIDD& q) {
    if (q.kind != DDKind::Operator) throw std::invalid_argument("expand_operator: not an operator");
    if (q.n_qubits > 10) throw std::invalid_argument("expand_operator: too large");
    const int n = q.n_qubits;
    const std::uint64_t dim = 1ull << n;
    cvec interleaved(dim * dim);
    expand_rec(q.manager(), q.root, 0, static_cast<std::uint32_t>(2 * n), 0, interleaved);
    // interleaved path bits are r0 c0 r1 c1 ...; split into row-major (row, col)
    cvec out(dim * dim);
    for (std::uint64_t p = 0; p < dim * dim; ++p) {
        std::uint64_t row = 0, col = 0;
        for (int q2 = 0; q2 < n; ++q2) {
            row = (row << 1) | ((p >> (2 * (n - q2) - 1)) & 1);
            col = (col << 1) | ((p >> (2 * (n - q2) - 2)) & 1);
        }
        out[(row << n) | col] = interleaved[p];
    }
    return out;
}

double cross_check(const QuIDD& q, const DenseState& d) {
    if (q.n_qubits != d.n_qubits) throw std::invalid_argument("cross_check: size mismatch");
    const cvec got = expand_state(q);
    double max_diff = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i)
        max_diff = std::max(max_diff, std::abs(got[i] - d.amps[i]));
    return max_diff;
}

double cross_check(const QuIDD& q, const DenseOperator& d) {
    if (q.n_qubits != d.n_qubits) throw std::invalid_argument("cross_check: size mismatch");
    const cvec got = expand_operator(q);
    double max_diff = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i)
        max_diff = std::max(max_diff, std::abs(got[i] - d.entries[i]));
    return max_diff;
}

}  // namespace quidd::dense

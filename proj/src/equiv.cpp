#include "quidd/equiv.hpp"

#include <chrono>
#include <cmath>
#include <unordered_set>

namespace quidd {

namespace {

constexpr std::uint32_t kTagElemDiv = kUserTagBase + 8;
constexpr std::uint32_t kTagRpDivAbsorbRow = kUserTagBase + 9;
constexpr std::uint32_t kTagRpDivAbsorbCol = kUserTagBase + 10;
constexpr std::uint32_t kTagColToRow = kUserTagBase + 11;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void check_operands(const QuIDD& a, const QuIDD& b) {
    if (a.mgr == nullptr || a.mgr != b.mgr)
        throw std::invalid_argument("check: operands belong to different managers");
    if (a.kind != b.kind) throw std::invalid_argument("check: state/operator kind mismatch");
    if (a.n_qubits != b.n_qubits) throw std::invalid_argument("check: qubit counts differ");
}

void require_kind(const QuIDD& a, DDKind kind, const char* method) {
    if (a.kind != kind)
        throw std::invalid_argument(std::string(method) + ": wrong operand kind");
}

CheckStats base_stats(const QuIDD& a, const QuIDD& b) {
    CheckStats s;
    s.nodes_a = a.manager().node_count(a.root);
    s.nodes_b = b.manager().node_count(b.root);
    return s;
}

struct GprcContext {
    DDManager& m;
    bool have_gp = false;
    cplx gp{0.0, 0.0};
    std::size_t visited = 0;
    std::unordered_set<std::uint64_t> seen;
};

bool gprc_rec(GprcContext& ctx, NodeRef a, NodeRef b) {
    const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
    if (!ctx.seen.insert(key).second) return true;  // pair already verified
    ctx.visited += 2;

    DDManager& m = ctx.m;
    if (m.is_terminal(a) && m.is_terminal(b)) {
        if (b == m.zero()) return a == m.zero();
        if (a == m.zero()) return false;
        const cplx ngp = m.value(a) / m.value(b);
        if (!approx_unit_modulus(ngp)) return false;
        if (!ctx.have_gp) {
            ctx.gp = ngp;
            ctx.have_gp = true;
        }
        return approx_equal(ngp, ctx.gp);
    }
    if (m.is_terminal(a) != m.is_terminal(b)) return false;
    if (m.level(a) != m.level(b)) return false;
    return gprc_rec(ctx, m.then_child(a), m.then_child(b)) &&
           gprc_rec(ctx, m.else_child(a), m.else_child(b));
}

struct EarlyNotEquivalent {};

// guarded division that aborts as soon as a quotient cannot be a phase
NodeRef elem_div_rec(DDManager& m, NodeRef b, NodeRef a) {
    if (b == a) return m.one();
    if (m.is_terminal(b) && m.is_terminal(a)) {
        const cplx vb = m.value(b), va = m.value(a);
        const bool bz = vb == cplx{0.0, 0.0}, az = va == cplx{0.0, 0.0};
        if (bz && az) return m.one();
        if (bz || az) throw EarlyNotEquivalent{};
        const cplx q = vb / va;
        if (!approx_unit_modulus(q)) throw EarlyNotEquivalent{};
        return m.make_terminal(q);
    }
    NodeRef hit;
    if (m.cache_lookup(kTagElemDiv, b, a, hit)) return hit;
    const std::uint32_t lvl = std::min(m.level(b), m.level(a));
    const NodeRef t = elem_div_rec(m, m.cofactor(b, lvl, true), m.cofactor(a, lvl, true));
    const NodeRef e = elem_div_rec(m, m.cofactor(b, lvl, false), m.cofactor(a, lvl, false));
    const NodeRef r = m.make_node(lvl, t, e);
    m.cache_insert(kTagElemDiv, b, a, r);
    return r;
}

// Element-wise division of operators with a sentinel marking blocks that
// are zero in both. Children that differ across a variable of the absorbed
// kind must agree up to sentinels; the sentinel child takes the sibling's
// phases. Computes x / y pointwise.
NodeRef rp_div_rec(DDManager& m, NodeRef x, NodeRef y, VarId::Kind absorb) {
    const NodeRef sentinel = m.make_terminal({2.0, 0.0});
    if (x == m.zero()) return y == m.zero() ? sentinel : m.zero();
    if (m.is_terminal(x) && m.is_terminal(y)) {
        if (y == m.zero()) return m.zero();
        const cplx q = m.value(x) / m.value(y);
        if (!approx_unit_modulus(q)) return m.zero();
        return m.make_terminal(q);
    }

    const std::uint32_t tag =
        absorb == VarId::Kind::Row ? kTagRpDivAbsorbRow : kTagRpDivAbsorbCol;
    NodeRef hit;
    if (m.cache_lookup(tag, x, y, hit)) return hit;

    const std::uint32_t lvl = std::min(m.level(x), m.level(y));
    NodeRef t = rp_div_rec(m, m.cofactor(x, lvl, true), m.cofactor(y, lvl, true), absorb);
    NodeRef e = rp_div_rec(m, m.cofactor(x, lvl, false), m.cofactor(y, lvl, false), absorb);
    if (t == m.zero() || e == m.zero()) return m.zero();

    if (t != e && VarId::from_level(lvl).kind == absorb) {
        if (t == sentinel) return e;
        if (e == sentinel) return t;
        return m.zero();
    }
    if (t == sentinel) t = m.one();
    if (e == sentinel) e = m.one();
    const NodeRef r = m.make_node(lvl, t, e);
    m.cache_insert(tag, x, y, r);
    return r;
}

bool support_has_kind(const DDStats& s, VarId::Kind kind) {
    for (const VarId& v : s.support)
        if (v.kind == kind) return true;
    return false;
}

// relabels a column-variables-only DD onto the row variables of the same
// qubits, preserving structure
NodeRef cols_to_rows(DDManager& m, NodeRef r) {
    if (m.is_terminal(r)) return r;
    NodeRef hit;
    if (m.cache_lookup(kTagColToRow, r, kNilRef, hit)) return hit;
    const NodeRef t = cols_to_rows(m, m.then_child(r));
    const NodeRef e = cols_to_rows(m, m.else_child(r));
    const NodeRef out = m.make_node(m.level(r) - 1, t, e);
    m.cache_insert(kTagColToRow, r, kNilRef, out);
    return out;
}

EquivVerdict finish(EquivVerdict v, Clock::time_point start) {
    v.stats.check_ms = ms_since(start);
    return v;
}

}  // namespace

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::ExactEqual: return "exact-equal";
        case Outcome::GlobalPhase: return "global-phase";
        case Outcome::RelativePhase: return "relative-phase";
        case Outcome::NotEquivalent: return "not-equivalent";
        case Outcome::FilterPassed: return "filter-passed";
        case Outcome::FilterFailed: return "filter-failed";
    }
    return "?";
}

const char* to_string(Method m) {
    switch (m) {
        case Method::Exact: return "exact";
        case Method::NodeCount: return "nodecount";
        case Method::GlobalInner: return "inner";
        case Method::GlobalMatrix: return "matrix";
        case Method::Gprc: return "gprc";
        case Method::RelModInner: return "modinner";
        case Method::RelModMatrix: return "modmatrix";
        case Method::ElemDivStates: return "elemdiv";
        case Method::RpDivOperators: return "rpdiv";
        case Method::NonZeroMerge: return "merge";
        case Method::ModDDCompare: return "moddd";
    }
    return "?";
}

EquivVerdict exact_equal(const QuIDD& a, const QuIDD& b) {
    check_operands(a, b);
    const auto start = Clock::now();
    EquivVerdict v;
    v.method = Method::Exact;
    v.stats = base_stats(a, b);
    v.outcome = a.root == b.root ? Outcome::ExactEqual : Outcome::NotEquivalent;
    return finish(std::move(v), start);
}

EquivVerdict node_count_filter(const QuIDD& a, const QuIDD& b) {
    check_operands(a, b);
    const auto start = Clock::now();
    EquivVerdict v;
    v.method = Method::NodeCount;
    v.stats = base_stats(a, b);
    v.outcome = v.stats.nodes_a == v.stats.nodes_b ? Outcome::FilterPassed : Outcome::FilterFailed;
    return finish(std::move(v), start);
}

EquivVerdict global_inner_product(const QuIDD& a, const QuIDD& b) {
    check_operands(a, b);
    require_kind(a, DDKind::State, "global_inner_product");
    const auto start = Clock::now();
    EquivVerdict v;
    v.method = Method::GlobalInner;
    v.stats = base_stats(a, b);
    const cplx ip = inner_product(a, b);  // <a|b> = phase when b = phase a
    if (approx_unit_modulus(ip)) {
        v.outcome = Outcome::GlobalPhase;
        v.phase = ip;
    } else {
        v.outcome = Outcome::NotEquivalent;
    }
    return finish(std::move(v), start);
}

EquivVerdict global_matrix_product(const QuIDD& a, const QuIDD& b) {
    check_operands(a, b);
    require_kind(a, DDKind::Operator, "global_matrix_product");
    const auto start = Clock::now();
    EquivVerdict v;
    v.method = Method::GlobalMatrix;
    v.stats = base_stats(a, b);
    v.outcome = Outcome::NotEquivalent;

    DDManager& m = a.manager();
    const QuIDD w = matmul(a, conj_transpose(b));  // = conj(phase) I when b = phase a
    for (const cplx& t : m.stats(w.root).terminal_values) {
        if (!approx_unit_modulus(t)) continue;
        if (m.scalar_div(w.root, t) == make_identity(m, a.n_qubits).root) {
            v.outcome = Outcome::GlobalPhase;
            v.phase = std::conj(t);
        }
        break;
    }
    return finish(std::move(v), start);
}

EquivVerdict gprc(const QuIDD& a, const QuIDD& b) {
    check_operands(a, b);
    const auto start = Clock::now();
    EquivVerdict v;
    v.method = Method::Gprc;
    v.stats = base_stats(a, b);

    GprcContext ctx{a.manager()};
    const bool ok = gprc_rec(ctx, a.root, b.root);
    v.stats.visited = ctx.visited;
    if (ok && ctx.have_gp) {
        v.outcome = Outcome::GlobalPhase;
        v.phase = std::conj(ctx.gp);  // ctx.gp is A/B; report B = phase A
    } else {
        v.outcome = Outcome::NotEquivalent;
    }
    return finish(std::move(v), start);
}

EquivVerdict rel_mod_inner(const QuIDD& a, const QuIDD& b) {
    check_operands(a, b);
    require_kind(a, DDKind::State, "rel_mod_inner");
    const auto start = Clock::now();
    EquivVerdict v;
    v.method = Method::RelModInner;
    v.stats = base_stats(a, b);
    const cplx ip =
        inner_product(modulus_map(a, ModulusMode::Modulus), modulus_map(b, ModulusMode::Modulus));
    if (approx_unit_modulus(ip)) {
        v.outcome = Outcome::RelativePhase;  // phase factors are not computed
        v.side = PhaseSide::State;
    } else {
        v.outcome = Outcome::NotEquivalent;
    }
    return finish(std::move(v), start);
}

EquivVerdict rel_mod_matrix(const QuIDD& a, const QuIDD& b) {
    check_operands(a, b);
    require_kind(a, DDKind::Operator, "rel_mod_matrix");
    const auto start = Clock::now();
    EquivVerdict v;
    v.method = Method::RelModMatrix;
    v.stats = base_stats(a, b);
    const QuIDD ma = modulus_map(a, ModulusMode::Modulus);
    const QuIDD mb = modulus_map(b, ModulusMode::Modulus);
    const QuIDD mbt = conj_transpose(mb);  // real entries: plain transpose
    v.outcome = matmul(ma, mbt).root == matmul(mb, mbt).root ? Outcome::FilterPassed
                                                             : Outcome::FilterFailed;
    return finish(std::move(v), start);
}

EquivVerdict elementwise_div_states(const QuIDD& a, const QuIDD& b) {
    check_operands(a, b);
    require_kind(a, DDKind::State, "elementwise_div_states");
    const auto start = Clock::now();
    EquivVerdict v;
    v.method = Method::ElemDivStates;
    v.stats = base_stats(a, b);
    DDManager& m = a.manager();
    try {
        const NodeRef phases = elem_div_rec(m, b.root, a.root);
        v.outcome = Outcome::RelativePhase;
        v.side = PhaseSide::State;
        v.phases = QuIDD{phases, a.n_qubits, DDKind::State, false, a.mgr};
    } catch (const EarlyNotEquivalent&) {
        v.outcome = Outcome::NotEquivalent;
    }
    return finish(std::move(v), start);
}

EquivVerdict rp_div_operators(const QuIDD& a, const QuIDD& b) {
    check_operands(a, b);
    require_kind(a, DDKind::Operator, "rp_div_operators");
    const auto start = Clock::now();
    EquivVerdict v;
    v.method = Method::RpDivOperators;
    v.stats = base_stats(a, b);
    DDManager& m = a.manager();
    const NodeRef sentinel = m.make_terminal({2.0, 0.0});

    // left pass: phases constant along each row, so differences across
    // column variables are absorbed and the result lives on row variables
    const NodeRef left = rp_div_rec(m, b.root, a.root, VarId::Kind::Col);
    const bool left_ok =
        left != m.zero() && !support_has_kind(m.stats(left), VarId::Kind::Col);
    const NodeRef right = rp_div_rec(m, b.root, a.root, VarId::Kind::Row);
    const bool right_ok =
        right != m.zero() && !support_has_kind(m.stats(right), VarId::Kind::Row);

    if (left_ok) {
        const NodeRef w = left == sentinel ? m.one() : left;
        v.outcome = Outcome::RelativePhase;
        v.side = PhaseSide::Left;
        v.also_right = right_ok;
        v.phases = QuIDD{w, a.n_qubits, DDKind::State, false, a.mgr};
    } else if (right_ok) {
        const NodeRef w0 = right == sentinel ? m.one() : right;
        v.outcome = Outcome::RelativePhase;
        v.side = PhaseSide::Right;
        v.phases = QuIDD{cols_to_rows(m, w0), a.n_qubits, DDKind::State, false, a.mgr};
    } else {
        v.outcome = Outcome::NotEquivalent;
    }
    return finish(std::move(v), start);
}

EquivVerdict non_zero_terminal_merge(const QuIDD& a, const QuIDD& b) {
    check_operands(a, b);
    const auto start = Clock::now();
    EquivVerdict v;
    v.method = Method::NonZeroMerge;
    v.stats = base_stats(a, b);
    v.outcome = modulus_map(a, ModulusMode::CeilModulus).root ==
                        modulus_map(b, ModulusMode::CeilModulus).root
                    ? Outcome::FilterPassed
                    : Outcome::FilterFailed;
    return finish(std::move(v), start);
}

EquivVerdict mod_dd_compare(const QuIDD& a, const QuIDD& b) {
    check_operands(a, b);
    const auto start = Clock::now();
    EquivVerdict v;
    v.method = Method::ModDDCompare;
    v.stats = base_stats(a, b);
    const bool equal = modulus_map(a, ModulusMode::Modulus).root ==
                       modulus_map(b, ModulusMode::Modulus).root;
    if (a.kind == DDKind::State) {
        v.outcome = equal ? Outcome::RelativePhase : Outcome::NotEquivalent;
        v.side = PhaseSide::State;
    } else {
        // moduli equality does not pin phases to rows or columns, so for
        // operators this remains a filter
        v.outcome = equal ? Outcome::FilterPassed : Outcome::FilterFailed;
    }
    return finish(std::move(v), start);
}

EquivVerdict auto_check(const QuIDD& a, const QuIDD& b, CheckLevel level) {
    check_operands(a, b);
    const auto start = Clock::now();
    const Method decisive =
        level == CheckLevel::Exact
            ? Method::Exact
            : (level == CheckLevel::Global
                   ? Method::Gprc
                   : (a.kind == DDKind::State ? Method::ElemDivStates : Method::RpDivOperators));

    EquivVerdict v = exact_equal(a, b);
    std::vector<Method> ran{Method::Exact};
    if (level == CheckLevel::Exact || v.outcome == Outcome::ExactEqual) {
        v.stats.ran = std::move(ran);
        if (v.outcome == Outcome::ExactEqual && decisive != Method::Exact)
            v.stats.skipped.push_back(decisive);
        return finish(std::move(v), start);
    }

    const auto reject_via = [&](EquivVerdict filter) {
        filter.outcome = Outcome::NotEquivalent;
        filter.stats.ran = ran;
        filter.stats.ran.push_back(filter.method);
        filter.stats.skipped.push_back(decisive);
        return finish(std::move(filter), start);
    };

    if (level == CheckLevel::Global) {
        EquivVerdict f = node_count_filter(a, b);
        ran.push_back(f.method);
        if (f.outcome == Outcome::FilterFailed) return reject_via(std::move(f));
    }
    // zero-location agreement is necessary for relative and hence for
    // global equivalence
    EquivVerdict f = non_zero_terminal_merge(a, b);
    ran.push_back(f.method);
    if (f.outcome == Outcome::FilterFailed) return reject_via(std::move(f));

    EquivVerdict d;
    switch (decisive) {
        case Method::Gprc: d = gprc(a, b); break;
        case Method::ElemDivStates: d = elementwise_div_states(a, b); break;
        default: d = rp_div_operators(a, b); break;
    }
    ran.push_back(d.method);
    d.stats.ran = std::move(ran);
    return finish(std::move(d), start);
}

}  // namespace quidd

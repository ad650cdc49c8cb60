#include "quidd/quidd.hpp"

#include <array>
#include <cmath>

namespace quidd {

namespace {

// user-tag layout of the compute cache: per-qubit recursion tags must not
// collide across qubits or with each other
constexpr std::uint32_t kTagTranspose = kUserTagBase + 1;
constexpr std::uint32_t kTagMatVecBase = 0x01000000u;
constexpr std::uint32_t kTagMatMulBase = 0x02000000u;

void check_same_manager(const QuIDD& a, const QuIDD& b) {
    if (a.mgr == nullptr || a.mgr != b.mgr)
        throw std::invalid_argument("operands belong to different managers");
    if (a.n_qubits != b.n_qubits)
        throw std::invalid_argument("operand qubit counts differ");
}

NodeRef transpose_rec(DDManager& m, NodeRef a) {
    if (m.is_terminal(a)) return m.make_terminal(std::conj(m.value(a)));
    NodeRef hit;
    if (m.cache_lookup(kTagTranspose, a, kNilRef, hit)) return hit;

    const std::uint32_t q = m.level(a) / 2;
    const std::uint32_t rl = 2 * q, cl = 2 * q + 1;
    // block (r, c) of the input, indexed row then column
    const auto block = [&](bool r, bool c) {
        return m.cofactor(m.cofactor(a, rl, r), cl, c);
    };
    const NodeRef g11 = transpose_rec(m, block(true, true));
    const NodeRef g10 = transpose_rec(m, block(false, true));
    const NodeRef g01 = transpose_rec(m, block(true, false));
    const NodeRef g00 = transpose_rec(m, block(false, false));
    const NodeRef r =
        m.make_node(rl, m.make_node(cl, g11, g10), m.make_node(cl, g01, g00));
    m.cache_insert(kTagTranspose, a, kNilRef, r);
    return r;
}

// Product of the blocks rooted at qubit q; `vec` selects matrix-vector
// shape. A pair of constant blocks over the remaining m qubits multiplies
// out to a constant scaled by the 2^m summed inner dimension.
NodeRef mul_rec(DDManager& m, NodeRef a, NodeRef b, int q, int n, bool vec) {
    if (a == m.zero() || b == m.zero()) return m.zero();
    if (m.is_terminal(a) && m.is_terminal(b))
        return m.make_terminal(m.value(a) * m.value(b) * std::ldexp(1.0, n - q));

    const std::uint32_t tag = (vec ? kTagMatVecBase : kTagMatMulBase) + static_cast<std::uint32_t>(q);
    NodeRef hit;
    if (m.cache_lookup(tag, a, b, hit)) return hit;

    const std::uint32_t rl = 2 * static_cast<std::uint32_t>(q), cl = rl + 1;
    const auto ablock = [&](bool r, bool k) {
        return m.cofactor(m.cofactor(a, rl, r), cl, k);
    };

    NodeRef result;
    if (vec) {
        const NodeRef b0 = m.cofactor(b, rl, false);
        const NodeRef b1 = m.cofactor(b, rl, true);
        const NodeRef t = m.apply_binary(mul_rec(m, ablock(true, false), b0, q + 1, n, vec),
                                         mul_rec(m, ablock(true, true), b1, q + 1, n, vec),
                                         BinOp::Add);
        const NodeRef e = m.apply_binary(mul_rec(m, ablock(false, false), b0, q + 1, n, vec),
                                         mul_rec(m, ablock(false, true), b1, q + 1, n, vec),
                                         BinOp::Add);
        result = m.make_node(rl, t, e);
    } else {
        const auto bblock = [&](bool k, bool c) {
            return m.cofactor(m.cofactor(b, rl, k), cl, c);
        };
        std::array<std::array<NodeRef, 2>, 2> out{};
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                out[r][c] = m.apply_binary(
                    mul_rec(m, ablock(r != 0, false), bblock(false, c != 0), q + 1, n, vec),
                    mul_rec(m, ablock(r != 0, true), bblock(true, c != 0), q + 1, n, vec),
                    BinOp::Add);
            }
        }
        result = m.make_node(rl, m.make_node(cl, out[1][1], out[1][0]),
                             m.make_node(cl, out[0][1], out[0][0]));
    }
    m.cache_insert(tag, a, b, result);
    return result;
}

// Sum of f over all assignments of row variables below (and including) the
// node's own qubit, with absent variables doubling their subtree sum.
cplx path_sum_rec(DDManager& m, NodeRef r, int n,
                  std::unordered_map<NodeRef, cplx>& memo) {
    if (m.is_terminal(r)) return m.value(r);
    if (auto it = memo.find(r); it != memo.end()) return it->second;
    const int q = static_cast<int>(m.level(r) / 2);
    const auto weighted = [&](NodeRef child) -> cplx {
        const cplx s = path_sum_rec(m, child, n, memo);
        if (s == cplx{0.0, 0.0}) return s;
        const int child_q = m.is_terminal(child) ? n : static_cast<int>(m.level(child) / 2);
        return s * std::ldexp(1.0, child_q - q - 1);
    };
    const cplx total = weighted(m.then_child(r)) + weighted(m.else_child(r));
    memo.emplace(r, total);
    return total;
}

// 2x2 complex matrix, row major
using Mat2 = std::array<cplx, 4>;

constexpr Mat2 kP0{cplx{1, 0}, {0, 0}, {0, 0}, {0, 0}};
constexpr Mat2 kP1{cplx{0, 0}, {0, 0}, {0, 0}, {1, 0}};

Mat2 gate_matrix(const Gate& g) {
    const double t = g.theta;
    switch (g.kind) {
        case Gate::Kind::X: return {cplx{0, 0}, {1, 0}, {1, 0}, {0, 0}};
        case Gate::Kind::Y: return {cplx{0, 0}, {0, -1}, {0, 1}, {0, 0}};
        case Gate::Kind::Z: return {cplx{1, 0}, {0, 0}, {0, 0}, {-1, 0}};
        case Gate::Kind::H: {
            const double s = 1.0 / std::sqrt(2.0);
            return {cplx{s, 0}, {s, 0}, {s, 0}, {-s, 0}};
        }
        case Gate::Kind::RY:
            return {cplx{std::cos(t / 2), 0}, {-std::sin(t / 2), 0},
                    {std::sin(t / 2), 0}, {std::cos(t / 2), 0}};
        case Gate::Kind::RZ:
            return {std::polar(1.0, -t), {0, 0}, {0, 0}, std::polar(1.0, t)};
        case Gate::Kind::Phase:
            return {cplx{1, 0}, {0, 0}, {0, 0}, std::polar(1.0, t)};
        default: break;
    }
    throw std::invalid_argument("gate_matrix: not a one-qubit gate");
}

/// Tensor product with the given single-qubit factors and identity on
/// every other qubit, built bottom-up in interleaved order.
NodeRef tensor_term(DDManager& m, int n, const std::vector<std::pair<int, Mat2>>& factors) {
    NodeRef below = m.one();
    for (int q = n - 1; q >= 0; --q) {
        const Mat2* fac = nullptr;
        for (const auto& [fq, fm] : factors)
            if (fq == q) fac = &fm;
        static constexpr Mat2 kI{cplx{1, 0}, {0, 0}, {0, 0}, {1, 0}};
        const Mat2& u = fac != nullptr ? *fac : kI;
        const std::uint32_t rl = 2 * static_cast<std::uint32_t>(q), cl = rl + 1;
        const NodeRef e00 = m.scalar_mul(below, u[0]);
        const NodeRef e01 = m.scalar_mul(below, u[1]);
        const NodeRef e10 = m.scalar_mul(below, u[2]);
        const NodeRef e11 = m.scalar_mul(below, u[3]);
        below = m.make_node(rl, m.make_node(cl, e11, e10), m.make_node(cl, e01, e00));
    }
    return below;
}

NodeRef amplitudes_rec(DDManager& m, std::span<const cplx> amps, int q, int n) {
    if (q == n) return m.make_terminal(amps[0]);
    const std::size_t half = amps.size() / 2;
    const NodeRef lo = amplitudes_rec(m, amps.first(half), q + 1, n);
    const NodeRef hi = amplitudes_rec(m, amps.subspan(half), q + 1, n);
    return m.make_node(2 * static_cast<std::uint32_t>(q), hi, lo);
}

NodeRef entries_rec(DDManager& m, int q, int n, std::uint64_t row, std::uint64_t col,
                    const std::function<cplx(std::uint64_t, std::uint64_t)>& entry) {
    if (q == n) return m.make_terminal(entry(row, col));
    const std::uint32_t rl = 2 * static_cast<std::uint32_t>(q), cl = rl + 1;
    const std::uint64_t bit = 1ull << (n - 1 - q);
    std::array<std::array<NodeRef, 2>, 2> sub{};
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            sub[r][c] = entries_rec(m, q + 1, n, row | (r ? bit : 0), col | (c ? bit : 0), entry);
    return m.make_node(rl, m.make_node(cl, sub[1][1], sub[1][0]),
                       m.make_node(cl, sub[0][1], sub[0][0]));
}

}  // namespace

QuIDD make_basis_state(DDManager& m, const std::vector<bool>& bits) {
    const int n = static_cast<int>(bits.size());
    NodeRef below = m.one();
    for (int q = n - 1; q >= 0; --q) {
        const std::uint32_t lvl = 2 * static_cast<std::uint32_t>(q);
        below = bits[static_cast<std::size_t>(q)] ? m.make_node(lvl, below, m.zero())
                                                  : m.make_node(lvl, m.zero(), below);
    }
    return {below, n, DDKind::State, false, &m};
}

QuIDD state_from_amplitudes(DDManager& m, std::span<const cplx> amps, int n_qubits) {
    if (amps.size() != (1ull << n_qubits))
        throw std::invalid_argument("state_from_amplitudes: length is not 2^n");
    bool any = false;
    for (const cplx& a : amps) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw NumericError("state_from_amplitudes: non-finite amplitude");
        any = any || a != cplx{0.0, 0.0};
    }
    if (!any) throw std::invalid_argument("state_from_amplitudes: zero state vector");
    return {amplitudes_rec(m, amps, 0, n_qubits), n_qubits, DDKind::State, false, &m};
}

QuIDD make_identity(DDManager& m, int n) {
    return {tensor_term(m, n, {}), n, DDKind::Operator, false, &m};
}

QuIDD operator_from_entries(DDManager& m, int n,
                            const std::function<cplx(std::uint64_t, std::uint64_t)>& entry) {
    return {entries_rec(m, 0, n, 0, 0, entry), n, DDKind::Operator, false, &m};
}

QuIDD conj_transpose(const QuIDD& a) {
    DDManager& m = a.manager();
    if (a.kind == DDKind::State)
        return {m.apply_unary(a.root, UnOp::Conjugate), a.n_qubits, DDKind::State, !a.bra, a.mgr};
    return {transpose_rec(m, a.root), a.n_qubits, DDKind::Operator, false, a.mgr};
}

QuIDD matmul(const QuIDD& a, const QuIDD& b) {
    check_same_manager(a, b);
    if (a.kind != DDKind::Operator)
        throw std::invalid_argument("matmul: left operand must be an operator");
    if (b.kind == DDKind::State && b.bra)
        throw std::invalid_argument("matmul: cannot multiply an operator into a bra");
    const bool vec = b.kind == DDKind::State;
    const NodeRef r = mul_rec(a.manager(), a.root, b.root, 0, a.n_qubits, vec);
    return {r, a.n_qubits, b.kind, false, a.mgr};
}

cplx inner_product(const QuIDD& a, const QuIDD& b) {
    check_same_manager(a, b);
    if (a.kind != DDKind::State || b.kind != DDKind::State)
        throw std::invalid_argument("inner_product: operands must be states");
    DDManager& m = a.manager();
    const NodeRef prod =
        m.apply_binary(m.apply_unary(a.root, UnOp::Conjugate), b.root, BinOp::Mul);
    std::unordered_map<NodeRef, cplx> memo;
    const cplx s = path_sum_rec(m, prod, a.n_qubits, memo);
    if (m.is_terminal(prod)) return s * std::ldexp(1.0, a.n_qubits);
    return s * std::ldexp(1.0, static_cast<int>(m.level(prod) / 2));
}

QuIDD modulus_map(const QuIDD& a, ModulusMode mode) {
    DDManager& m = a.manager();
    const NodeRef r = m.apply_unary(
        a.root, mode == ModulusMode::Modulus ? UnOp::Modulus : UnOp::CeilModulus);
    return {r, a.n_qubits, a.kind, a.bra, a.mgr};
}

QuIDD scalar_mul(const QuIDD& a, cplx c) {
    return {a.manager().scalar_mul(a.root, c), a.n_qubits, a.kind, a.bra, a.mgr};
}

QuIDD scalar_div(const QuIDD& a, cplx c) {
    return {a.manager().scalar_div(a.root, c), a.n_qubits, a.kind, a.bra, a.mgr};
}

QuIDD lift_gate(DDManager& m, const Gate& g, int n) {
    g.validate(n);
    NodeRef r;
    switch (g.kind) {
        case Gate::Kind::CX: {
            // I + P1(c) (x) (X - I)(t)
            const Mat2 xmi{cplx{-1, 0}, {1, 0}, {1, 0}, {-1, 0}};
            r = m.apply_binary(tensor_term(m, n, {}),
                               tensor_term(m, n, {{g.qubits[0], kP1}, {g.qubits[1], xmi}}),
                               BinOp::Add);
            break;
        }
        case Gate::Kind::CCX: {
            const Mat2 xmi{cplx{-1, 0}, {1, 0}, {1, 0}, {-1, 0}};
            r = m.apply_binary(
                tensor_term(m, n, {}),
                tensor_term(m, n, {{g.qubits[0], kP1}, {g.qubits[1], kP1}, {g.qubits[2], xmi}}),
                BinOp::Add);
            break;
        }
        case Gate::Kind::CPS: {
            // 2|0...0><0...0| - I on the listed qubits
            std::vector<std::pair<int, Mat2>> factors;
            for (int q : g.qubits) factors.emplace_back(q, kP0);
            r = m.apply_binary(m.scalar_mul(tensor_term(m, n, factors), {2.0, 0.0}),
                               tensor_term(m, n, {}), BinOp::Sub);
            break;
        }
        default:
            r = tensor_term(m, n, {{g.qubits[0], gate_matrix(g)}});
            break;
    }
    return {r, n, DDKind::Operator, false, &m};
}

}  // namespace quidd

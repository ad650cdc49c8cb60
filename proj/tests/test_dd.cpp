#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "quidd/dd.hpp"
#include "quidd/quidd.hpp"

using namespace quidd;

namespace {

// independent pointwise evaluator: walks the DD like a truth table, no
// reliance on apply/canonicity
cplx eval_at(const DDManager& m, NodeRef r, std::uint32_t total_levels,
             std::uint64_t assignment) {
    for (std::uint32_t lvl = 0; lvl < total_levels; ++lvl) {
        if (m.is_terminal(r) || m.level(r) > lvl) continue;
        const bool bit = (assignment >> (total_levels - 1 - lvl)) & 1;
        r = bit ? m.then_child(r) : m.else_child(r);
    }
    REQUIRE(m.is_terminal(r));
    return m.value(r);
}

// random state DD over `levels` row variables with values from a small pool
NodeRef random_dd(DDManager& m, std::mt19937& rng, int levels) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::uniform_int_distribution<int> coin(0, 3);
    const std::uint64_t dim = 1ull << levels;
    std::vector<cplx> vals(dim);
    for (auto& v : vals) v = coin(rng) == 0 ? cplx{0.0, 0.0} : cplx{uni(rng), uni(rng)};
    if (std::all_of(vals.begin(), vals.end(), [](cplx v) { return v == cplx{0.0, 0.0}; }))
        vals[0] = {0.5, 0.0};
    return state_from_amplitudes(m, vals, levels).root;
}

QuIDD fig2a_state(DDManager& m) {
    const double a = 0.707107;
    const std::vector<cplx> amps{{a, 0}, {-a, 0}, {a, 0}, {-a, 0}};
    return state_from_amplitudes(m, amps, 2);
}

}  // namespace

TEST_SUITE("dd_core") {

TEST_CASE("terminals are unique per grid key") {
    DDManager m;
    CHECK(m.make_terminal({0.707107, 0.0}) == m.make_terminal({0.707107, 0.0}));
    // both quantize to the key of 0
    CHECK(m.make_terminal({1e-14, 0.0}) == m.make_terminal({0.0, 0.0}));
    CHECK(m.make_terminal({1e-14, -1e-14}) == m.zero());
    // a full grid step apart stays distinct
    CHECK(m.make_terminal({1e-10, 0.0}) != m.zero());
    CHECK_THROWS_AS(m.make_terminal({std::nan(""), 0.0}), NumericError);
    CHECK_THROWS_AS(m.make_terminal({0.0, INFINITY}), NumericError);
}

TEST_CASE("ite reduces, dedupes and validates order") {
    DDManager m;
    const NodeRef t = m.make_terminal({0.25, 0.0});
    CHECK(m.ite(VarId::row(0), t, t) == t);

    const NodeRef n1 = m.ite(VarId::row(0), m.one(), m.zero());
    const NodeRef n2 = m.ite(VarId::row(0), m.one(), m.zero());
    CHECK(n1 == n2);

    // R1 cannot sit above a node on R0
    const NodeRef on_r0 = m.ite(VarId::row(0), m.one(), m.zero());
    CHECK_THROWS_AS(m.ite(VarId::row(1), on_r0, t), OrderError);
    // equal level is a violation too
    CHECK_THROWS_AS(m.ite(VarId::row(0), on_r0, t), OrderError);
    // interleaved order: C0 precedes R1
    const NodeRef on_r1 = m.ite(VarId::row(1), m.one(), m.zero());
    CHECK_NOTHROW(m.ite(VarId::col(0), on_r1, t));
}

TEST_CASE("apply_binary basics") {
    DDManager m;
    std::mt19937 rng(7);
    const NodeRef a = random_dd(m, rng, 3);

    CHECK(m.apply_binary(a, a, BinOp::Sub) == m.zero());

    const QuIDD fig2a = fig2a_state(m);
    CHECK(m.apply_binary(fig2a.root, m.one(), BinOp::Mul) == fig2a.root);

    const NodeRef b = random_dd(m, rng, 3);
    const NodeRef sum = m.apply_binary(a, b, BinOp::Add);
    CHECK(m.node_count(sum) <= m.node_count(a) * m.node_count(b));
}

TEST_CASE("division guards") {
    DDManager m;
    const NodeRef half = m.make_terminal({0.5, 0.0});
    CHECK_THROWS_AS(m.apply_binary(half, m.zero(), BinOp::Div), ArithmeticError);
    CHECK(m.value(m.apply_binary(m.zero(), m.zero(), BinOp::GuardedDiv)) == cplx{1.0, 0.0});
    CHECK(m.apply_binary(half, m.zero(), BinOp::GuardedDiv) == m.zero());
    CHECK(m.apply_binary(m.zero(), half, BinOp::GuardedDiv) == m.zero());
    CHECK_THROWS_AS(m.scalar_div(half, {0.0, 0.0}), ArithmeticError);
}

TEST_CASE("apply_unary basics") {
    DDManager m;
    const QuIDD fig2a = fig2a_state(m);

    // all moduli equal, so the DD collapses to one terminal
    const NodeRef mod = m.apply_unary(fig2a.root, UnOp::Modulus);
    CHECK(m.is_terminal(mod));
    CHECK(m.value(mod) == cplx{0.707107, 0.0});

    std::mt19937 rng(11);
    const NodeRef a = random_dd(m, rng, 4);
    CHECK(m.apply_unary(m.apply_unary(a, UnOp::Conjugate), UnOp::Conjugate) == a);

    // nonzero scalars do not change the shape
    const cplx c{0.3, -0.4};
    CHECK(m.node_count(m.scalar_mul(a, c)) == m.node_count(a));
}

TEST_CASE("min-modulus compare evaluates pointwise") {
    DDManager m;
    std::mt19937 rng(13);
    const int levels = 3;
    const NodeRef a = random_dd(m, rng, levels);
    const NodeRef b = random_dd(m, rng, levels);
    const NodeRef r = m.apply_binary(a, b, BinOp::MinModulus);
    for (std::uint64_t i = 0; i < (1u << levels); ++i) {
        const cplx va = eval_at(m, a, levels, i), vb = eval_at(m, b, levels, i);
        CHECK(eval_at(m, r, levels, i) == (std::abs(va) <= std::abs(vb) ? va : vb));
    }
}

TEST_CASE("dd_stats") {
    DDManager m;
    const NodeRef t = m.make_terminal({0.3, 0.1});
    const DDStats s0 = m.stats(t);
    CHECK(s0.node_count == 1);
    CHECK(s0.support.empty());

    // R0 absent in the Fig. 2a superposition: both halves identical
    const QuIDD fig2a = fig2a_state(m);
    const DDStats s1 = m.stats(fig2a.root);
    CHECK(s1.support == std::vector<VarId>{VarId::row(1)});
    CHECK(s1.node_count == 3);  // one internal, two terminals

    const QuIDD cnot = lift_gate(m, Gate::cx(0, 1), 2);
    const DDStats s2 = m.stats(cnot.root);
    CHECK(s2.support ==
          std::vector<VarId>{VarId::row(0), VarId::col(0), VarId::row(1), VarId::col(1)});
}

TEST_CASE("pointwise oracle: apply equals per-assignment op, k <= 8") {
    DDManager m;
    std::mt19937 rng(17);
    for (int levels = 1; levels <= 8; levels += 1) {
        const NodeRef a = random_dd(m, rng, levels);
        const NodeRef b = random_dd(m, rng, levels);
        const NodeRef sum = m.apply_binary(a, b, BinOp::Add);
        const NodeRef dif = m.apply_binary(a, b, BinOp::Sub);
        const NodeRef prd = m.apply_binary(a, b, BinOp::Mul);
        const NodeRef con = m.apply_unary(a, UnOp::Conjugate);
        for (std::uint64_t i = 0; i < (1ull << levels); ++i) {
            const cplx va = eval_at(m, a, levels, i), vb = eval_at(m, b, levels, i);
            CHECK(approx_equal(eval_at(m, sum, levels, i), va + vb, 1e-9));
            CHECK(approx_equal(eval_at(m, dif, levels, i), va - vb, 1e-9));
            CHECK(approx_equal(eval_at(m, prd, levels, i), va * vb, 1e-9));
            CHECK(approx_equal(eval_at(m, con, levels, i), std::conj(va), 1e-9));
        }
    }
}

TEST_CASE("canonicity: construction order does not matter") {
    // build the same function (a) amplitude-wise and (b) as a sum of
    // scaled basis states added in random order
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        DDManager m;
        const int n = 1 + static_cast<int>(rng() % 4);
        const std::uint64_t dim = 1ull << n;
        std::vector<cplx> vals(dim);
        for (auto& v : vals) v = (rng() % 3 == 0) ? cplx{0, 0} : cplx{uni(rng), uni(rng)};
        vals[rng() % dim] = {1.0, 0.0};

        const NodeRef direct = state_from_amplitudes(m, vals, n).root;

        std::vector<std::uint64_t> order(dim);
        for (std::uint64_t i = 0; i < dim; ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        NodeRef acc = m.zero();
        for (std::uint64_t i : order) {
            if (vals[i] == cplx{0.0, 0.0}) continue;
            std::vector<bool> bits(static_cast<std::size_t>(n));
            for (int q = 0; q < n; ++q) bits[static_cast<std::size_t>(q)] = (i >> (n - 1 - q)) & 1;
            const NodeRef basis = make_basis_state(m, bits).root;
            acc = m.apply_binary(acc, m.scalar_mul(basis, vals[i]), BinOp::Add);
        }
        REQUIRE(acc == direct);
    }
}

TEST_CASE("reduction and order hold on every reachable node") {
    DDManager m;
    std::mt19937 rng(29);
    const NodeRef root = m.apply_binary(random_dd(m, rng, 5), random_dd(m, rng, 5), BinOp::Add);

    std::vector<NodeRef> stack{root};
    std::unordered_map<std::uint64_t, int> structural;  // (level,hi,lo) -> count
    std::unordered_set<NodeRef> seen;
    while (!stack.empty()) {
        const NodeRef r = stack.back();
        stack.pop_back();
        if (!seen.insert(r).second) continue;
        if (m.is_terminal(r)) continue;
        CHECK(m.then_child(r) != m.else_child(r));
        CHECK(m.level(r) < m.level(m.then_child(r)));
        CHECK(m.level(r) < m.level(m.else_child(r)));
        const std::uint64_t key = (static_cast<std::uint64_t>(m.level(r)) << 48) ^
                                  (static_cast<std::uint64_t>(m.then_child(r)) << 24) ^
                                  m.else_child(r);
        CHECK(++structural[key] == 1);  // no two reachable nodes structurally equal
        stack.push_back(m.then_child(r));
        stack.push_back(m.else_child(r));
    }
}

TEST_CASE("cache transparency") {
    DDManager m;
    std::mt19937 rng(31);
    const NodeRef a = random_dd(m, rng, 6);
    const NodeRef b = random_dd(m, rng, 6);
    const NodeRef before = m.apply_binary(a, b, BinOp::Add);
    const NodeRef before_mul = m.apply_binary(a, b, BinOp::Mul);
    m.clear_compute_cache();
    CHECK(m.apply_binary(a, b, BinOp::Add) == before);
    CHECK(m.apply_binary(a, b, BinOp::Mul) == before_mul);
}

}  // TEST_SUITE

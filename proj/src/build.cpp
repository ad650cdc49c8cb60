#include "quidd/build.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace quidd {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t r = 1 % mod;
    base %= mod;
    while (exp != 0) {
        if (exp & 1) r = (r * base) % mod;
        base = (base * base) % mod;
        exp >>= 1;
    }
    return r;
}

int bits_needed(std::uint64_t v) {
    int b = 0;
    while ((1ull << b) < v) ++b;
    return b;
}

// DD over qubits q..n-1 whose nonzero paths are exactly the (sorted) global
// indices in [lo, hi), all carrying `amp`.
NodeRef sparse_state_rec(DDManager& m, const std::vector<std::uint64_t>& idx, std::size_t lo,
                         std::size_t hi, int q, int n, cplx amp) {
    if (lo == hi) return m.zero();
    if (q == n) return m.make_terminal(amp);
    const std::uint64_t bit = 1ull << (n - 1 - q);
    // indices are sorted, so the bit at this qubit splits the range
    const auto split = std::partition_point(
        idx.begin() + static_cast<std::ptrdiff_t>(lo), idx.begin() + static_cast<std::ptrdiff_t>(hi),
        [&](std::uint64_t v) { return (v & bit) == 0; });
    const std::size_t mid = static_cast<std::size_t>(split - idx.begin());
    const NodeRef lo_child = sparse_state_rec(m, idx, lo, mid, q + 1, n, amp);
    const NodeRef hi_child = sparse_state_rec(m, idx, mid, hi, q + 1, n, amp);
    return m.make_node(2 * static_cast<std::uint32_t>(q), hi_child, lo_child);
}

void append_grover_iteration(Circuit& c, int n) {
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) all[static_cast<std::size_t>(q)] = q;

    // oracle: phase-flip of |1...1> on the data qubits, routed through the
    // ancilla held in |->; realized as X^n CPS X^n conjugated by H on the
    // ancilla (a global -1 relative to the textbook multi-controlled NOT)
    c.add(Gate::h(n - 1));
    for (int q = 0; q < n; ++q) c.add(Gate::x(q));
    c.add(Gate::cps(all));
    for (int q = 0; q < n; ++q) c.add(Gate::x(q));
    c.add(Gate::h(n - 1));

    // diffusion on the data qubits
    std::vector<int> data(all.begin(), all.end() - 1);
    for (int q = 0; q + 1 < n; ++q) c.add(Gate::h(q));
    c.add(Gate::cps(data));
    for (int q = 0; q + 1 < n; ++q) c.add(Gate::h(q));
}

}  // namespace

QuIDD build_state(DDManager& m, const Circuit& c) {
    c.validate();
    std::vector<bool> bits(static_cast<std::size_t>(c.n_qubits), false);
    for (int q = 0; q < c.n_qubits; ++q) bits[static_cast<std::size_t>(q)] = c.initial_bit(q);
    QuIDD state = make_basis_state(m, bits);
    for (const Gate& g : c.gates) {
        state = matmul(lift_gate(m, g, c.n_qubits), state);
        m.clear_compute_cache();
    }
    const cplx norm2 = inner_product(state, state);
    if (std::abs(norm2 - cplx{1.0, 0.0}) > kEps)
        throw NumericError("build_state: state norm drifted from 1");
    return state;
}

QuIDD build_operator(DDManager& m, const Circuit& c) {
    c.validate();
    QuIDD op = make_identity(m, c.n_qubits);
    for (const Gate& g : c.gates) {
        op = matmul(lift_gate(m, g, c.n_qubits), op);
        m.clear_compute_cache();
    }
    return op;
}

Circuit toffoli_circuit() {
    Circuit c(3);
    c.add(Gate::ccx(0, 1, 2));
    return c;
}

Circuit margolus_circuit() {
    Circuit c(3);
    c.add(Gate::ry(2, kPi / 4));
    c.add(Gate::cx(1, 2));
    c.add(Gate::ry(2, kPi / 4));
    c.add(Gate::cx(0, 2));
    c.add(Gate::ry(2, -kPi / 4));
    c.add(Gate::cx(1, 2));
    c.add(Gate::ry(2, -kPi / 4));
    return c;
}

Circuit grover_iter_circuit(int n, int iterations) {
    if (n < 2) throw std::invalid_argument("grover_iter: need at least 2 qubits");
    if (iterations < 1) throw std::invalid_argument("grover_iter: need at least 1 iteration");
    Circuit c(n);
    c.initial.assign(static_cast<std::size_t>(n), false);
    c.initial[static_cast<std::size_t>(n - 1)] = true;
    for (int q = 0; q < n; ++q) c.add(Gate::h(q));
    for (int it = 0; it < iterations; ++it) append_grover_iteration(c, n);
    return c;
}

Circuit remote_epr_circuit(int n) {
    if (n < 2) throw std::invalid_argument("remote_epr: need at least 2 qubits");
    Circuit c(n);
    c.add(Gate::h(0));
    c.add(Gate::cx(0, 1));
    for (int q = 1; q + 1 < n; ++q) {
        c.add(Gate::cx(q, q + 1));
        c.add(Gate::cx(q + 1, q));
    }
    return c;
}

Circuit epr_phased_target_circuit(int n, double theta0, double theta1) {
    Circuit c = remote_epr_circuit(n);
    // rz twists |0...0> by e^{i theta0}; the trailing phase gate lifts the
    // |10...1> branch from e^{-i theta0} to e^{i theta1}
    c.add(Gate::rz(0, -theta0));
    c.add(Gate::phase(0, theta0 + theta1));
    return c;
}

Circuit hamiltonian_zz_circuit(int n, double dt) {
    if (n < 2) throw std::invalid_argument("hamiltonian_zz: need at least 2 qubits");
    if (!std::isfinite(dt)) throw std::invalid_argument("hamiltonian_zz: bad dt");
    Circuit c(n);
    for (int q = 0; q + 1 < n; ++q) c.add(Gate::cx(q, n - 1));
    c.add(Gate::rz(n - 1, dt));
    for (int q = n - 2; q >= 0; --q) c.add(Gate::cx(q, n - 1));
    return c;
}

QuIDD inverse_qft_operator(DDManager& m, int n) {
    if (n < 1 || n > 10) throw std::invalid_argument("inverse_qft: n must be in [1, 10]");
    const std::uint64_t dim = 1ull << n;
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    return operator_from_entries(m, n, [&](std::uint64_t row, std::uint64_t col) {
        const std::uint64_t jk = (row * col) % dim;
        return std::polar(scale, -2.0 * kPi * static_cast<double>(jk) / static_cast<double>(dim));
    });
}

QuIDD modexp_state(DDManager& m, std::uint64_t modulus, std::uint64_t base) {
    if (modulus < 2) throw std::invalid_argument("modexp_state: modulus must be >= 2");
    if (base < 2 || base >= modulus)
        throw std::invalid_argument("modexp_state: base must be in [2, modulus)");
    const int xb = bits_needed(modulus);
    const int fb = xb;
    const int n = xb + fb;
    if (n > 20) throw std::invalid_argument("modexp_state: total qubits exceed 20");

    // qubit 0 is the most significant index bit globally, but the first
    // qubit of each register carries that register's least significant bit
    std::vector<std::uint64_t> indices;
    indices.reserve(1ull << xb);
    for (std::uint64_t x = 0; x < (1ull << xb); ++x) {
        const std::uint64_t f = powmod(base, x, modulus);
        std::uint64_t idx = 0;
        for (int b = 0; b < xb; ++b)
            if ((x >> b) & 1) idx |= 1ull << (n - 1 - b);
        for (int b = 0; b < fb; ++b)
            if ((f >> b) & 1) idx |= 1ull << (n - 1 - (xb + b));
        indices.push_back(idx);
    }
    std::sort(indices.begin(), indices.end());
    const cplx amp{1.0 / std::sqrt(std::ldexp(1.0, xb)), 0.0};
    const NodeRef root = sparse_state_rec(m, indices, 0, indices.size(), 0, n, amp);
    return {root, n, DDKind::State, false, &m};
}

std::variant<Circuit, QuIDD> benchmark(DDManager& m, BenchKind kind, const BenchParams& p) {
    switch (kind) {
        case BenchKind::GroverIter: return grover_iter_circuit(p.n);
        case BenchKind::RemoteEpr: return remote_epr_circuit(p.n);
        case BenchKind::HamiltonianZZ: return hamiltonian_zz_circuit(p.n, p.dt);
        case BenchKind::InverseQft: return inverse_qft_operator(m, p.n);
        case BenchKind::ModExpState: return modexp_state(m, p.modulus, p.base);
        case BenchKind::Margolus: return margolus_circuit();
        case BenchKind::Toffoli: return toffoli_circuit();
    }
    throw std::invalid_argument("benchmark: unknown kind");
}

}  // namespace quidd

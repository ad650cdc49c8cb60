#pragma once

#include <cstdint>
#include <variant>

#include "quidd/circuit.hpp"
#include "quidd/quidd.hpp"

namespace quidd {

/// Applies the lifted gates in file order to the initial basis state.
/// The result is checked to be unit norm within kEps.
QuIDD build_state(DDManager& m, const Circuit& c);

/// Product of the lifted gates in circuit order; later gates multiply on
/// the left. The empty circuit yields the identity.
QuIDD build_operator(DDManager& m, const Circuit& c);

// --- benchmark circuit/state generators ---

Circuit toffoli_circuit();

/// Ry(pi/4) ladder with three CNOTs; equal to the Toffoli gate up to
/// relative phase.
Circuit margolus_circuit();

/// One Grover iteration on n-1 data qubits plus one oracle ancilla
/// (qubit n-1). The oracle marks the all-ones item. When iterations > 1
/// the iteration block repeats.
Circuit grover_iter_circuit(int n, int iterations = 1);

/// H then a nearest-neighbor CNOT ladder; ends in
/// (1/sqrt 2)(|00...0> + |10...1>).
Circuit remote_epr_circuit(int n);

/// remote_epr_circuit plus a diagonal twist putting phase e^{i theta0} on
/// |00...0> and e^{i theta1} on |10...1>.
Circuit epr_phased_target_circuit(int n, double theta0 = 0.345, double theta1 = 0.457);

/// CNOT parity ladder into the work qubit (n-1), exp(-i dt Z) on it, and
/// the mirrored ladder; a diagonal operator with entries e^{+-i dt}.
Circuit hamiltonian_zz_circuit(int n, double dt);

/// Inverse quantum Fourier transform as an explicit operator,
/// entry(j, k) = omega^{-jk} / sqrt(2^n). Capped at n <= 10.
QuIDD inverse_qft_operator(DDManager& m, int n);

/// Superposition of |x>|a^x mod N> over all x. Both registers have
/// ceil(log2 N) qubits; the first qubit of each register holds its least
/// significant bit. Total qubits capped at 20.
QuIDD modexp_state(DDManager& m, std::uint64_t modulus, std::uint64_t base);

enum class BenchKind { GroverIter, RemoteEpr, HamiltonianZZ, InverseQft, ModExpState, Margolus, Toffoli };

struct BenchParams {
    int n = 0;
    double dt = 0.0;
    std::uint64_t modulus = 0;
    std::uint64_t base = 0;
};

/// Unified benchmark entry point; returns a circuit, or a QuIDD for the
/// directly-constructed benchmarks (inverse QFT, modexp state).
std::variant<Circuit, QuIDD> benchmark(DDManager& m, BenchKind kind, const BenchParams& p);

}  // namespace quidd

#pragma once

#include <functional>
#include <span>

#include "quidd/circuit.hpp"
#include "quidd/dd.hpp"

namespace quidd {

enum class DDKind { State, Operator };

/// A rooted DD over n qubits, tagged as a state vector (row variables only)
/// or an operator (interleaved row/column variables). Value type; the
/// manager must outlive it.
struct QuIDD {
    NodeRef root = kNilRef;
    int n_qubits = 0;
    DDKind kind = DDKind::State;
    bool bra = false;  // set when a state has been conjugate-transposed
    DDManager* mgr = nullptr;

    DDManager& manager() const { return *mgr; }
    bool same_shape(const QuIDD& other) const {
        return mgr == other.mgr && n_qubits == other.n_qubits && kind == other.kind;
    }
};

/// |b_0 b_1 ... b_{n-1}> with qubit 0 the most significant index bit.
QuIDD make_basis_state(DDManager& m, const std::vector<bool>& bits);

/// State DD from a flat amplitude vector of length 2^n (index bit 0 = qubit 0
/// = most significant). Rejects all-zero and non-finite vectors; does not
/// renormalize.
QuIDD state_from_amplitudes(DDManager& m, std::span<const cplx> amps, int n_qubits);

QuIDD make_identity(DDManager& m, int n);

/// Operator DD from an explicit entry function (row, col) -> amplitude.
/// Cost is Theta(4^n); intended for small direct-definition operators.
QuIDD operator_from_entries(DDManager& m, int n,
                            const std::function<cplx(std::uint64_t, std::uint64_t)>& entry);

/// Operator: swaps row/column roles and conjugates terminals. State:
/// conjugates terminals and flips the bra flag.
QuIDD conj_transpose(const QuIDD& a);

/// Matrix product (operator x operator) or matrix-vector product
/// (operator x state) by recursive block decomposition.
QuIDD matmul(const QuIDD& a, const QuIDD& b);

/// <a|b> with the conjugation applied to a internally. Paths that skip k
/// variables contribute their value 2^k times.
cplx inner_product(const QuIDD& a, const QuIDD& b);

enum class ModulusMode { Modulus, CeilModulus };

QuIDD modulus_map(const QuIDD& a, ModulusMode mode);

QuIDD scalar_mul(const QuIDD& a, cplx c);
QuIDD scalar_div(const QuIDD& a, cplx c);

/// n-qubit operator equal to g on its qubits tensored with identity
/// elsewhere, built directly in interleaved variable order.
QuIDD lift_gate(DDManager& m, const Gate& g, int n);

}  // namespace quidd

#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "quidd/circuit.hpp"
#include "quidd/quidd.hpp"

// Brute-force reference implementation over flat vectors and matrices.
// Deliberately shares no arithmetic with the DD engine; it only reads DD
// structure for cross-checking.
namespace quidd::dense {

using cvec = std::vector<std::complex<double>>;

struct DenseState {
    int n_qubits = 0;
    cvec amps;  // length 2^n, qubit 0 = most significant index bit
};

struct DenseOperator {
    int n_qubits = 0;
    cvec entries;  // row-major 2^n x 2^n

    std::complex<double>& at(std::uint64_t row, std::uint64_t col) {
        return entries[(row << n_qubits) | col];
    }
    std::complex<double> at(std::uint64_t row, std::uint64_t col) const {
        return entries[(row << n_qubits) | col];
    }
};

/// Textbook simulation of the circuit from its initial basis state (n <= 12).
DenseState dense_state(const Circuit& c);

/// The circuit's full unitary, later gates multiplying on the left (n <= 8).
DenseOperator dense_operator(const Circuit& c);

enum class Level { Exact, Global, Relative };
enum class DiagSide { None, Left, Right, Both };

struct DenseVerdict {
    bool equivalent = false;
    std::optional<std::complex<double>> phase;  // global: b = phase * a
    std::optional<cvec> phases;   // relative: per-index factors, b = diag(phases) applied to a
    DiagSide side = DiagSide::None;
};

DenseVerdict dense_equiv(const DenseState& a, const DenseState& b, Level level);
DenseVerdict dense_equiv(const DenseOperator& a, const DenseOperator& b, Level level);

/// Expands the QuIDD by path enumeration (skipped variables fan out) and
/// returns the max absolute entrywise difference.
double cross_check(const QuIDD& q, const DenseState& d);
double cross_check(const QuIDD& q, const DenseOperator& d);

cvec expand_state(const QuIDD& q);
cvec expand_operator(const QuIDD& q);  // row-major

}  // namespace quidd::dense

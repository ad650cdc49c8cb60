#pragma once

#include <optional>

#include "quidd/quidd.hpp"

namespace quidd {

enum class Outcome {
    ExactEqual,
    GlobalPhase,     // B = phase * A
    RelativePhase,   // B = diagonal-of-phases applied to A
    NotEquivalent,
    FilterPassed,    // necessary condition held; equivalence not decided
    FilterFailed,
};

enum class Method {
    Exact,
    NodeCount,
    GlobalInner,
    GlobalMatrix,
    Gprc,
    RelModInner,
    RelModMatrix,
    ElemDivStates,
    RpDivOperators,
    NonZeroMerge,
    ModDDCompare,
};

/// Which side the diagonal acts on for operator relative phase:
/// Left means B = diag(w) * A (w indexed by row), Right means
/// B = A * diag(w) (w indexed by column). State phase vectors use State.
enum class PhaseSide { State, Left, Right };

struct CheckStats {
    std::size_t nodes_a = 0;
    std::size_t nodes_b = 0;
    std::size_t visited = 0;  // nodes touched by the recursive checks
    double check_ms = 0.0;
    std::vector<Method> ran;      // pipeline methods executed (auto_check)
    std::vector<Method> skipped;  // methods short-circuited away
};

/// Outcome of one equivalence check. Phases, where produced, always relate
/// the second operand to the first: B = phase * A, or B = diag(phases) o A.
struct EquivVerdict {
    Outcome outcome = Outcome::NotEquivalent;
    Method method = Method::Exact;
    std::optional<cplx> phase;     // GlobalPhase only
    std::optional<QuIDD> phases;   // RelativePhase with computed factors
    PhaseSide side = PhaseSide::State;
    bool also_right = false;       // rp_div: the Right decomposition holds too
    CheckStats stats;

    [[nodiscard]] bool equivalent() const {
        return outcome == Outcome::ExactEqual || outcome == Outcome::GlobalPhase ||
               outcome == Outcome::RelativePhase;
    }
};

const char* to_string(Outcome o);
const char* to_string(Method m);

/// Root-handle comparison; O(1) by canonicity.
EquivVerdict exact_equal(const QuIDD& a, const QuIDD& b);

/// Equal node counts are necessary but not sufficient for global-phase
/// equivalence; never claims equivalence.
EquivVerdict node_count_filter(const QuIDD& a, const QuIDD& b);

/// <A|B> has unit modulus iff the states differ by a global phase.
EquivVerdict global_inner_product(const QuIDD& a, const QuIDD& b);

/// A * B^dagger equals a unit scalar times the identity iff the operators
/// differ by a global phase.
EquivVerdict global_matrix_product(const QuIDD& a, const QuIDD& b);

/// Lockstep recursive descent over both DDs accumulating the terminal
/// ratio; O(|A| + |B|). Works for states and operators.
EquivVerdict gprc(const QuIDD& a, const QuIDD& b);

/// Inner product of the modulus-mapped states. Decides relative-phase
/// equivalence but produces no phase factors.
EquivVerdict rel_mod_inner(const QuIDD& a, const QuIDD& b);

/// Modulus-matrix product comparison. Necessary-condition filter only:
/// equality of |U| |V|^T with |V| |V|^T does not pin one-sided phases.
EquivVerdict rel_mod_matrix(const QuIDD& a, const QuIDD& b);

/// Guarded element-wise division of states; on success the verdict carries
/// the phase-vector DD with B = diag(phases) A.
EquivVerdict elementwise_div_states(const QuIDD& a, const QuIDD& b);

/// Sentinel-based element-wise division for operators, run once per
/// absorbed variable type. Detects B = diag(w) A (Left) and B = A diag(w)
/// (Right); Left is reported when both hold.
EquivVerdict rp_div_operators(const QuIDD& a, const QuIDD& b);

/// Zero-location agreement via ceil-modulus maps; necessary only.
EquivVerdict non_zero_terminal_merge(const QuIDD& a, const QuIDD& b);

/// Root comparison of modulus maps. Decisive for states; a filter for
/// operators (entrywise modulus equality does not force one-sided phases).
EquivVerdict mod_dd_compare(const QuIDD& a, const QuIDD& b);

enum class CheckLevel { Exact, Global, Relative };

/// Filter-then-decide pipeline. Filters may only short-circuit to
/// NotEquivalent; the decisive method's verdict wins otherwise.
EquivVerdict auto_check(const QuIDD& a, const QuIDD& b, CheckLevel level);

}  // namespace quidd

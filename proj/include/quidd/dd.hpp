#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace quidd {

using cplx = std::complex<double>;

/// Absolute grid used to canonicalize terminal values in the unique table.
/// Two values whose components round to the same multiple of the grid are
/// the same terminal node.
inline constexpr double kTerminalGrid = 1e-10;

/// Absolute tolerance for equality decisions on complex values everywhere
/// outside the unique table (phase comparisons, unit-modulus tests, ...).
inline constexpr double kEps = 1e-9;

inline bool approx_equal(cplx a, cplx b, double eps = kEps) {
    return std::abs(a - b) <= eps;
}
inline bool approx_unit_modulus(cplx v, double eps = kEps) {
    return std::abs(std::abs(v) - 1.0) <= eps;
}

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// Variable-order violation in ite().
struct OrderError : Error {
    using Error::Error;
};
/// Non-finite terminal values, norm violations.
struct NumericError : Error {
    using Error::Error;
};
/// Unguarded division by zero and friends.
struct ArithmeticError : Error {
    using Error::Error;
};

/// A decision variable: the row or column index bit of one qubit.
/// The global order interleaves rows and columns, R0 < C0 < R1 < C1 < ...
/// State DDs use row variables only.
struct VarId {
    enum class Kind : std::uint8_t { Row, Col };

    Kind kind = Kind::Row;
    int qubit = 0;

    static VarId row(int q) { return {Kind::Row, q}; }
    static VarId col(int q) { return {Kind::Col, q}; }

    [[nodiscard]] std::uint32_t level() const {
        return static_cast<std::uint32_t>(2 * qubit) + (kind == Kind::Col ? 1u : 0u);
    }
    static VarId from_level(std::uint32_t lvl) {
        return {(lvl & 1u) != 0 ? Kind::Col : Kind::Row, static_cast<int>(lvl / 2)};
    }

    [[nodiscard]] std::string str() const {
        return (kind == Kind::Row ? "R" : "C") + std::to_string(qubit);
    }

    bool operator==(const VarId&) const = default;
    auto operator<=>(const VarId& other) const { return level() <=> other.level(); }
};

/// Manager-scoped node handle. Structural equality of DDs is handle equality.
using NodeRef = std::uint32_t;

inline constexpr NodeRef kNilRef = 0xFFFFFFFFu;
/// Top bit distinguishes terminal handles from internal-node handles.
inline constexpr NodeRef kTerminalBit = 0x80000000u;
/// Pseudo-level of terminals; larger than any variable level.
inline constexpr std::uint32_t kTerminalLevel = 0xFFFFFFFFu;

inline bool is_terminal_ref(NodeRef r) { return (r & kTerminalBit) != 0; }

/// Built-in pointwise operations for apply_binary. Tag values key the
/// compute cache; user recursions take tags >= kUserTagBase.
enum class BinOp : std::uint32_t {
    Add = 1,
    Sub,
    Mul,
    Div,         // errors on any zero divisor
    GuardedDiv,  // 0/0 -> 1, x/0 and 0/x -> 0
    MinModulus,  // operand of smaller modulus, first on ties
};

enum class UnOp : std::uint32_t {
    Conjugate = 16,
    Modulus,
    CeilModulus,  // 0 if |x| <= kEps else 1
};

inline constexpr std::uint32_t kUserTagBase = 64;

struct DDStats {
    std::size_t node_count = 0;               // internal + terminal nodes reachable
    std::vector<VarId> support;               // variables on some path, in order
    std::vector<cplx> terminal_values;        // distinct reachable terminal values
};

/// Reduced, ordered, hash-consed decision diagram manager with complex
/// terminals. Nodes live for the manager's lifetime (arena style, no GC).
/// A manager and its handles are confined to one thread at a time.
class DDManager {
public:
    DDManager();
    DDManager(const DDManager&) = delete;
    DDManager& operator=(const DDManager&) = delete;

    /// Unique terminal for v's grid-canonical key. The stored value is the
    /// snapped one, so construction order cannot influence downstream
    /// arithmetic.
    NodeRef make_terminal(cplx v);

    NodeRef zero() const { return zero_; }
    NodeRef one() const { return one_; }

    /// Validated node constructor: var must strictly precede the top
    /// variables of both children. Returns then_node when both children
    /// coincide (reduction rule).
    NodeRef ite(VarId var, NodeRef then_node, NodeRef else_node);

    /// Unchecked find-or-create; callers maintain the order invariant.
    NodeRef make_node(std::uint32_t level, NodeRef then_node, NodeRef else_node);

    bool is_terminal(NodeRef r) const { return is_terminal_ref(r); }
    std::uint32_t level(NodeRef r) const {
        return is_terminal_ref(r) ? kTerminalLevel : nodes_[r].level;
    }
    VarId var(NodeRef r) const { return VarId::from_level(nodes_[r].level); }
    cplx value(NodeRef r) const { return terminal_values_[r & ~kTerminalBit]; }
    NodeRef then_child(NodeRef r) const { return nodes_[r].hi; }
    NodeRef else_child(NodeRef r) const { return nodes_[r].lo; }

    /// Cofactor of r with respect to the variable at lvl. A node whose top
    /// variable lies below lvl is constant in it and is its own cofactor.
    NodeRef cofactor(NodeRef r, std::uint32_t lvl, bool positive) const {
        if (is_terminal_ref(r) || nodes_[r].level > lvl) return r;
        return positive ? nodes_[r].hi : nodes_[r].lo;
    }

    /// Pointwise binary combination of two DDs (the Apply algorithm).
    NodeRef apply_binary(NodeRef a, NodeRef b, BinOp op);

    /// Pointwise unary map over one DD; each node visited once.
    NodeRef apply_unary(NodeRef a, UnOp op);

    NodeRef scalar_mul(NodeRef a, cplx c);
    NodeRef scalar_div(NodeRef a, cplx c);

    /// Compute-cache access for user recursions (tag >= kUserTagBase). The
    /// cache is lossy: entries may be evicted at any time, so it must only
    /// memoize deterministic functions of (tag, a, b).
    bool cache_lookup(std::uint32_t tag, NodeRef a, NodeRef b, NodeRef& out) const;
    void cache_insert(std::uint32_t tag, NodeRef a, NodeRef b, NodeRef result);

    /// Drops all memoized operation results. Never changes any operation's
    /// result root, only its cost.
    void clear_compute_cache();

    /// Reachable node count (internal + terminals), memoized per root.
    std::size_t node_count(NodeRef root);

    DDStats stats(NodeRef root) const;

    std::size_t live_internal_nodes() const { return nodes_.size(); }
    std::size_t live_terminals() const { return terminal_values_.size(); }

private:
    struct Node {
        std::uint32_t level;
        NodeRef hi;
        NodeRef lo;
    };

    struct CacheEntry {
        std::uint32_t tag = 0;  // 0 = empty
        NodeRef a = 0;
        NodeRef b = 0;
        NodeRef result = kNilRef;
    };

    NodeRef apply_rec(NodeRef a, NodeRef b, std::uint32_t tag, bool commutative,
                      cplx (*fn)(cplx, cplx));
    NodeRef apply_unary_rec(NodeRef a, std::uint32_t tag, cplx (*fn)(cplx));

    void grow_unique_table();
    std::size_t cache_slot(std::uint32_t tag, NodeRef a, NodeRef b) const;

    std::vector<Node> nodes_;
    std::vector<cplx> terminal_values_;

    // open-addressing unique table over internal-node refs
    std::vector<NodeRef> unique_table_;

    // terminal unique table keyed by the grid-quantized components
    std::unordered_map<std::uint64_t, std::vector<NodeRef>> terminal_table_;

    // direct-mapped lossy compute cache
    std::vector<CacheEntry> cache_;
    std::size_t cache_inserts_ = 0;

    std::unordered_map<NodeRef, std::size_t> count_memo_;

    NodeRef zero_ = kNilRef;
    NodeRef one_ = kNilRef;
};

}  // namespace quidd

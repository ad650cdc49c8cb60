#include "quidd/dd.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace quidd {

namespace {

constexpr std::size_t kInitialTableSize = 1u << 12;
constexpr std::size_t kInitialCacheSize = 1u << 14;
constexpr std::size_t kMaxCacheSize = 1u << 21;

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t hash3(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix64(a ^ mix64(b ^ mix64(c)));
}

double snap(double x) {
    return std::round(x / kTerminalGrid) * kTerminalGrid;
}

std::int64_t grid_key(double x) {
    return static_cast<std::int64_t>(std::llround(x / kTerminalGrid));
}

cplx op_add(cplx a, cplx b) { return a + b; }
cplx op_sub(cplx a, cplx b) { return a - b; }
cplx op_mul(cplx a, cplx b) { return a * b; }

cplx op_div(cplx a, cplx b) {
    if (b == cplx{0.0, 0.0}) throw ArithmeticError("apply: division by zero terminal");
    return a / b;
}

cplx op_guarded_div(cplx a, cplx b) {
    const bool az = a == cplx{0.0, 0.0};
    const bool bz = b == cplx{0.0, 0.0};
    if (az && bz) return {1.0, 0.0};
    if (az || bz) return {0.0, 0.0};
    return a / b;
}

cplx op_min_modulus(cplx a, cplx b) { return std::abs(a) <= std::abs(b) ? a : b; }

cplx op_conj(cplx a) { return std::conj(a); }
cplx op_modulus(cplx a) { return {std::abs(a), 0.0}; }
cplx op_ceil_modulus(cplx a) { return {std::abs(a) <= kEps ? 0.0 : 1.0, 0.0}; }

}  // namespace

DDManager::DDManager() {
    unique_table_.assign(kInitialTableSize, kNilRef);
    cache_.assign(kInitialCacheSize, CacheEntry{});
    zero_ = make_terminal({0.0, 0.0});
    one_ = make_terminal({1.0, 0.0});
}

NodeRef DDManager::make_terminal(cplx v) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw NumericError("make_terminal: non-finite value");
    const cplx snapped{snap(v.real()), snap(v.imag())};
    const std::uint64_t key =
        hash3(static_cast<std::uint64_t>(grid_key(v.real())),
              static_cast<std::uint64_t>(grid_key(v.imag())), 0x7e7e7e7eull);
    auto& bucket = terminal_table_[key];
    for (NodeRef r : bucket) {
        if (terminal_values_[r & ~kTerminalBit] == snapped) return r;
    }
    const NodeRef r = static_cast<NodeRef>(terminal_values_.size()) | kTerminalBit;
    terminal_values_.push_back(snapped);
    bucket.push_back(r);
    return r;
}

NodeRef DDManager::ite(VarId v, NodeRef then_node, NodeRef else_node) {
    const std::uint32_t lvl = v.level();
    if (lvl >= level(then_node) || lvl >= level(else_node))
        throw OrderError("ite: variable " + v.str() +
                         " does not precede the top variables of its children");
    return make_node(lvl, then_node, else_node);
}

NodeRef DDManager::make_node(std::uint32_t lvl, NodeRef then_node, NodeRef else_node) {
    if (then_node == else_node) return then_node;

    const std::uint64_t h = hash3(lvl, then_node, else_node);
    const std::size_t mask = unique_table_.size() - 1;
    std::size_t slot = h & mask;
    while (unique_table_[slot] != kNilRef) {
        const NodeRef cand = unique_table_[slot];
        const Node& n = nodes_[cand];
        if (n.level == lvl && n.hi == then_node && n.lo == else_node) return cand;
        slot = (slot + 1) & mask;
    }
    const NodeRef r = static_cast<NodeRef>(nodes_.size());
    nodes_.push_back(Node{lvl, then_node, else_node});
    unique_table_[slot] = r;
    if (2 * nodes_.size() >= unique_table_.size()) grow_unique_table();
    return r;
}

void DDManager::grow_unique_table() {
    std::vector<NodeRef> bigger(unique_table_.size() * 2, kNilRef);
    const std::size_t mask = bigger.size() - 1;
    for (NodeRef r = 0; r < nodes_.size(); ++r) {
        const Node& n = nodes_[r];
        std::size_t slot = hash3(n.level, n.hi, n.lo) & mask;
        while (bigger[slot] != kNilRef) slot = (slot + 1) & mask;
        bigger[slot] = r;
    }
    unique_table_ = std::move(bigger);
}

std::size_t DDManager::cache_slot(std::uint32_t tag, NodeRef a, NodeRef b) const {
    return hash3(tag, a, b) & (cache_.size() - 1);
}

bool DDManager::cache_lookup(std::uint32_t tag, NodeRef a, NodeRef b, NodeRef& out) const {
    const CacheEntry& e = cache_[cache_slot(tag, a, b)];
    if (e.tag == tag && e.a == a && e.b == b) {
        out = e.result;
        return true;
    }
    return false;
}

void DDManager::cache_insert(std::uint32_t tag, NodeRef a, NodeRef b, NodeRef result) {
    if (++cache_inserts_ > cache_.size() && cache_.size() < kMaxCacheSize) {
        cache_.assign(cache_.size() * 2, CacheEntry{});
        cache_inserts_ = 0;
    }
    cache_[cache_slot(tag, a, b)] = CacheEntry{tag, a, b, result};
}

void DDManager::clear_compute_cache() {
    cache_.assign(cache_.size(), CacheEntry{});
    cache_inserts_ = 0;
}

NodeRef DDManager::apply_binary(NodeRef a, NodeRef b, BinOp op) {
    switch (op) {
        case BinOp::Add: return apply_rec(a, b, static_cast<std::uint32_t>(op), true, op_add);
        case BinOp::Sub: return apply_rec(a, b, static_cast<std::uint32_t>(op), false, op_sub);
        case BinOp::Mul: return apply_rec(a, b, static_cast<std::uint32_t>(op), true, op_mul);
        case BinOp::Div: return apply_rec(a, b, static_cast<std::uint32_t>(op), false, op_div);
        case BinOp::GuardedDiv:
            return apply_rec(a, b, static_cast<std::uint32_t>(op), false, op_guarded_div);
        case BinOp::MinModulus:
            return apply_rec(a, b, static_cast<std::uint32_t>(op), false, op_min_modulus);
    }
    throw Error("apply_binary: unknown op");
}

NodeRef DDManager::apply_rec(NodeRef a, NodeRef b, std::uint32_t tag, bool commutative,
                             cplx (*fn)(cplx, cplx)) {
    // terminal-absorbing shortcuts
    switch (static_cast<BinOp>(tag)) {
        case BinOp::Add:
            if (a == zero_) return b;
            if (b == zero_) return a;
            break;
        case BinOp::Sub:
            if (b == zero_) return a;
            if (a == b) return zero_;
            break;
        case BinOp::Mul:
            if (a == zero_ || b == zero_) return zero_;
            if (a == one_) return b;
            if (b == one_) return a;
            break;
        case BinOp::GuardedDiv:
            if (a == b) return one_;
            break;
        default: break;
    }

    if (is_terminal_ref(a) && is_terminal_ref(b)) return make_terminal(fn(value(a), value(b)));

    if (commutative && a > b) std::swap(a, b);
    NodeRef hit;
    if (cache_lookup(tag, a, b, hit)) return hit;

    const std::uint32_t lvl = std::min(level(a), level(b));
    const NodeRef t = apply_rec(cofactor(a, lvl, true), cofactor(b, lvl, true), tag, commutative, fn);
    const NodeRef e =
        apply_rec(cofactor(a, lvl, false), cofactor(b, lvl, false), tag, commutative, fn);
    const NodeRef r = make_node(lvl, t, e);
    cache_insert(tag, a, b, r);
    return r;
}

NodeRef DDManager::apply_unary(NodeRef a, UnOp op) {
    switch (op) {
        case UnOp::Conjugate: return apply_unary_rec(a, static_cast<std::uint32_t>(op), op_conj);
        case UnOp::Modulus: return apply_unary_rec(a, static_cast<std::uint32_t>(op), op_modulus);
        case UnOp::CeilModulus:
            return apply_unary_rec(a, static_cast<std::uint32_t>(op), op_ceil_modulus);
    }
    throw Error("apply_unary: unknown op");
}

NodeRef DDManager::apply_unary_rec(NodeRef a, std::uint32_t tag, cplx (*fn)(cplx)) {
    if (is_terminal_ref(a)) return make_terminal(fn(value(a)));
    NodeRef hit;
    if (cache_lookup(tag, a, kNilRef, hit)) return hit;
    const Node& n = nodes_[a];
    const NodeRef t = apply_unary_rec(n.hi, tag, fn);
    const NodeRef e = apply_unary_rec(n.lo, tag, fn);
    const NodeRef r = make_node(n.level, t, e);
    cache_insert(tag, a, kNilRef, r);
    return r;
}

NodeRef DDManager::scalar_mul(NodeRef a, cplx c) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw NumericError("scalar_mul: non-finite scalar");
    if (c == cplx{1.0, 0.0}) return a;
    if (c == cplx{0.0, 0.0}) return zero_;
    return apply_binary(a, make_terminal(c), BinOp::Mul);
}

NodeRef DDManager::scalar_div(NodeRef a, cplx c) {
    if (c == cplx{0.0, 0.0}) throw ArithmeticError("scalar_div: division by zero");
    if (c == cplx{1.0, 0.0}) return a;
    return apply_binary(a, make_terminal(c), BinOp::Div);
}

std::size_t DDManager::node_count(NodeRef root) {
    if (auto it = count_memo_.find(root); it != count_memo_.end()) return it->second;
    std::unordered_set<NodeRef> seen;
    std::vector<NodeRef> stack{root};
    while (!stack.empty()) {
        const NodeRef r = stack.back();
        stack.pop_back();
        if (!seen.insert(r).second) continue;
        if (!is_terminal_ref(r)) {
            stack.push_back(nodes_[r].hi);
            stack.push_back(nodes_[r].lo);
        }
    }
    count_memo_[root] = seen.size();
    return seen.size();
}

DDStats DDManager::stats(NodeRef root) const {
    DDStats out;
    std::unordered_set<NodeRef> seen;
    std::unordered_set<std::uint32_t> levels;
    std::vector<NodeRef> stack{root};
    while (!stack.empty()) {
        const NodeRef r = stack.back();
        stack.pop_back();
        if (!seen.insert(r).second) continue;
        if (is_terminal_ref(r)) {
            out.terminal_values.push_back(value(r));
        } else {
            levels.insert(nodes_[r].level);
            stack.push_back(nodes_[r].lo);
            stack.push_back(nodes_[r].hi);
        }
    }
    out.node_count = seen.size();
    for (std::uint32_t lvl : levels) out.support.push_back(VarId::from_level(lvl));
    std::sort(out.support.begin(), out.support.end());
    return out;
}

}  // namespace quidd

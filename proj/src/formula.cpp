#include "formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace tenc {

BitRef NodeStore::intern(Key key, SourcePos origin) {
    auto it = cons_.find(key);
    if (it != cons_.end()) return BitRef::node(it->second);
    NodeId id = (NodeId)nodes_.size();
    FormulaNode n;
    n.kind = key.kind;
    n.input_index = key.input_index;
    n.children = key.children;
    n.table = key.table;
    n.origin = origin;
    nodes_.push_back(std::move(n));
    cons_.emplace(std::move(key), id);
    return BitRef::node(id);
}

BitRef NodeStore::add_input(uint32_t input_index, SourcePos origin) {
    return intern(Key{NodeKind::Input, input_index, {}, {}}, origin);
}

bool NodeStore::is_not_of(NodeId a, NodeId b) const {
    const FormulaNode& na = nodes_[a];
    const FormulaNode& nb = nodes_[b];
    if (na.kind == NodeKind::Not && na.children[0] == b) return true;
    if (nb.kind == NodeKind::Not && nb.children[0] == a) return true;
    return false;
}

BitRef NodeStore::mk_not(BitRef a, SourcePos origin) {
    if (a.is_const()) return BitRef::constant(!a.const_value());
    const FormulaNode& n = nodes_[a.node_id()];
    if (n.kind == NodeKind::Not) return BitRef::node(n.children[0]);
    return intern(Key{NodeKind::Not, 0, {a.node_id()}, {}}, origin);
}

BitRef NodeStore::mk_nary(NodeKind kind, std::vector<BitRef> operands, SourcePos origin) {
    if (kind != NodeKind::And && kind != NodeKind::Or && kind != NodeKind::Xor)
        throw std::logic_error("mk_nary: bad kind");

    // constant folding
    bool xor_flip = false;
    std::vector<NodeId> kids;
    kids.reserve(operands.size());
    for (BitRef r : operands) {
        if (r.is_const()) {
            bool v = r.const_value();
            if (kind == NodeKind::And && !v) return BitRef::constant(false);
            if (kind == NodeKind::Or && v) return BitRef::constant(true);
            if (kind == NodeKind::Xor && v) xor_flip = !xor_flip;
            continue;  // identity element
        }
        kids.push_back(r.node_id());
    }

    std::sort(kids.begin(), kids.end());

    // idempotence / cancellation on sorted duplicates
    std::vector<NodeId> dedup;
    dedup.reserve(kids.size());
    for (size_t i = 0; i < kids.size();) {
        size_t j = i;
        while (j < kids.size() && kids[j] == kids[i]) ++j;
        size_t cnt = j - i;
        if (kind == NodeKind::Xor) {
            if (cnt & 1) dedup.push_back(kids[i]);  // x^x -> 0
        } else {
            dedup.push_back(kids[i]);               // x&x -> x
        }
        i = j;
    }
    kids = std::move(dedup);

    // complement pairs
    for (size_t i = 0; i < kids.size(); ++i) {
        for (size_t j = i + 1; j < kids.size(); ++j) {
            if (is_not_of(kids[i], kids[j])) {
                if (kind == NodeKind::And) return BitRef::constant(false);
                if (kind == NodeKind::Or) return BitRef::constant(true);
                // x ^ !x == 1: drop the pair, flip
                kids.erase(kids.begin() + j);
                kids.erase(kids.begin() + i);
                xor_flip = !xor_flip;
                --i;
                break;
            }
        }
    }

    BitRef result;
    if (kids.empty()) {
        result = BitRef::constant(kind == NodeKind::And);
    } else if (kids.size() == 1) {
        result = BitRef::node(kids[0]);
    } else {
        result = intern(Key{kind, 0, std::move(kids), {}}, origin);
    }
    if (kind == NodeKind::Xor && xor_flip) result = mk_not(result, origin);
    return result;
}

BitRef NodeStore::mk_ite(BitRef c, BitRef t, BitRef e, SourcePos origin) {
    if (c.is_const()) return c.const_value() ? t : e;
    if (t == e) return t;
    // normalize a negated condition away
    if (nodes_[c.node_id()].kind == NodeKind::Not)
        return mk_ite(BitRef::node(nodes_[c.node_id()].children[0]), e, t, origin);
    if (t.is_const() && e.is_const()) return t.const_value() ? c : mk_not(c, origin);
    if (t.is_const()) {
        return t.const_value() ? mk_or(c, e, origin) : mk_and(mk_not(c, origin), e, origin);
    }
    if (e.is_const()) {
        return e.const_value() ? mk_or(mk_not(c, origin), t, origin) : mk_and(c, t, origin);
    }
    return intern(Key{NodeKind::Ite, 0, {c.node_id(), t.node_id(), e.node_id()}, {}}, origin);
}

BitRef NodeStore::mk_table(std::vector<BitRef> children, std::vector<uint8_t> bits,
                           SourcePos origin) {
    if (children.size() > 16 || bits.size() != (size_t(1) << children.size()))
        throw std::logic_error("mk_table: bad arity or table size");
    std::vector<NodeId> kids;
    kids.reserve(children.size());
    for (BitRef r : children) {
        if (r.is_const()) throw std::logic_error("mk_table: constant child");
        kids.push_back(r.node_id());
    }
    bool all0 = true, all1 = true;
    for (uint8_t b : bits) (b ? all0 : all1) = false;
    if (all0) return BitRef::constant(false);
    if (all1) return BitRef::constant(true);
    return intern(Key{NodeKind::Table, 0, std::move(kids), std::move(bits)}, origin);
}

bool NodeStore::eval(BitRef root, const std::vector<uint8_t>& inputs,
                     std::vector<int8_t>& memo) const {
    if (root.is_const()) return root.const_value();
    NodeId top = root.node_id();
    // iterative post-order to avoid deep recursion on long chains
    std::vector<NodeId> stack{top};
    while (!stack.empty()) {
        NodeId id = stack.back();
        if (memo[id] >= 0) {
            stack.pop_back();
            continue;
        }
        const FormulaNode& n = nodes_[id];
        bool ready = true;
        for (NodeId c : n.children) {
            if (memo[c] < 0) {
                stack.push_back(c);
                ready = false;
            }
        }
        if (!ready) continue;
        stack.pop_back();
        bool v = false;
        switch (n.kind) {
            case NodeKind::Input:
                v = inputs.at(n.input_index) != 0;
                break;
            case NodeKind::And: {
                v = true;
                for (NodeId c : n.children) v = v && memo[c];
                break;
            }
            case NodeKind::Or: {
                v = false;
                for (NodeId c : n.children) v = v || memo[c];
                break;
            }
            case NodeKind::Xor: {
                v = false;
                for (NodeId c : n.children) v = v != (memo[c] != 0);
                break;
            }
            case NodeKind::Not:
                v = !memo[n.children[0]];
                break;
            case NodeKind::Ite:
                v = memo[n.children[0]] ? memo[n.children[1]] : memo[n.children[2]];
                break;
            case NodeKind::Table: {
                size_t row = 0;
                for (size_t i = 0; i < n.children.size(); ++i)
                    if (memo[n.children[i]]) row |= size_t(1) << i;
                v = n.table[row] != 0;
                break;
            }
        }
        memo[id] = v ? 1 : 0;
    }
    return memo[top] != 0;
}

}  // namespace tenc

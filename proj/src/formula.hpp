#ifndef TENC_FORMULA_HPP
#define TENC_FORMULA_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "diag.hpp"

namespace tenc {

using NodeId = uint32_t;

enum class NodeKind : uint8_t { Input, And, Or, Xor, Not, Ite, Table };

// Value of one abstract-machine memory cell: a Boolean constant or a
// reference into the node store.
struct BitRef {
    uint32_t raw = 0;  // 0 -> const 0, 1 -> const 1, otherwise node id + 2

    static BitRef constant(bool v) { return BitRef{v ? 1u : 0u}; }
    static BitRef node(NodeId id) { return BitRef{id + 2}; }

    bool is_const() const { return raw < 2; }
    bool const_value() const { return raw == 1; }
    NodeId node_id() const { return raw - 2; }

    bool operator==(const BitRef& o) const { return raw == o.raw; }
    bool operator!=(const BitRef& o) const { return raw != o.raw; }
    bool operator<(const BitRef& o) const { return raw < o.raw; }
};

struct FormulaNode {
    NodeKind kind;
    uint32_t input_index = 0;         // Input only
    std::vector<NodeId> children;     // And/Or/Xor: 2..k (sorted); Not: 1; Ite: cond,then,else
    std::vector<uint8_t> table;       // Table: 2^k entries, child 0 is the row LSB
    SourcePos origin;
};

// Append-only hash-consed DAG. Children always precede their parents, so
// iteration in id order is a topological order.
class NodeStore {
  public:
    const FormulaNode& node(NodeId id) const { return nodes_[id]; }
    size_t size() const { return nodes_.size(); }

    BitRef add_input(uint32_t input_index, SourcePos origin = {});

    // n-ary And/Or/Xor over 0..k operands. Applies constant folding,
    // identity/absorption/complement simplification and commutative child
    // sorting before the cons-table lookup; never allocates for a result
    // that reduces to an existing reference.
    BitRef mk_nary(NodeKind kind, std::vector<BitRef> operands, SourcePos origin = {});

    BitRef mk_and(BitRef a, BitRef b, SourcePos origin = {}) {
        return mk_nary(NodeKind::And, {a, b}, origin);
    }
    BitRef mk_or(BitRef a, BitRef b, SourcePos origin = {}) {
        return mk_nary(NodeKind::Or, {a, b}, origin);
    }
    BitRef mk_xor(BitRef a, BitRef b, SourcePos origin = {}) {
        return mk_nary(NodeKind::Xor, {a, b}, origin);
    }
    BitRef mk_not(BitRef a, SourcePos origin = {});
    BitRef mk_ite(BitRef c, BitRef t, BitRef e, SourcePos origin = {});

    // Table node over existing references; `bits` has exactly 1<<children.size()
    // entries. Used by the table-fusion stage.
    BitRef mk_table(std::vector<BitRef> children, std::vector<uint8_t> bits,
                    SourcePos origin = {});

    // Evaluate `root` under the given input assignment (indexed by
    // Input::input_index). `memo` must have size() entries initialized to -1.
    bool eval(BitRef root, const std::vector<uint8_t>& inputs,
              std::vector<int8_t>& memo) const;

  private:
    std::vector<FormulaNode> nodes_;

    struct Key {
        NodeKind kind;
        uint32_t input_index;
        std::vector<NodeId> children;
        std::vector<uint8_t> table;
        bool operator==(const Key& o) const {
            return kind == o.kind && input_index == o.input_index &&
                   children == o.children && table == o.table;
        }
    };
    struct KeyHash {
        size_t operator()(const Key& k) const {
            size_t h = std::hash<uint32_t>()((uint32_t(k.kind) << 24) ^ k.input_index);
            for (NodeId c : k.children) h = h * 1000003u + c;
            for (uint8_t b : k.table) h = h * 31u + b;
            return h;
        }
    };
    std::unordered_map<Key, NodeId, KeyHash> cons_;

    BitRef intern(Key key, SourcePos origin);
    bool is_not_of(NodeId a, NodeId b) const;  // a == Not(b) or b == Not(a)
};

// Recorded core_vars() call: label plus the cell references at the moment of
// execution.
struct CoreRecord {
    std::string label;
    std::vector<BitRef> refs;
};

// Everything the symbolic execution of one program produces besides the DAG.
struct EncodingState {
    std::vector<NodeId> input_vars;      // one Input node per __in bit, declaration order
    std::vector<BitRef> output_bits;     // one entry per __out bit, declaration order
    std::vector<CoreRecord> core_records;
    std::vector<BitRef> asserts;
    std::vector<NodeId> mem_marks;       // __mem forced split points, first-marked order
};

}  // namespace tenc

#endif

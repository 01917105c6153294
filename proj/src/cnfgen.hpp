#ifndef TENC_CNFGEN_HPP
#define TENC_CNFGEN_HPP

#include "cnf.hpp"
#include "formula.hpp"

namespace tenc {

struct EncodeOptions {
    bool fuse = true;
    int fuse_max_arity = 8;      // 2..12
    int xor_max_direct = 4;      // k-ary XOR encoded directly up to this arity (2..6)
    bool ite_redundant = false;  // emit the two optional redundant ITE clauses
    uint64_t var_cap = 20'000'000;
};

// Backward reachability from the output bits, assert roots and core_vars
// references, union all declared inputs. Returns a per-node liveness mask.
std::vector<uint8_t> prune(const NodeStore& store, const EncodingState& state);

// Collapse maximal single-fan-out cones (support ≤ max_arity) into Table
// nodes; where an associative node's full cone does not fit, its single-use
// gate operands are packed into disjoint support-bounded Table parts, each
// carrying its own encoding variable. __mem-marked nodes, outputs, asserts
// and core_vars references always keep a variable of their own.
struct FusedDag {
    NodeStore store;
    EncodingState state;
};
FusedDag fuse_tables(const NodeStore& store, const EncodingState& state, int max_arity);

// Tseitin conversion of the (pruned, optionally fused) DAG. Inputs are
// numbered 1..n in declaration order, interior variables follow in
// topological order, outputs are renumbered into the last m slots; an
// output that aliases an input, a constant or another output binds a fresh
// final-slot variable via equivalence/unit clauses. No gaps remain.
TemplateCnf tseitin(const NodeStore& store, const EncodingState& state,
                    const EncodeOptions& opts = {});

}  // namespace tenc

#endif

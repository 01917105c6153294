#ifndef TENC_SATCORE_HPP
#define TENC_SATCORE_HPP

#include <cstdint>
#include <vector>

#include "cnf.hpp"

namespace tenc {

enum class Verdict { Sat, Unsat, Unknown };

struct UpResult {
    bool conflict = false;
    int32_t conflict_clause = -1;           // index into the clause list
    std::vector<int8_t> values;             // 1-based; -1 unassigned, 0 false, 1 true
    uint32_t num_assigned = 0;
};

// Least fixpoint of unit propagation over clauses ∪ assumptions.
// Deterministic scan; a conflict is a result, not an error.
UpResult unit_propagate(uint32_t num_vars, const std::vector<Clause>& clauses,
                        const std::vector<int32_t>& assumptions);

struct SolveOptions {
    uint64_t max_conflicts = UINT64_MAX;
    double max_seconds = 0;                 // 0: no wall-clock budget
    enum class Branch { FixedOrder, Vsids } branch = Branch::FixedOrder;
};

struct SolveStats {
    uint64_t conflicts = 0;
    uint64_t decisions = 0;
    uint64_t propagations = 0;
    double seconds = 0;
};

struct SolveResult {
    Verdict verdict = Verdict::Unknown;
    std::vector<uint8_t> model;             // 1-based when Sat; verified before return
    SolveStats stats;
};

// Chronological DPLL with two-watched-literal propagation. No clause
// learning; the external bridge covers instances that need a real CDCL
// solver. Deterministic under a fixed configuration.
SolveResult solve(uint32_t num_vars, const std::vector<Clause>& clauses,
                  const std::vector<int32_t>& assumptions, const SolveOptions& opts = {});

struct ModelList {
    std::vector<std::vector<uint8_t>> models;  // projection values per model
    bool truncated = false;
};

// All models up to `cap`, via blocking clauses over `projection`
// (empty projection = all variables). Deterministic order.
ModelList enumerate_models(uint32_t num_vars, const std::vector<Clause>& clauses,
                           const std::vector<uint32_t>& projection, uint64_t cap,
                           const SolveOptions& opts = {});

}  // namespace tenc

#endif

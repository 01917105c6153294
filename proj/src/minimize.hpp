#ifndef TENC_MINIMIZE_HPP
#define TENC_MINIMIZE_HPP

#include <cstdint>
#include <vector>

namespace tenc {

struct TruthTable {
    int arity = 0;                 // 1..16
    std::vector<uint8_t> bits;     // 1 << arity entries; child 0 is the row LSB
};

// CNF for v ≡ φ(x1..xk) over literals 1..k (children) and k+1 (v).
// Prime implicants of φ give the clauses carrying literal v, prime
// implicants of ¬φ give the clauses carrying ¬v; covers are chosen by
// Quine-McCluskey with essential-first greedy selection. Exact for k ≤ 12;
// k in 13..16 falls back to the naive per-row encoding. The result is
// always logically equivalent to naive_table_cnf().
std::vector<std::vector<int>> minimize_table(const TruthTable& tt);

// One clause per truth-table row: 2^k clauses of k+1 literals.
std::vector<std::vector<int>> naive_table_cnf(const TruthTable& tt);

}  // namespace tenc

#endif

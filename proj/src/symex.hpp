#ifndef TENC_SYMEX_HPP
#define TENC_SYMEX_HPP

#include "formula.hpp"
#include "resolver.hpp"

namespace tenc {

struct SymResult {
    NodeStore store;
    EncodingState state;
    DiagList diags;
    bool ok = false;
};

// Symbolically execute a resolved program on the bit-cell abstract machine:
// loops fully unrolled, int expressions evaluated concretely, one fresh
// Input node per __in bit in declaration order. Pure function of the AST.
SymResult execute(const Program& prog);

// Bit-vector circuit builders (LSB first). Operands are zero-extended to the
// longer length; add/sub/mul truncate to that length (carry-out discarded).
std::vector<BitRef> bv_zext(const std::vector<BitRef>& a, size_t width);
std::vector<BitRef> bv_add(NodeStore& s, std::vector<BitRef> a, std::vector<BitRef> b);
std::vector<BitRef> bv_sub(NodeStore& s, std::vector<BitRef> a, std::vector<BitRef> b);
std::vector<BitRef> bv_mul(NodeStore& s, std::vector<BitRef> a, std::vector<BitRef> b);
std::vector<BitRef> bv_shl(const std::vector<BitRef>& a, int64_t amount);
std::vector<BitRef> bv_shr(const std::vector<BitRef>& a, int64_t amount);
BitRef bv_eq(NodeStore& s, std::vector<BitRef> a, std::vector<BitRef> b);
BitRef bv_ult(NodeStore& s, std::vector<BitRef> a, std::vector<BitRef> b);

// Cell-wise merge of two memory images under a branch condition: where the
// images differ the result holds Ite(cond, then, else); where they agree the
// common reference is reused and nothing is allocated.
std::vector<BitRef> merge_cells(NodeStore& s, BitRef cond,
                                const std::vector<BitRef>& then_cells,
                                const std::vector<BitRef>& else_cells);

}  // namespace tenc

#endif

#ifndef TENC_CNF_HPP
#define TENC_CNF_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace tenc {

struct Clause {
    std::vector<int32_t> lits;  // nonzero; no duplicates; never v and -v together
};

// A core_vars header entry: a signed encoding variable, or a constant cell
// recorded as sentinel 0 ("0" for true, "-0" for false).
struct CoreEntry {
    bool is_const = false;
    bool const_val = false;
    int32_t lit = 0;
    std::string text() const {
        if (is_const) return const_val ? "0" : "-0";
        return std::to_string(lit);
    }
};

struct CoreRecordOut {
    std::string label;
    std::vector<CoreEntry> entries;
};

// Pruned, renumbered CNF with designated variable roles: inputs are always
// 1..n in declaration order, outputs are always the last m variables.
struct TemplateCnf {
    uint32_t num_vars = 0;
    std::vector<Clause> clauses;
    std::vector<uint32_t> input_vars;    // exactly 1..n
    std::vector<uint32_t> output_vars;   // exactly num_vars-m+1..num_vars, declaration order
    std::vector<CoreRecordOut> core_records;
    std::vector<uint32_t> unused_inputs;

    uint64_t num_literals() const {
        uint64_t n = 0;
        for (const auto& c : clauses) n += c.lits.size();
        return n;
    }
};

}  // namespace tenc

#endif

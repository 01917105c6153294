#ifndef TENC_AIGER_HPP
#define TENC_AIGER_HPP

#include <string>

#include "formula.hpp"

namespace tenc {

struct AigerResult {
    bool ok = false;
    std::string text;   // ASCII "aag" format, MILOA header
    std::string error;
};

// Lowers the (pruned, unfused) DAG to an and-inverter graph and writes
// ASCII AIGER. Requires a pure circuit: no assert constraints.
AigerResult to_aiger(const NodeStore& store, const EncodingState& state);

}  // namespace tenc

#endif

#ifndef TENC_REFINTERP_HPP
#define TENC_REFINTERP_HPP

#include <optional>
#include <vector>

#include "resolver.hpp"

namespace tenc {

struct InterpResult {
    bool ok = false;
    std::vector<uint8_t> outputs;   // length m when ok
    Diagnostic error;               // assert violation / runtime fault
};

// Concrete interpreter for resolved programs. Walks the AST directly with
// boolean cell values; asserts are checked (a violated assert is reported,
// not assumed). This is the oracle the symbolic path is tested against — it
// shares no evaluation machinery with symex.
InterpResult interpret(const Program& prog, const std::vector<uint8_t>& inputs);

}  // namespace tenc

#endif

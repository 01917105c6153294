#ifndef TENC_EXTSOLVER_HPP
#define TENC_EXTSOLVER_HPP

#include <string>

#include "satcore.hpp"

namespace tenc {

struct ExternalResult {
    enum class Status {
        Ok,
        CommandFailed,        // solver did not run / produced no output
        Unparseable,          // ran, but no recognizable "s ..." status line
        VerificationFailed,   // claimed SAT but the model does not satisfy the CNF
    };
    Status status = Status::Ok;
    SolveResult result;
    std::string message;
};

// Writes the CNF to a temp file, runs `command <file>`, parses the
// SAT-competition "s ..."/"v ..." output and re-verifies any model locally.
ExternalResult external_solve(uint32_t num_vars, const std::vector<Clause>& clauses,
                              const std::string& command);

}  // namespace tenc

#endif

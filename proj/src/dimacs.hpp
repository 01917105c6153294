#ifndef TENC_DIMACS_HPP
#define TENC_DIMACS_HPP

#include <string>

#include "cnf.hpp"

namespace tenc {

// Template serialization. Header comment schema, one datum per line:
//   c t-encoding v1
//   c input <v1> ... <vn>
//   c output <v1> ... <vm>
//   c core <label> <signed-var or 0> ...
//   c unused-input <v> ...
// then "p cnf <vars> <clauses>" and zero-terminated clause lines. Stable
// ordering, LF line endings — output is byte-reproducible.
std::string to_dimacs(const TemplateCnf& t);

// Parses a t-encoding template (header required).
bool parse_template(const std::string& text, TemplateCnf& out, std::string& err);

// Parses plain DIMACS, ignoring comments. Used by the raw-solver path.
bool parse_dimacs(const std::string& text, uint32_t& num_vars,
                  std::vector<Clause>& clauses, std::string& err);

}  // namespace tenc

#endif

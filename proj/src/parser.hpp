#ifndef TENC_PARSER_HPP
#define TENC_PARSER_HPP

#include "ast.hpp"
#include "lexer.hpp"

namespace tenc {

// Recursive-descent parser over the token stream. On syntax errors the
// returned program may be partial; callers must check `diags`.
ProgramAst parse(const std::vector<Token>& tokens, DiagList& diags);

}  // namespace tenc

#endif

#ifndef TENC_LEXER_HPP
#define TENC_LEXER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "diag.hpp"

namespace tenc {

struct SourceProgram {
    std::string text;
    std::string origin = "<memory>";
};

struct Token {
    enum class Kind {
        Identifier,
        IntLiteral,
        Keyword,     // bit int void if else for return assert core_vars
        Operator,    // ! ~ & | ^ && || == != < <= > >= << >> + - * / % =
        Punct,       // ( ) { } [ ] ; , :
        Attribute,   // __in __out __mem
        EndOfFile,
    };
    Kind kind = Kind::EndOfFile;
    std::string lexeme;
    int64_t value = 0;  // IntLiteral only
    int line = 1;
    int column = 1;

    bool is(Kind k, const char* lex) const { return kind == k && lexeme == lex; }
};

// Tokens cover the entire input except whitespace and comments. Unknown
// characters produce diagnostics and are skipped. The trailing token is
// always EndOfFile.
std::vector<Token> tokenize(const SourceProgram& src, DiagList& diags);

}  // namespace tenc

#endif

#ifndef TENC_RESOLVER_HPP
#define TENC_RESOLVER_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ast.hpp"
#include "lexer.hpp"

namespace tenc {

struct DeclInfo {
    int id = -1;
    std::string name;
    BaseType base = BaseType::Bit;
    int arr_len = -1;   // -1: scalar
    unsigned attrs = 0;
    bool is_global = false;
    bool is_param = false;
    SourcePos pos;
    int cells() const { return arr_len < 0 ? 1 : arr_len; }
    bool is_in() const { return attrs & unsigned(Attr::In); }
    bool is_out() const { return attrs & unsigned(Attr::Out); }
    bool is_mem() const { return attrs & unsigned(Attr::Mem); }
};

struct Scope {
    int id = 0;
    int parent = -1;
    std::map<std::string, int> names;  // identifier -> decl id (functions use ~id)
};

struct ScopeTree {
    std::vector<Scope> scopes;
    int root = 0;
};

// Fully resolved program: attributed AST plus scope tree and declaration
// table. Expressions carry their static type; every identifier is bound.
struct Program {
    ProgramAst ast;
    ScopeTree scopes;
    std::vector<DeclInfo> decls;
    std::vector<int> input_decls;    // __in declarations, program order
    std::vector<int> output_decls;   // __out declarations, program order
    int num_input_bits = 0;
    int num_output_bits = 0;
    const FuncDecl* main = nullptr;
    std::map<std::string, const FuncDecl*> funcs;
};

// Resolve a parsed program. Returns nullptr and fills `diags` on error.
// Deterministic: same AST always yields the identical annotated program.
std::unique_ptr<Program> resolve(ProgramAst ast, DiagList& diags);

// Convenience front door: tokenize + parse + resolve.
std::unique_ptr<Program> compile_program(const SourceProgram& src, DiagList& diags);

}  // namespace tenc

#endif

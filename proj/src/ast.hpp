#ifndef TENC_AST_HPP
#define TENC_AST_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "diag.hpp"

namespace tenc {

enum class BaseType { Bit, Int, Void };

enum class Attr : unsigned { None = 0, In = 1, Out = 2, Mem = 4 };
inline unsigned operator|(Attr a, Attr b) { return unsigned(a) | unsigned(b); }

enum class UnOp { LogNot, BitNot, Neg };
enum class BinOp {
    BitAnd, BitOr, BitXor, LogAnd, LogOr,
    Eq, Ne, Lt, Le, Gt, Ge,
    Shl, Shr, Add, Sub, Mul, Div, Mod,
};

// Static type of an expression, filled in by the resolver.
enum class ValType { Unknown, IntVal, BitVal, BitArr };

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
    enum class Kind { IntLit, Ident, Index, Slice, Unary, Binary, Call } kind;
    SourcePos pos;

    int64_t value = 0;           // IntLit
    std::string name;            // Ident / Index / Slice base / Call target
    ExprPtr a, b;                // Unary: a; Binary: a,b; Index: a; Slice: a,b (lo,hi)
    UnOp un = UnOp::LogNot;
    BinOp bin = BinOp::BitAnd;
    std::vector<ExprPtr> args;   // Call

    // resolver annotations
    int decl_id = -1;            // Ident/Index/Slice: referenced declaration
    ValType type = ValType::Unknown;
    int arr_len = -1;            // BitArr: static length
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Block {
    std::vector<StmtPtr> stmts;
    int scope_id = -1;
};

struct Stmt {
    enum class Kind { Decl, Assign, If, For, Call, Return, Assert, CoreVars, Nested } kind;
    SourcePos pos;

    // Decl
    std::string name;
    BaseType base = BaseType::Bit;
    int arr_len = -1;            // -1: scalar
    unsigned attrs = 0;
    ExprPtr init;                // optional
    int decl_id = -1;

    // Assign: place = value.  Call: value holds the call expression.
    // Return/Assert: value.  CoreVars: name/decl_id.
    ExprPtr place;
    ExprPtr value;

    // If
    ExprPtr cond;
    std::unique_ptr<Block> body;      // If then / For body / Nested block
    std::unique_ptr<Block> else_body;

    // For
    StmtPtr for_init;            // Decl or Assign
    StmtPtr for_step;            // Assign
};

struct Param {
    std::string name;
    BaseType base = BaseType::Bit;
    int arr_len = -1;
    int decl_id = -1;
    SourcePos pos;
};

struct FuncDecl {
    std::string name;
    BaseType ret = BaseType::Void;
    int ret_len = -1;            // bit[N] return
    std::vector<Param> params;
    Block body;
    SourcePos pos;
};

struct ProgramAst {
    std::vector<StmtPtr> globals;    // Decl statements
    std::vector<FuncDecl> funcs;
};

// Pretty printer (round-trips through the parser) and structural equality.
std::string ast_print(const ProgramAst& p);
bool ast_equal(const ProgramAst& a, const ProgramAst& b);

}  // namespace tenc

#endif

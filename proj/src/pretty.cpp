#include <sstream>

#include "ast.hpp"

namespace tenc {

namespace {

const char* type_name(BaseType t) {
    switch (t) {
        case BaseType::Bit: return "bit";
        case BaseType::Int: return "int";
        default: return "void";
    }
}

const char* un_name(UnOp op) {
    switch (op) {
        case UnOp::LogNot: return "!";
        case UnOp::BitNot: return "~";
        default: return "-";
    }
}

const char* bin_name(BinOp op) {
    switch (op) {
        case BinOp::BitAnd: return "&";
        case BinOp::BitOr: return "|";
        case BinOp::BitXor: return "^";
        case BinOp::LogAnd: return "&&";
        case BinOp::LogOr: return "||";
        case BinOp::Eq: return "==";
        case BinOp::Ne: return "!=";
        case BinOp::Lt: return "<";
        case BinOp::Le: return "<=";
        case BinOp::Gt: return ">";
        case BinOp::Ge: return ">=";
        case BinOp::Shl: return "<<";
        case BinOp::Shr: return ">>";
        case BinOp::Add: return "+";
        case BinOp::Sub: return "-";
        case BinOp::Mul: return "*";
        case BinOp::Div: return "/";
        default: return "%";
    }
}

class Printer {
  public:
    std::string run(const ProgramAst& p) {
        for (const auto& g : p.globals) print_stmt(*g, 0);
        for (const auto& f : p.funcs) print_func(f);
        return out_.str();
    }

  private:
    std::ostringstream out_;

    void indent(int n) {
        for (int i = 0; i < n; ++i) out_ << "    ";
    }

    void print_expr(const Expr& e) {
        switch (e.kind) {
            case Expr::Kind::IntLit:
                out_ << e.value;
                break;
            case Expr::Kind::Ident:
                out_ << e.name;
                break;
            case Expr::Kind::Index:
                out_ << e.name << "[";
                print_expr(*e.a);
                out_ << "]";
                break;
            case Expr::Kind::Slice:
                out_ << e.name << "[";
                print_expr(*e.a);
                out_ << ":";
                print_expr(*e.b);
                out_ << "]";
                break;
            case Expr::Kind::Unary:
                out_ << un_name(e.un) << "(";
                print_expr(*e.a);
                out_ << ")";
                break;
            case Expr::Kind::Binary:
                out_ << "(";
                print_expr(*e.a);
                out_ << " " << bin_name(e.bin) << " ";
                print_expr(*e.b);
                out_ << ")";
                break;
            case Expr::Kind::Call:
                out_ << e.name << "(";
                for (size_t i = 0; i < e.args.size(); ++i) {
                    if (i) out_ << ", ";
                    print_expr(*e.args[i]);
                }
                out_ << ")";
                break;
        }
    }

    void print_stmt(const Stmt& st, int depth) {
        indent(depth);
        switch (st.kind) {
            case Stmt::Kind::Decl: {
                if (st.attrs & unsigned(Attr::In)) out_ << "__in ";
                if (st.attrs & unsigned(Attr::Out)) out_ << "__out ";
                if (st.attrs & unsigned(Attr::Mem)) out_ << "__mem ";
                out_ << type_name(st.base) << " " << st.name;
                if (st.arr_len >= 0) out_ << "[" << st.arr_len << "]";
                if (st.init) {
                    out_ << " = ";
                    print_expr(*st.init);
                }
                out_ << ";\n";
                break;
            }
            case Stmt::Kind::Assign:
                print_expr(*st.place);
                out_ << " = ";
                print_expr(*st.value);
                out_ << ";\n";
                break;
            case Stmt::Kind::If:
                out_ << "if (";
                print_expr(*st.cond);
                out_ << ") ";
                print_block(*st.body, depth);
                if (st.else_body) {
                    indent(depth);
                    out_ << "else ";
                    print_block(*st.else_body, depth);
                }
                break;
            case Stmt::Kind::For:
                out_ << "for (";
                if (st.for_init) {
                    if (st.for_init->kind == Stmt::Kind::Decl) {
                        out_ << "int " << st.for_init->name << " = ";
                        print_expr(*st.for_init->init);
                    } else {
                        print_expr(*st.for_init->place);
                        out_ << " = ";
                        print_expr(*st.for_init->value);
                    }
                }
                out_ << "; ";
                print_expr(*st.cond);
                out_ << "; ";
                print_expr(*st.for_step->place);
                out_ << " = ";
                print_expr(*st.for_step->value);
                out_ << ") ";
                print_block(*st.body, depth);
                break;
            case Stmt::Kind::Call:
                print_expr(*st.value);
                out_ << ";\n";
                break;
            case Stmt::Kind::Return:
                out_ << "return";
                if (st.value) {
                    out_ << " ";
                    print_expr(*st.value);
                }
                out_ << ";\n";
                break;
            case Stmt::Kind::Assert:
                out_ << "assert(";
                print_expr(*st.value);
                out_ << ");\n";
                break;
            case Stmt::Kind::CoreVars:
                out_ << "core_vars(" << st.name << ");\n";
                break;
            case Stmt::Kind::Nested:
                print_block(*st.body, depth);
                break;
        }
    }

    void print_block(const Block& b, int depth) {
        out_ << "{\n";
        for (const auto& st : b.stmts) print_stmt(*st, depth + 1);
        indent(depth);
        out_ << "}\n";
    }

    void print_func(const FuncDecl& f) {
        out_ << type_name(f.ret);
        if (f.ret_len >= 0) out_ << "[" << f.ret_len << "]";
        out_ << " " << f.name << "(";
        for (size_t i = 0; i < f.params.size(); ++i) {
            if (i) out_ << ", ";
            out_ << type_name(f.params[i].base) << " " << f.params[i].name;
            if (f.params[i].arr_len >= 0) out_ << "[" << f.params[i].arr_len << "]";
        }
        out_ << ") ";
        print_block(f.body, 0);
    }
};

bool expr_equal(const Expr* a, const Expr* b) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Expr::Kind::IntLit: return a->value == b->value;
        case Expr::Kind::Ident: return a->name == b->name;
        case Expr::Kind::Index: return a->name == b->name && expr_equal(a->a.get(), b->a.get());
        case Expr::Kind::Slice:
            return a->name == b->name && expr_equal(a->a.get(), b->a.get()) &&
                   expr_equal(a->b.get(), b->b.get());
        case Expr::Kind::Unary: return a->un == b->un && expr_equal(a->a.get(), b->a.get());
        case Expr::Kind::Binary:
            return a->bin == b->bin && expr_equal(a->a.get(), b->a.get()) &&
                   expr_equal(a->b.get(), b->b.get());
        case Expr::Kind::Call: {
            if (a->name != b->name || a->args.size() != b->args.size()) return false;
            for (size_t i = 0; i < a->args.size(); ++i)
                if (!expr_equal(a->args[i].get(), b->args[i].get())) return false;
            return true;
        }
    }
    return false;
}

bool block_equal(const Block* a, const Block* b);

bool stmt_equal(const Stmt* a, const Stmt* b) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Stmt::Kind::Decl:
            return a->name == b->name && a->base == b->base && a->arr_len == b->arr_len &&
                   a->attrs == b->attrs && expr_equal(a->init.get(), b->init.get());
        case Stmt::Kind::Assign:
            return expr_equal(a->place.get(), b->place.get()) &&
                   expr_equal(a->value.get(), b->value.get());
        case Stmt::Kind::If:
            return expr_equal(a->cond.get(), b->cond.get()) &&
                   block_equal(a->body.get(), b->body.get()) &&
                   block_equal(a->else_body.get(), b->else_body.get());
        case Stmt::Kind::For:
            return stmt_equal(a->for_init.get(), b->for_init.get()) &&
                   expr_equal(a->cond.get(), b->cond.get()) &&
                   stmt_equal(a->for_step.get(), b->for_step.get()) &&
                   block_equal(a->body.get(), b->body.get());
        case Stmt::Kind::Call:
        case Stmt::Kind::Return:
        case Stmt::Kind::Assert:
            return expr_equal(a->value.get(), b->value.get());
        case Stmt::Kind::CoreVars:
            return a->name == b->name;
        case Stmt::Kind::Nested:
            return block_equal(a->body.get(), b->body.get());
    }
    return false;
}

bool block_equal(const Block* a, const Block* b) {
    if (!a || !b) return a == b;
    if (a->stmts.size() != b->stmts.size()) return false;
    for (size_t i = 0; i < a->stmts.size(); ++i)
        if (!stmt_equal(a->stmts[i].get(), b->stmts[i].get())) return false;
    return true;
}

}  // namespace

std::string ast_print(const ProgramAst& p) {
    return Printer().run(p);
}

bool ast_equal(const ProgramAst& a, const ProgramAst& b) {
    if (a.globals.size() != b.globals.size() || a.funcs.size() != b.funcs.size()) return false;
    for (size_t i = 0; i < a.globals.size(); ++i)
        if (!stmt_equal(a.globals[i].get(), b.globals[i].get())) return false;
    for (size_t i = 0; i < a.funcs.size(); ++i) {
        const FuncDecl& fa = a.funcs[i];
        const FuncDecl& fb = b.funcs[i];
        if (fa.name != fb.name || fa.ret != fb.ret || fa.ret_len != fb.ret_len) return false;
        if (fa.params.size() != fb.params.size()) return false;
        for (size_t j = 0; j < fa.params.size(); ++j) {
            if (fa.params[j].name != fb.params[j].name ||
                fa.params[j].base != fb.params[j].base ||
                fa.params[j].arr_len != fb.params[j].arr_len)
                return false;
        }
        if (!block_equal(&fa.body, &fb.body)) return false;
    }
    return true;
}

}  // namespace tenc

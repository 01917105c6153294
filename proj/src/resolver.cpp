#include "resolver.hpp"

#include <functional>
#include <set>

#include "lexer.hpp"
#include "parser.hpp"

namespace tenc {

namespace {

class Resolver {
  public:
    Resolver(Program& prog, DiagList& diags) : p_(prog), diags_(diags) {}

    bool run() {
        p_.scopes.scopes.push_back(Scope{0, -1, {}});

        // functions first so that forward calls resolve
        for (auto& f : p_.ast.funcs) {
            if (p_.funcs.count(f.name)) {
                error(f.pos, "duplicate function '" + f.name + "'");
            } else {
                p_.funcs[f.name] = &f;
            }
        }

        for (auto& g : p_.ast.globals) resolve_decl(*g, 0, true);

        for (auto& f : p_.ast.funcs) resolve_func(f);

        auto it = p_.funcs.find("main");
        if (it == p_.funcs.end()) {
            error({0, 0}, "missing entry point: no function named 'main'");
        } else {
            p_.main = it->second;
            if (p_.main->ret != BaseType::Void || !p_.main->params.empty())
                error(p_.main->pos, "'main' must be declared 'void main()'");
        }

        if (p_.num_input_bits == 0)
            diags_.push_back({Diagnostic::Severity::Warning,
                              "program declares no __in bits", {0, 0}});

        check_recursion();
        return !has_errors(diags_);
    }

  private:
    Program& p_;
    DiagList& diags_;
    const FuncDecl* cur_func_ = nullptr;

    void error(SourcePos pos, const std::string& msg) {
        diags_.push_back({Diagnostic::Severity::Error, msg, pos});
    }

    int new_scope(int parent) {
        int id = (int)p_.scopes.scopes.size();
        p_.scopes.scopes.push_back(Scope{id, parent, {}});
        return id;
    }

    int lookup(int scope, const std::string& name) const {
        for (int s = scope; s != -1; s = p_.scopes.scopes[s].parent) {
            auto it = p_.scopes.scopes[s].names.find(name);
            if (it != p_.scopes.scopes[s].names.end()) return it->second;
        }
        return -1;
    }

    int declare(int scope, const std::string& name, BaseType base, int arr_len,
                unsigned attrs, bool is_global, bool is_param, SourcePos pos) {
        auto& sc = p_.scopes.scopes[scope];
        if (sc.names.count(name)) {
            error(pos, "duplicate declaration of '" + name + "' in the same scope");
            return sc.names[name];
        }
        if (p_.funcs.count(name))
            error(pos, "'" + name + "' is already declared as a function");
        DeclInfo d;
        d.id = (int)p_.decls.size();
        d.name = name;
        d.base = base;
        d.arr_len = arr_len;
        d.attrs = attrs;
        d.is_global = is_global;
        d.is_param = is_param;
        d.pos = pos;
        p_.decls.push_back(d);
        sc.names[name] = d.id;
        return d.id;
    }

    void resolve_decl(Stmt& st, int scope, bool is_global) {
        if (st.base == BaseType::Void) error(st.pos, "variables cannot have type 'void'");
        if (st.arr_len == 0 || st.arr_len < -1)
            error(st.pos, "array length must be a positive constant");
        if (st.arr_len > (1 << 22)) error(st.pos, "array length too large");

        bool in_out = st.attrs & (unsigned(Attr::In) | unsigned(Attr::Out));
        if (in_out && !is_global)
            error(st.pos, "__in/__out are allowed only on global declarations");
        if ((st.attrs & ~0u) && st.base != BaseType::Bit && st.attrs != 0)
            error(st.pos, "attribute on non-bit type");
        if ((st.attrs & unsigned(Attr::In)) && (st.attrs & unsigned(Attr::Out)))
            error(st.pos, "a declaration cannot be both __in and __out");

        st.decl_id = declare(scope, st.name, st.base, st.arr_len, st.attrs,
                             is_global, false, st.pos);

        if (st.init) {
            if (st.attrs & unsigned(Attr::In))
                error(st.pos, "__in variables cannot have initializers");
            resolve_expr(*st.init, scope);
            check_assignable(st.base, st.arr_len, *st.init, st.pos);
        }

        if (st.attrs & unsigned(Attr::In)) {
            p_.input_decls.push_back(st.decl_id);
            p_.num_input_bits += p_.decls[st.decl_id].cells();
        }
        if (st.attrs & unsigned(Attr::Out)) {
            p_.output_decls.push_back(st.decl_id);
            p_.num_output_bits += p_.decls[st.decl_id].cells();
        }
    }

    void resolve_func(FuncDecl& f) {
        cur_func_ = &f;
        if (f.ret == BaseType::Void && f.ret_len != -1)
            error(f.pos, "void function cannot return an array");
        if (f.ret == BaseType::Int && f.ret_len != -1)
            error(f.pos, "int array returns are not supported");
        int scope = new_scope(0);
        for (auto& par : f.params) {
            if (par.base == BaseType::Void)
                error(par.pos, "parameters cannot have type 'void'");
            par.decl_id = declare(scope, par.name, par.base, par.arr_len, 0,
                                  false, true, par.pos);
        }
        resolve_block(f.body, scope);
        cur_func_ = nullptr;
    }

    void resolve_block(Block& b, int parent_scope) {
        b.scope_id = new_scope(parent_scope);
        for (auto& st : b.stmts) resolve_stmt(*st, b.scope_id);
    }

    void resolve_stmt(Stmt& st, int scope) {
        switch (st.kind) {
            case Stmt::Kind::Decl:
                resolve_decl(st, scope, false);
                break;
            case Stmt::Kind::Assign: {
                resolve_place(*st.place, scope);
                resolve_expr(*st.value, scope);
                if (st.place->type == ValType::IntVal) {
                    if (st.value->type != ValType::IntVal)
                        error(st.pos, "cannot assign a bit value to an int variable");
                } else if (st.place->type == ValType::BitVal ||
                           st.place->type == ValType::BitArr) {
                    // bit places accept bit values, bit arrays and concrete ints
                } else {
                    error(st.pos, "cannot assign to this expression");
                }
                break;
            }
            case Stmt::Kind::If: {
                resolve_expr(*st.cond, scope);
                if (st.cond->type == ValType::BitArr)
                    error(st.pos, "if condition must be a single bit or an int");
                resolve_block(*st.body, scope);
                if (st.else_body) resolve_block(*st.else_body, scope);
                break;
            }
            case Stmt::Kind::For: {
                int loop_scope = new_scope(scope);
                if (st.for_init) {
                    if (st.for_init->kind == Stmt::Kind::Decl) {
                        resolve_decl(*st.for_init, loop_scope, false);
                        if (st.for_init->base != BaseType::Int)
                            error(st.for_init->pos, "loop counter must be an int");
                    } else {
                        resolve_stmt(*st.for_init, loop_scope);
                        if (st.for_init->place->type != ValType::IntVal)
                            error(st.for_init->pos, "loop counter must be an int");
                    }
                }
                resolve_expr(*st.cond, loop_scope);
                if (st.cond->type != ValType::IntVal)
                    error(st.pos,
                          "loop bound must be a compile-time int expression, not a bit value");
                resolve_stmt(*st.for_step, loop_scope);
                if (st.for_step->place->type != ValType::IntVal)
                    error(st.for_step->pos, "loop step must update an int variable");
                resolve_block(*st.body, loop_scope);
                break;
            }
            case Stmt::Kind::Call: {
                resolve_expr(*st.value, scope);
                break;
            }
            case Stmt::Kind::Return: {
                if (!cur_func_) break;
                if (cur_func_->ret == BaseType::Void) {
                    if (st.value) error(st.pos, "void function cannot return a value");
                    break;
                }
                if (!st.value) {
                    error(st.pos, "function must return a value");
                    break;
                }
                resolve_expr(*st.value, scope);
                if (cur_func_->ret == BaseType::Int) {
                    if (st.value->type != ValType::IntVal)
                        error(st.pos, "int function must return an int value");
                } else if (cur_func_->ret_len == -1) {
                    if (st.value->type == ValType::BitArr)
                        error(st.pos, "bit function cannot return an array");
                }
                break;
            }
            case Stmt::Kind::Assert: {
                resolve_expr(*st.value, scope);
                if (st.value->type == ValType::BitArr)
                    error(st.pos, "assert expects a single bit or an int expression");
                break;
            }
            case Stmt::Kind::CoreVars: {
                int id = lookup(scope, st.name);
                if (id < 0) {
                    error(st.pos, "undeclared identifier '" + st.name + "'");
                    break;
                }
                st.decl_id = id;
                if (p_.decls[id].base != BaseType::Bit)
                    error(st.pos, "core_vars expects a bit variable");
                break;
            }
            case Stmt::Kind::Nested:
                resolve_block(*st.body, scope);
                break;
        }
    }

    void resolve_place(Expr& e, int scope) {
        resolve_expr(e, scope);
        if (e.kind != Expr::Kind::Ident && e.kind != Expr::Kind::Index &&
            e.kind != Expr::Kind::Slice)
            error(e.pos, "assignment target must be a variable, element or slice");
    }

    // Binds identifiers and computes static types.
    void resolve_expr(Expr& e, int scope) {
        switch (e.kind) {
            case Expr::Kind::IntLit:
                e.type = ValType::IntVal;
                break;

            case Expr::Kind::Ident: {
                int id = lookup(scope, e.name);
                if (id < 0) {
                    error(e.pos, "undeclared identifier '" + e.name + "'");
                    e.type = ValType::Unknown;
                    return;
                }
                e.decl_id = id;
                const DeclInfo& d = p_.decls[id];
                if (d.base == BaseType::Bit) {
                    e.type = d.arr_len < 0 ? ValType::BitVal : ValType::BitArr;
                    e.arr_len = d.arr_len;
                } else {
                    if (d.arr_len >= 0)
                        error(e.pos, "int array '" + e.name + "' must be indexed");
                    e.type = ValType::IntVal;
                }
                break;
            }

            case Expr::Kind::Index: {
                int id = lookup(scope, e.name);
                if (id < 0) {
                    error(e.pos, "undeclared identifier '" + e.name + "'");
                    return;
                }
                e.decl_id = id;
                const DeclInfo& d = p_.decls[id];
                if (d.arr_len < 0) {
                    error(e.pos, "'" + e.name + "' is not an array");
                    return;
                }
                resolve_expr(*e.a, scope);
                if (e.a->type != ValType::IntVal)
                    error(e.pos, "array index must be an int expression");
                // constant indices are bounds-checked here
                if (e.a->kind == Expr::Kind::IntLit &&
                    (e.a->value < 0 || e.a->value >= d.arr_len))
                    error(e.pos, "index " + std::to_string(e.a->value) +
                                     " out of bounds for '" + e.name + "[" +
                                     std::to_string(d.arr_len) + "]'");
                e.type = d.base == BaseType::Bit ? ValType::BitVal : ValType::IntVal;
                break;
            }

            case Expr::Kind::Slice: {
                int id = lookup(scope, e.name);
                if (id < 0) {
                    error(e.pos, "undeclared identifier '" + e.name + "'");
                    return;
                }
                e.decl_id = id;
                const DeclInfo& d = p_.decls[id];
                if (d.base != BaseType::Bit || d.arr_len < 0) {
                    error(e.pos, "slicing requires a bit array");
                    return;
                }
                resolve_expr(*e.a, scope);
                resolve_expr(*e.b, scope);
                if (e.a->type != ValType::IntVal || e.b->type != ValType::IntVal)
                    error(e.pos, "slice bounds must be int expressions");
                e.type = ValType::BitArr;
                // a[lo:hi] selects cells lo..hi-1
                if (e.a->kind == Expr::Kind::IntLit && e.b->kind == Expr::Kind::IntLit) {
                    if (e.a->value < 0 || e.b->value > d.arr_len || e.a->value >= e.b->value)
                        error(e.pos, "invalid slice bounds");
                    else
                        e.arr_len = (int)(e.b->value - e.a->value);
                }
                break;
            }

            case Expr::Kind::Unary: {
                resolve_expr(*e.a, scope);
                switch (e.un) {
                    case UnOp::LogNot:
                        e.type = e.a->type == ValType::IntVal ? ValType::IntVal
                                                              : ValType::BitVal;
                        break;
                    case UnOp::BitNot:
                        e.type = e.a->type;
                        e.arr_len = e.a->arr_len;
                        break;
                    case UnOp::Neg:
                        if (e.a->type == ValType::BitVal)
                            error(e.pos, "unary minus is not defined on a single bit");
                        e.type = e.a->type;
                        e.arr_len = e.a->arr_len;
                        break;
                }
                break;
            }

            case Expr::Kind::Binary: {
                resolve_expr(*e.a, scope);
                resolve_expr(*e.b, scope);
                ValType ta = e.a->type, tb = e.b->type;
                bool an_int = ta == ValType::IntVal, bn_int = tb == ValType::IntVal;

                if (e.bin == BinOp::Div || e.bin == BinOp::Mod) {
                    if (!an_int || !bn_int)
                        error(e.pos, "/ and % are defined only on int values");
                    e.type = ValType::IntVal;
                    break;
                }
                if (e.bin == BinOp::Shl || e.bin == BinOp::Shr) {
                    if (!bn_int) error(e.pos, "shift amount must be an int expression");
                    e.type = ta;
                    e.arr_len = e.a->arr_len;
                    break;
                }
                if (an_int && bn_int) {
                    e.type = ValType::IntVal;
                    break;
                }
                // at least one symbolic side; the int side (if any) must be a
                // concrete value and is widened at execution time
                bool cmp = e.bin == BinOp::Eq || e.bin == BinOp::Ne || e.bin == BinOp::Lt ||
                           e.bin == BinOp::Le || e.bin == BinOp::Gt || e.bin == BinOp::Ge;
                bool logical = e.bin == BinOp::LogAnd || e.bin == BinOp::LogOr;
                if (cmp || logical) {
                    e.type = ValType::BitVal;
                } else if (ta == ValType::BitArr || tb == ValType::BitArr) {
                    e.type = ValType::BitArr;
                    e.arr_len = std::max(e.a->arr_len, e.b->arr_len);
                } else {
                    e.type = ValType::BitVal;
                }
                break;
            }

            case Expr::Kind::Call: {
                auto it = p_.funcs.find(e.name);
                if (it == p_.funcs.end()) {
                    error(e.pos, "call to undeclared function '" + e.name + "'");
                    return;
                }
                const FuncDecl* f = it->second;
                if (e.args.size() != f->params.size())
                    error(e.pos, "'" + e.name + "' expects " +
                                     std::to_string(f->params.size()) + " argument(s), got " +
                                     std::to_string(e.args.size()));
                for (size_t i = 0; i < e.args.size(); ++i) {
                    resolve_expr(*e.args[i], scope);
                    if (i < f->params.size()) {
                        const Param& par = f->params[i];
                        if (par.base == BaseType::Int &&
                            e.args[i]->type != ValType::IntVal)
                            error(e.args[i]->pos, "argument must be an int value");
                        if (par.base == BaseType::Bit && par.arr_len < 0 &&
                            e.args[i]->type == ValType::BitArr)
                            error(e.args[i]->pos, "argument must be a single bit");
                    }
                }
                if (f->ret == BaseType::Int) e.type = ValType::IntVal;
                else if (f->ret == BaseType::Void) e.type = ValType::Unknown;
                else if (f->ret_len >= 0) {
                    e.type = ValType::BitArr;
                    e.arr_len = f->ret_len;
                } else {
                    e.type = ValType::BitVal;
                }
                break;
            }
        }
    }

    void check_assignable(BaseType base, int /*arr_len*/, const Expr& value, SourcePos pos) {
        if (base == BaseType::Int && value.type != ValType::IntVal)
            error(pos, "cannot initialize an int variable with a bit value");
    }

    void check_recursion() {
        // the language has no recursion; reject call cycles outright
        std::map<const FuncDecl*, std::vector<const FuncDecl*>> edges;
        for (auto& [name, f] : p_.funcs) {
            (void)name;
            std::vector<const FuncDecl*> out;
            collect_calls(f->body, out);
            edges[f] = std::move(out);
        }
        std::set<const FuncDecl*> done, in_progress;
        bool cyclic = false;
        std::function<void(const FuncDecl*)> dfs = [&](const FuncDecl* f) {
            if (done.count(f) || cyclic) return;
            if (in_progress.count(f)) {
                cyclic = true;
                return;
            }
            in_progress.insert(f);
            for (auto* g : edges[f]) dfs(g);
            in_progress.erase(f);
            done.insert(f);
        };
        for (auto& [f, _] : edges) dfs(f);
        if (cyclic) error({0, 0}, "recursive function calls are not supported");
    }

    void collect_calls(const Block& b, std::vector<const FuncDecl*>& out) {
        std::function<void(const Expr&)> walk_expr = [&](const Expr& e) {
            if (e.kind == Expr::Kind::Call) {
                auto it = p_.funcs.find(e.name);
                if (it != p_.funcs.end()) out.push_back(it->second);
            }
            if (e.a) walk_expr(*e.a);
            if (e.b) walk_expr(*e.b);
            for (auto& a : e.args) walk_expr(*a);
        };
        std::function<void(const Block&)> walk_block = [&](const Block& blk) {
            for (auto& st : blk.stmts) {
                if (st->init) walk_expr(*st->init);
                if (st->place) walk_expr(*st->place);
                if (st->value) walk_expr(*st->value);
                if (st->cond) walk_expr(*st->cond);
                if (st->for_init && st->for_init->value) walk_expr(*st->for_init->value);
                if (st->for_init && st->for_init->init) walk_expr(*st->for_init->init);
                if (st->for_step && st->for_step->value) walk_expr(*st->for_step->value);
                if (st->body) walk_block(*st->body);
                if (st->else_body) walk_block(*st->else_body);
            }
        };
        walk_block(b);
    }
};

}  // namespace

std::unique_ptr<Program> resolve(ProgramAst ast, DiagList& diags) {
    auto prog = std::make_unique<Program>();
    prog->ast = std::move(ast);
    Resolver r(*prog, diags);
    if (!r.run()) return nullptr;
    return prog;
}

std::unique_ptr<Program> compile_program(const SourceProgram& src, DiagList& diags) {
    if (src.text.empty()) {
        diags.push_back({Diagnostic::Severity::Error, "empty program", {0, 0}});
        return nullptr;
    }
    auto tokens = tokenize(src, diags);
    if (has_errors(diags)) return nullptr;
    auto ast = parse(tokens, diags);
    if (has_errors(diags)) return nullptr;
    return resolve(std::move(ast), diags);
}

}  // namespace tenc

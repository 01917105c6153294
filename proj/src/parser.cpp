#include "parser.hpp"

namespace tenc {

namespace {

struct ParseError {};

class Parser {
  public:
    Parser(const std::vector<Token>& toks, DiagList& diags) : toks_(toks), diags_(diags) {}

    ProgramAst run() {
        ProgramAst prog;
        while (!at_eof()) {
            try {
                parse_top_level(prog);
            } catch (ParseError&) {
                sync_top_level();
            }
        }
        return prog;
    }

  private:
    const std::vector<Token>& toks_;
    DiagList& diags_;
    size_t pos_ = 0;

    const Token& cur() const { return toks_[pos_]; }
    const Token& peek(size_t n = 1) const {
        size_t i = pos_ + n;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    bool at_eof() const { return cur().kind == Token::Kind::EndOfFile; }
    SourcePos here() const { return {cur().line, cur().column}; }

    void advance() {
        if (!at_eof()) ++pos_;
    }

    [[noreturn]] void fail(const std::string& expected) {
        diags_.push_back({Diagnostic::Severity::Error,
                          "expected " + expected + ", found '" + cur().lexeme + "'", here()});
        throw ParseError{};
    }

    bool is_op(const char* s) const { return cur().is(Token::Kind::Operator, s); }
    bool is_punct(const char* s) const { return cur().is(Token::Kind::Punct, s); }
    bool is_kw(const char* s) const { return cur().is(Token::Kind::Keyword, s); }

    bool accept_op(const char* s) {
        if (is_op(s)) { advance(); return true; }
        return false;
    }
    bool accept_punct(const char* s) {
        if (is_punct(s)) { advance(); return true; }
        return false;
    }
    bool accept_kw(const char* s) {
        if (is_kw(s)) { advance(); return true; }
        return false;
    }
    void expect_punct(const char* s) {
        if (!accept_punct(s)) fail(std::string("'") + s + "'");
    }
    void expect_op(const char* s) {
        if (!accept_op(s)) fail(std::string("'") + s + "'");
    }

    void sync_top_level() {
        // skip to something that can plausibly start a top-level item
        while (!at_eof()) {
            if (is_punct(";") || is_punct("}")) { advance(); return; }
            advance();
        }
    }
    void sync_stmt() {
        while (!at_eof()) {
            if (is_punct(";")) { advance(); return; }
            if (is_punct("}")) return;
            advance();
        }
    }

    bool at_type() const {
        return is_kw("bit") || is_kw("int") || is_kw("void");
    }
    BaseType parse_type() {
        if (accept_kw("bit")) return BaseType::Bit;
        if (accept_kw("int")) return BaseType::Int;
        if (accept_kw("void")) return BaseType::Void;
        fail("type name");
    }

    std::string parse_ident() {
        if (cur().kind != Token::Kind::Identifier) fail("identifier");
        std::string n = cur().lexeme;
        advance();
        return n;
    }

    int64_t parse_int_lit() {
        if (cur().kind != Token::Kind::IntLiteral) fail("integer literal");
        int64_t v = cur().value;
        advance();
        return v;
    }

    void parse_top_level(ProgramAst& prog) {
        SourcePos p = here();
        unsigned attrs = 0;
        while (cur().kind == Token::Kind::Attribute) {
            if (cur().lexeme == "__in") attrs |= unsigned(Attr::In);
            else if (cur().lexeme == "__out") attrs |= unsigned(Attr::Out);
            else attrs |= unsigned(Attr::Mem);
            advance();
        }

        BaseType ty = parse_type();

        // bit[N] f(...) — array-valued function
        int ret_len = -1;
        if (is_punct("[")) {
            advance();
            ret_len = (int)parse_int_lit();
            expect_punct("]");
        }

        std::string name = parse_ident();

        if (is_punct("(")) {
            if (attrs != 0)
                diags_.push_back({Diagnostic::Severity::Error,
                                  "attributes are not allowed on functions", p});
            prog.funcs.push_back(parse_func_rest(ty, ret_len, name, p));
            return;
        }

        if (ret_len != -1) fail("'(' after array-valued function type");
        prog.globals.push_back(parse_decl_rest(ty, name, attrs, p));
    }

    FuncDecl parse_func_rest(BaseType ret, int ret_len, std::string name, SourcePos p) {
        FuncDecl f;
        f.name = std::move(name);
        f.ret = ret;
        f.ret_len = ret_len;
        f.pos = p;
        expect_punct("(");
        if (!is_punct(")")) {
            do {
                Param par;
                par.pos = here();
                par.base = parse_type();
                par.name = parse_ident();
                if (accept_punct("[")) {
                    par.arr_len = (int)parse_int_lit();
                    expect_punct("]");
                }
                f.params.push_back(std::move(par));
            } while (accept_punct(","));
        }
        expect_punct(")");
        f.body = parse_block();
        return f;
    }

    StmtPtr parse_decl_rest(BaseType ty, std::string name, unsigned attrs, SourcePos p) {
        auto st = std::make_unique<Stmt>();
        st->kind = Stmt::Kind::Decl;
        st->pos = p;
        st->name = std::move(name);
        st->base = ty;
        st->attrs = attrs;
        if (accept_punct("[")) {
            st->arr_len = (int)parse_int_lit();
            expect_punct("]");
        }
        if (accept_op("=")) st->init = parse_expr();
        expect_punct(";");
        return st;
    }

    Block parse_block() {
        Block b;
        expect_punct("{");
        while (!is_punct("}") && !at_eof()) {
            try {
                b.stmts.push_back(parse_stmt());
            } catch (ParseError&) {
                sync_stmt();
            }
        }
        expect_punct("}");
        return b;
    }

    StmtPtr parse_stmt() {
        SourcePos p = here();

        if (is_punct("{")) {
            auto st = std::make_unique<Stmt>();
            st->kind = Stmt::Kind::Nested;
            st->pos = p;
            st->body = std::make_unique<Block>(parse_block());
            return st;
        }

        unsigned attrs = 0;
        while (cur().kind == Token::Kind::Attribute) {
            if (cur().lexeme == "__in") attrs |= unsigned(Attr::In);
            else if (cur().lexeme == "__out") attrs |= unsigned(Attr::Out);
            else attrs |= unsigned(Attr::Mem);
            advance();
        }
        if (attrs != 0 || at_type()) {
            BaseType ty = parse_type();
            std::string name = parse_ident();
            return parse_decl_rest(ty, name, attrs, p);
        }

        if (is_kw("if")) return parse_if();

        if (is_kw("for")) {
            advance();
            auto st = std::make_unique<Stmt>();
            st->kind = Stmt::Kind::For;
            st->pos = p;
            expect_punct("(");
            if (is_kw("int")) {
                advance();
                std::string n = parse_ident();
                auto d = std::make_unique<Stmt>();
                d->kind = Stmt::Kind::Decl;
                d->pos = p;
                d->name = n;
                d->base = BaseType::Int;
                expect_op("=");
                d->init = parse_expr();
                st->for_init = std::move(d);
            } else if (!is_punct(";")) {
                st->for_init = parse_assign_stmt(false);
            }
            expect_punct(";");
            st->cond = parse_expr();
            expect_punct(";");
            st->for_step = parse_assign_stmt(false);
            expect_punct(")");
            st->body = std::make_unique<Block>(parse_block());
            return st;
        }

        if (is_kw("return")) {
            advance();
            auto st = std::make_unique<Stmt>();
            st->kind = Stmt::Kind::Return;
            st->pos = p;
            if (!is_punct(";")) st->value = parse_expr();
            expect_punct(";");
            return st;
        }

        if (is_kw("assert")) {
            advance();
            auto st = std::make_unique<Stmt>();
            st->kind = Stmt::Kind::Assert;
            st->pos = p;
            expect_punct("(");
            st->value = parse_expr();
            expect_punct(")");
            expect_punct(";");
            return st;
        }

        if (is_kw("core_vars")) {
            advance();
            auto st = std::make_unique<Stmt>();
            st->kind = Stmt::Kind::CoreVars;
            st->pos = p;
            expect_punct("(");
            st->name = parse_ident();
            expect_punct(")");
            expect_punct(";");
            return st;
        }

        // call or assignment
        if (cur().kind == Token::Kind::Identifier && peek().is(Token::Kind::Punct, "(")) {
            auto st = std::make_unique<Stmt>();
            st->kind = Stmt::Kind::Call;
            st->pos = p;
            st->value = parse_postfix();
            expect_punct(";");
            return st;
        }

        auto st = parse_assign_stmt(true);
        expect_punct(";");
        return st;
    }

    StmtPtr parse_if() {
        SourcePos p = here();
        advance();  // if
        auto st = std::make_unique<Stmt>();
        st->kind = Stmt::Kind::If;
        st->pos = p;
        expect_punct("(");
        st->cond = parse_expr();
        expect_punct(")");
        st->body = std::make_unique<Block>(parse_block());
        if (accept_kw("else")) {
            if (is_kw("if")) {
                // else if — wrap in a synthetic block
                auto blk = std::make_unique<Block>();
                blk->stmts.push_back(parse_if());
                st->else_body = std::move(blk);
            } else {
                st->else_body = std::make_unique<Block>(parse_block());
            }
        }
        return st;
    }

    StmtPtr parse_assign_stmt(bool /*full*/) {
        SourcePos p = here();
        ExprPtr place = parse_postfix();
        if (place->kind != Expr::Kind::Ident && place->kind != Expr::Kind::Index &&
            place->kind != Expr::Kind::Slice) {
            diags_.push_back({Diagnostic::Severity::Error,
                              "assignment target must be a variable, element or slice", p});
            throw ParseError{};
        }
        auto st = std::make_unique<Stmt>();
        st->kind = Stmt::Kind::Assign;
        st->pos = p;
        st->place = std::move(place);
        expect_op("=");
        st->value = parse_expr();
        return st;
    }

    // ---- expressions, C precedence ----

    ExprPtr parse_expr() { return parse_log_or(); }

    ExprPtr mk_bin(BinOp op, ExprPtr a, ExprPtr b, SourcePos p) {
        auto e = std::make_unique<Expr>();
        e->kind = Expr::Kind::Binary;
        e->bin = op;
        e->pos = p;
        e->a = std::move(a);
        e->b = std::move(b);
        return e;
    }

    ExprPtr parse_log_or() {
        auto e = parse_log_and();
        while (is_op("||")) {
            SourcePos p = here();
            advance();
            e = mk_bin(BinOp::LogOr, std::move(e), parse_log_and(), p);
        }
        return e;
    }
    ExprPtr parse_log_and() {
        auto e = parse_bit_or();
        while (is_op("&&")) {
            SourcePos p = here();
            advance();
            e = mk_bin(BinOp::LogAnd, std::move(e), parse_bit_or(), p);
        }
        return e;
    }
    ExprPtr parse_bit_or() {
        auto e = parse_bit_xor();
        while (is_op("|")) {
            SourcePos p = here();
            advance();
            e = mk_bin(BinOp::BitOr, std::move(e), parse_bit_xor(), p);
        }
        return e;
    }
    ExprPtr parse_bit_xor() {
        auto e = parse_bit_and();
        while (is_op("^")) {
            SourcePos p = here();
            advance();
            e = mk_bin(BinOp::BitXor, std::move(e), parse_bit_and(), p);
        }
        return e;
    }
    ExprPtr parse_bit_and() {
        auto e = parse_equality();
        while (is_op("&")) {
            SourcePos p = here();
            advance();
            e = mk_bin(BinOp::BitAnd, std::move(e), parse_equality(), p);
        }
        return e;
    }
    ExprPtr parse_equality() {
        auto e = parse_relational();
        for (;;) {
            SourcePos p = here();
            if (accept_op("==")) e = mk_bin(BinOp::Eq, std::move(e), parse_relational(), p);
            else if (accept_op("!=")) e = mk_bin(BinOp::Ne, std::move(e), parse_relational(), p);
            else return e;
        }
    }
    ExprPtr parse_relational() {
        auto e = parse_shift();
        for (;;) {
            SourcePos p = here();
            if (accept_op("<")) e = mk_bin(BinOp::Lt, std::move(e), parse_shift(), p);
            else if (accept_op("<=")) e = mk_bin(BinOp::Le, std::move(e), parse_shift(), p);
            else if (accept_op(">")) e = mk_bin(BinOp::Gt, std::move(e), parse_shift(), p);
            else if (accept_op(">=")) e = mk_bin(BinOp::Ge, std::move(e), parse_shift(), p);
            else return e;
        }
    }
    ExprPtr parse_shift() {
        auto e = parse_additive();
        for (;;) {
            SourcePos p = here();
            if (accept_op("<<")) e = mk_bin(BinOp::Shl, std::move(e), parse_additive(), p);
            else if (accept_op(">>")) e = mk_bin(BinOp::Shr, std::move(e), parse_additive(), p);
            else return e;
        }
    }
    ExprPtr parse_additive() {
        auto e = parse_multiplicative();
        for (;;) {
            SourcePos p = here();
            if (accept_op("+")) e = mk_bin(BinOp::Add, std::move(e), parse_multiplicative(), p);
            else if (accept_op("-")) e = mk_bin(BinOp::Sub, std::move(e), parse_multiplicative(), p);
            else return e;
        }
    }
    ExprPtr parse_multiplicative() {
        auto e = parse_unary();
        for (;;) {
            SourcePos p = here();
            if (accept_op("*")) e = mk_bin(BinOp::Mul, std::move(e), parse_unary(), p);
            else if (accept_op("/")) e = mk_bin(BinOp::Div, std::move(e), parse_unary(), p);
            else if (accept_op("%")) e = mk_bin(BinOp::Mod, std::move(e), parse_unary(), p);
            else return e;
        }
    }
    ExprPtr parse_unary() {
        SourcePos p = here();
        UnOp op;
        if (accept_op("!")) op = UnOp::LogNot;
        else if (accept_op("~")) op = UnOp::BitNot;
        else if (accept_op("-")) op = UnOp::Neg;
        else return parse_postfix();
        auto e = std::make_unique<Expr>();
        e->kind = Expr::Kind::Unary;
        e->un = op;
        e->pos = p;
        e->a = parse_unary();
        return e;
    }

    ExprPtr parse_postfix() {
        SourcePos p = here();
        if (accept_punct("(")) {
            auto e = parse_expr();
            expect_punct(")");
            return e;
        }
        if (cur().kind == Token::Kind::IntLiteral) {
            auto e = std::make_unique<Expr>();
            e->kind = Expr::Kind::IntLit;
            e->pos = p;
            e->value = parse_int_lit();
            return e;
        }
        if (cur().kind != Token::Kind::Identifier) fail("expression");
        std::string name = parse_ident();

        if (accept_punct("(")) {
            auto e = std::make_unique<Expr>();
            e->kind = Expr::Kind::Call;
            e->pos = p;
            e->name = std::move(name);
            if (!is_punct(")")) {
                do {
                    e->args.push_back(parse_expr());
                } while (accept_punct(","));
            }
            expect_punct(")");
            return e;
        }

        auto e = std::make_unique<Expr>();
        e->kind = Expr::Kind::Ident;
        e->pos = p;
        e->name = std::move(name);

        while (accept_punct("[")) {
            auto idx = parse_expr();
            if (accept_punct(":")) {
                auto hi = parse_expr();
                expect_punct("]");
                auto s = std::make_unique<Expr>();
                s->kind = Expr::Kind::Slice;
                s->pos = p;
                s->name = e->name;
                s->a = std::move(idx);
                s->b = std::move(hi);
                e = std::move(s);
            } else {
                expect_punct("]");
                auto s = std::make_unique<Expr>();
                s->kind = Expr::Kind::Index;
                s->pos = p;
                s->name = e->name;
                s->a = std::move(idx);
                e = std::move(s);
            }
            // only one level of indexing/slicing is meaningful on a flat
            // bit/int array; further postfix is rejected by the resolver
            break;
        }
        return e;
    }
};

}  // namespace

ProgramAst parse(const std::vector<Token>& tokens, DiagList& diags) {
    Parser p(tokens, diags);
    return p.run();
}

}  // namespace tenc

#include "symex.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace tenc {

std::vector<BitRef> bv_zext(const std::vector<BitRef>& a, size_t width) {
    std::vector<BitRef> r = a;
    while (r.size() < width) r.push_back(BitRef::constant(false));
    return r;
}

std::vector<BitRef> bv_add(NodeStore& s, std::vector<BitRef> a, std::vector<BitRef> b) {
    size_t w = std::max(a.size(), b.size());
    a = bv_zext(a, w);
    b = bv_zext(b, w);
    std::vector<BitRef> out(w);
    BitRef carry = BitRef::constant(false);
    for (size_t i = 0; i < w; ++i) {
        BitRef axb = s.mk_xor(a[i], b[i]);
        out[i] = s.mk_xor(axb, carry);
        carry = s.mk_or(s.mk_and(a[i], b[i]), s.mk_and(carry, axb));
    }
    return out;
}

std::vector<BitRef> bv_sub(NodeStore& s, std::vector<BitRef> a, std::vector<BitRef> b) {
    size_t w = std::max(a.size(), b.size());
    a = bv_zext(a, w);
    b = bv_zext(b, w);
    std::vector<BitRef> out(w);
    BitRef carry = BitRef::constant(true);  // a + ~b + 1
    for (size_t i = 0; i < w; ++i) {
        BitRef nb = s.mk_not(b[i]);
        BitRef axb = s.mk_xor(a[i], nb);
        out[i] = s.mk_xor(axb, carry);
        carry = s.mk_or(s.mk_and(a[i], nb), s.mk_and(carry, axb));
    }
    return out;
}

std::vector<BitRef> bv_mul(NodeStore& s, std::vector<BitRef> a, std::vector<BitRef> b) {
    size_t w = std::max(a.size(), b.size());
    a = bv_zext(a, w);
    b = bv_zext(b, w);
    std::vector<BitRef> acc(w, BitRef::constant(false));
    for (size_t i = 0; i < w; ++i) {
        if (b[i].is_const() && !b[i].const_value()) continue;
        std::vector<BitRef> part(w, BitRef::constant(false));
        for (size_t j = 0; i + j < w; ++j) part[i + j] = s.mk_and(a[j], b[i]);
        acc = bv_add(s, acc, part);
    }
    return acc;
}

std::vector<BitRef> bv_shl(const std::vector<BitRef>& a, int64_t amount) {
    std::vector<BitRef> out(a.size(), BitRef::constant(false));
    for (size_t i = 0; i < a.size(); ++i)
        if ((int64_t)i >= amount && (int64_t)i - amount < (int64_t)a.size())
            out[i] = a[i - amount];
    return out;
}

std::vector<BitRef> bv_shr(const std::vector<BitRef>& a, int64_t amount) {
    std::vector<BitRef> out(a.size(), BitRef::constant(false));
    for (size_t i = 0; i < a.size(); ++i)
        if (i + amount < a.size()) out[i] = a[i + amount];
    return out;
}

BitRef bv_eq(NodeStore& s, std::vector<BitRef> a, std::vector<BitRef> b) {
    size_t w = std::max(a.size(), b.size());
    a = bv_zext(a, w);
    b = bv_zext(b, w);
    std::vector<BitRef> xnors;
    for (size_t i = 0; i < w; ++i) xnors.push_back(s.mk_not(s.mk_xor(a[i], b[i])));
    return s.mk_nary(NodeKind::And, std::move(xnors));
}

BitRef bv_ult(NodeStore& s, std::vector<BitRef> a, std::vector<BitRef> b) {
    size_t w = std::max(a.size(), b.size());
    a = bv_zext(a, w);
    b = bv_zext(b, w);
    BitRef lt = BitRef::constant(false);
    for (size_t i = 0; i < w; ++i)  // LSB to MSB; the top differing bit wins
        lt = s.mk_ite(s.mk_xor(a[i], b[i]), b[i], lt);
    return lt;
}

std::vector<BitRef> merge_cells(NodeStore& s, BitRef cond,
                                const std::vector<BitRef>& then_cells,
                                const std::vector<BitRef>& else_cells) {
    if (then_cells.size() != else_cells.size())
        throw std::logic_error("merge_cells: width mismatch");
    std::vector<BitRef> out(then_cells.size());
    for (size_t i = 0; i < out.size(); ++i) {
        out[i] = then_cells[i] == else_cells[i]
                     ? then_cells[i]
                     : s.mk_ite(cond, then_cells[i], else_cells[i]);
    }
    return out;
}

namespace {

struct ExecError {
    Diagnostic diag;
};

struct Value {
    enum class Kind { Int, Bit, Arr } kind;
    int64_t i = 0;
    BitRef bit;
    std::vector<BitRef> arr;
};

Value v_int(int64_t v) { return Value{Value::Kind::Int, v, {}, {}}; }
Value v_bit(BitRef r) { return Value{Value::Kind::Bit, 0, r, {}}; }
Value v_arr(std::vector<BitRef> a) { return Value{Value::Kind::Arr, 0, {}, std::move(a)}; }

class Executor {
  public:
    Executor(const Program& prog, SymResult& res) : p_(prog), r_(res) {}

    void run() {
        // globals: __in cells get fresh inputs, everything else starts at 0
        uint32_t next_input = 0;
        for (const auto& g : p_.ast.globals) {
            const DeclInfo& d = p_.decls[g->decl_id];
            std::vector<BitRef> cells;
            if (d.base == BaseType::Bit) {
                if (d.is_in()) {
                    for (int k = 0; k < d.cells(); ++k) {
                        BitRef in = r_.store.add_input(next_input++, d.pos);
                        cells.push_back(in);
                        r_.state.input_vars.push_back(in.node_id());
                    }
                } else {
                    cells.assign(d.cells(), BitRef::constant(false));
                }
                globals_bits_[d.id] = cells;
                if (g->init) assign_decl_init(*g);
            } else {
                globals_ints_[d.id] = std::vector<int64_t>(d.cells(), 0);
                if (g->init) assign_decl_init(*g);
            }
        }

        Frame frame;
        frame.func = p_.main;
        frames_.push_back(std::move(frame));
        exec_block(p_.main->body);
        frames_.pop_back();

        for (int decl_id : p_.output_decls) {
            const auto& cells = globals_bits_.at(decl_id);
            for (BitRef c : cells) r_.state.output_bits.push_back(c);
        }
    }

  private:
    const Program& p_;
    SymResult& r_;

    using BitEnv = std::map<int, std::vector<BitRef>>;
    using IntEnv = std::map<int, std::vector<int64_t>>;

    struct Frame {
        const FuncDecl* func = nullptr;
        BitEnv bits;
        IntEnv ints;
        bool returned = false;
        Value ret = v_int(0);
        size_t entry_path_depth = 0;
    };

    BitEnv globals_bits_;
    IntEnv globals_ints_;
    std::vector<Frame> frames_;
    std::vector<BitRef> path_cond_;
    std::vector<std::pair<std::string, int64_t>> unroll_ctx_;
    uint64_t step_budget_ = 200'000'000;

    [[noreturn]] void fail(SourcePos pos, std::string msg) {
        if (!unroll_ctx_.empty()) {
            msg += " [unrolled at";
            for (auto& [n, v] : unroll_ctx_) msg += " " + n + "=" + std::to_string(v);
            msg += "]";
        }
        throw ExecError{{Diagnostic::Severity::Error, std::move(msg), pos}};
    }

    void tick(SourcePos pos) {
        if (step_budget_-- == 0) fail(pos, "execution budget exceeded while unrolling");
    }

    const DeclInfo& decl(int id) const { return p_.decls[id]; }

    std::vector<BitRef>* find_bits(int decl_id) {
        for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
            auto f = it->bits.find(decl_id);
            if (f != it->bits.end()) return &f->second;
        }
        auto g = globals_bits_.find(decl_id);
        return g == globals_bits_.end() ? nullptr : &g->second;
    }
    std::vector<int64_t>* find_ints(int decl_id) {
        for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
            auto f = it->ints.find(decl_id);
            if (f != it->ints.end()) return &f->second;
        }
        auto g = globals_ints_.find(decl_id);
        return g == globals_ints_.end() ? nullptr : &g->second;
    }

    void mark_mem(const DeclInfo& d, const std::vector<BitRef>& cells) {
        if (!d.is_mem()) return;
        for (BitRef c : cells) {
            if (c.is_const()) continue;
            NodeId id = c.node_id();
            if (mem_seen_.insert(id).second) r_.state.mem_marks.push_back(id);
        }
    }
    std::set<NodeId> mem_seen_;

    // ---- conversions ----

    BitRef to_bit(const Value& v, SourcePos pos) {
        switch (v.kind) {
            case Value::Kind::Bit: return v.bit;
            case Value::Kind::Int:
                if (v.i != 0 && v.i != 1)
                    fail(pos, "int value " + std::to_string(v.i) +
                                  " used where a single bit is expected");
                return BitRef::constant(v.i == 1);
            default:
                fail(pos, "bit array used where a single bit is expected");
        }
    }

    std::vector<BitRef> to_arr(const Value& v, size_t width, SourcePos pos) {
        switch (v.kind) {
            case Value::Kind::Arr: {
                std::vector<BitRef> a = v.arr;
                a.resize(width, BitRef::constant(false));  // truncate or zero-fill
                return a;
            }
            case Value::Kind::Bit: {
                std::vector<BitRef> a(width, BitRef::constant(false));
                if (width > 0) a[0] = v.bit;
                return a;
            }
            case Value::Kind::Int: {
                if (v.i < 0) fail(pos, "negative int value assigned to a bit array");
                if (width < 64 && (uint64_t)v.i >= (uint64_t(1) << width))
                    fail(pos, "int value " + std::to_string(v.i) +
                                  " does not fit in " + std::to_string(width) + " bits");
                std::vector<BitRef> a(width);
                for (size_t k = 0; k < width; ++k)
                    a[k] = BitRef::constant(((uint64_t)v.i >> k) & 1);
                return a;
            }
        }
        fail(pos, "internal: bad value");
    }

    int64_t to_int(const Value& v, SourcePos pos) {
        if (v.kind != Value::Kind::Int)
            fail(pos, "bit value used where a compile-time int is expected");
        return v.i;
    }

    // natural width of a value when used as an array operand
    size_t arr_width(const Value& v) const {
        switch (v.kind) {
            case Value::Kind::Arr: return v.arr.size();
            case Value::Kind::Bit: return 1;
            default: return 0;
        }
    }

    // ---- expression evaluation ----

    Value eval(const Expr& e) {
        tick(e.pos);
        switch (e.kind) {
            case Expr::Kind::IntLit:
                return v_int(e.value);

            case Expr::Kind::Ident: {
                const DeclInfo& d = decl(e.decl_id);
                if (d.base == BaseType::Bit) {
                    auto* cells = find_bits(e.decl_id);
                    if (!cells) fail(e.pos, "variable '" + d.name + "' is not live here");
                    if (d.arr_len < 0) return v_bit((*cells)[0]);
                    return v_arr(*cells);
                }
                auto* ints = find_ints(e.decl_id);
                if (!ints) fail(e.pos, "variable '" + d.name + "' is not live here");
                return v_int((*ints)[0]);
            }

            case Expr::Kind::Index: {
                const DeclInfo& d = decl(e.decl_id);
                int64_t idx = to_int(eval(*e.a), e.a->pos);
                if (idx < 0 || idx >= d.arr_len)
                    fail(e.pos, "index " + std::to_string(idx) + " out of bounds for '" +
                                    d.name + "[" + std::to_string(d.arr_len) + "]'");
                if (d.base == BaseType::Bit) {
                    auto* cells = find_bits(e.decl_id);
                    if (!cells) fail(e.pos, "variable '" + d.name + "' is not live here");
                    return v_bit((*cells)[idx]);
                }
                auto* ints = find_ints(e.decl_id);
                if (!ints) fail(e.pos, "variable '" + d.name + "' is not live here");
                return v_int((*ints)[idx]);
            }

            case Expr::Kind::Slice: {
                const DeclInfo& d = decl(e.decl_id);
                int64_t lo = to_int(eval(*e.a), e.a->pos);
                int64_t hi = to_int(eval(*e.b), e.b->pos);
                if (lo < 0 || hi > d.arr_len || lo >= hi)
                    fail(e.pos, "invalid slice [" + std::to_string(lo) + ":" +
                                    std::to_string(hi) + "] of '" + d.name + "'");
                auto* cells = find_bits(e.decl_id);
                if (!cells) fail(e.pos, "variable '" + d.name + "' is not live here");
                return v_arr(std::vector<BitRef>(cells->begin() + lo, cells->begin() + hi));
            }

            case Expr::Kind::Unary:
                return eval_unary(e);

            case Expr::Kind::Binary:
                return eval_binary(e);

            case Expr::Kind::Call:
                return eval_call(e);
        }
        fail(e.pos, "internal: bad expression");
    }

    Value eval_unary(const Expr& e) {
        Value a = eval(*e.a);
        switch (e.un) {
            case UnOp::LogNot:
                if (a.kind == Value::Kind::Int) return v_int(a.i == 0 ? 1 : 0);
                if (a.kind == Value::Kind::Bit) return v_bit(r_.store.mk_not(a.bit, e.pos));
                {
                    // !array: true iff the array value is zero
                    BitRef any = r_.store.mk_nary(NodeKind::Or, a.arr, e.pos);
                    return v_bit(r_.store.mk_not(any, e.pos));
                }
            case UnOp::BitNot:
                if (a.kind == Value::Kind::Int) return v_int(~a.i);
                if (a.kind == Value::Kind::Bit) return v_bit(r_.store.mk_not(a.bit, e.pos));
                {
                    std::vector<BitRef> out;
                    for (BitRef c : a.arr) out.push_back(r_.store.mk_not(c, e.pos));
                    return v_arr(std::move(out));
                }
            case UnOp::Neg:
                if (a.kind == Value::Kind::Int) return v_int(-(uint64_t)a.i);
                if (a.kind == Value::Kind::Arr) {
                    std::vector<BitRef> zero(a.arr.size(), BitRef::constant(false));
                    return v_arr(bv_sub(r_.store, zero, a.arr));
                }
                fail(e.pos, "unary minus is not defined on a single bit");
        }
        fail(e.pos, "internal: bad unary");
    }

    static bool is_flat_op(BinOp op) {
        return op == BinOp::BitAnd || op == BinOp::BitOr || op == BinOp::BitXor;
    }

    // Collect the operand spine of an associative bitwise operator so the
    // whole chain becomes one n-ary node instead of a ladder of binary ones.
    void collect_spine(const Expr& e, BinOp op, std::vector<const Expr*>& out) {
        if (e.kind == Expr::Kind::Binary && e.bin == op && e.type != ValType::IntVal) {
            collect_spine(*e.a, op, out);
            collect_spine(*e.b, op, out);
        } else {
            out.push_back(&e);
        }
    }

    Value eval_binary(const Expr& e) {
        // pure int expression: concrete arithmetic
        if (e.type == ValType::IntVal) return v_int(eval_int_binary(e));

        if (e.bin == BinOp::Shl || e.bin == BinOp::Shr) {
            Value a = eval(*e.a);
            int64_t amt = to_int(eval(*e.b), e.b->pos);
            if (amt < 0) fail(e.pos, "negative shift amount");
            if (a.kind == Value::Kind::Int) fail(e.pos, "internal: int shift mistyped");
            std::vector<BitRef> arr =
                a.kind == Value::Kind::Arr ? a.arr : std::vector<BitRef>{a.bit};
            auto res = e.bin == BinOp::Shl ? bv_shl(arr, amt) : bv_shr(arr, amt);
            if (a.kind == Value::Kind::Bit) return v_bit(res[0]);
            return v_arr(std::move(res));
        }

        if (is_flat_op(e.bin)) {
            std::vector<const Expr*> parts;
            collect_spine(e, e.bin, parts);
            std::vector<Value> vals;
            vals.reserve(parts.size());
            for (const Expr* pe : parts) vals.push_back(eval(*pe));
            bool any_arr = false;
            for (auto& v : vals) any_arr = any_arr || v.kind == Value::Kind::Arr;
            NodeKind k = e.bin == BinOp::BitAnd ? NodeKind::And
                         : e.bin == BinOp::BitOr ? NodeKind::Or
                                                 : NodeKind::Xor;
            if (!any_arr) {
                std::vector<BitRef> refs;
                for (size_t i = 0; i < vals.size(); ++i)
                    refs.push_back(to_bit(vals[i], parts[i]->pos));
                return v_bit(r_.store.mk_nary(k, std::move(refs), e.pos));
            }
            size_t w = 0;
            for (auto& v : vals) w = std::max(w, arr_width(v));
            std::vector<std::vector<BitRef>> arrs;
            for (size_t i = 0; i < vals.size(); ++i)
                arrs.push_back(to_arr(vals[i], w, parts[i]->pos));
            std::vector<BitRef> out(w);
            for (size_t lane = 0; lane < w; ++lane) {
                std::vector<BitRef> ops;
                for (auto& a : arrs) ops.push_back(a[lane]);
                out[lane] = r_.store.mk_nary(k, std::move(ops), e.pos);
            }
            return v_arr(std::move(out));
        }

        Value a = eval(*e.a);
        Value b = eval(*e.b);
        NodeStore& s = r_.store;

        bool arr_ctx = a.kind == Value::Kind::Arr || b.kind == Value::Kind::Arr;

        switch (e.bin) {
            case BinOp::LogAnd:
            case BinOp::LogOr: {
                BitRef ba = truthy(a, e.a->pos);
                BitRef bb = truthy(b, e.b->pos);
                return v_bit(e.bin == BinOp::LogAnd ? s.mk_and(ba, bb, e.pos)
                                                    : s.mk_or(ba, bb, e.pos));
            }
            case BinOp::Eq:
            case BinOp::Ne: {
                BitRef eq;
                if (arr_ctx) {
                    size_t w = std::max(arr_width(a), arr_width(b));
                    if (a.kind == Value::Kind::Int) w = std::max(w, min_width(a.i, e.pos));
                    if (b.kind == Value::Kind::Int) w = std::max(w, min_width(b.i, e.pos));
                    eq = bv_eq(s, to_arr(a, w, e.a->pos), to_arr(b, w, e.b->pos));
                } else {
                    eq = s.mk_not(s.mk_xor(to_bit(a, e.a->pos), to_bit(b, e.b->pos)), e.pos);
                }
                return v_bit(e.bin == BinOp::Eq ? eq : s.mk_not(eq, e.pos));
            }
            case BinOp::Lt:
            case BinOp::Le:
            case BinOp::Gt:
            case BinOp::Ge: {
                size_t w = std::max(std::max(arr_width(a), arr_width(b)), size_t(1));
                if (a.kind == Value::Kind::Int) w = std::max(w, min_width(a.i, e.pos));
                if (b.kind == Value::Kind::Int) w = std::max(w, min_width(b.i, e.pos));
                auto va = to_arr(a, w, e.a->pos);
                auto vb = to_arr(b, w, e.b->pos);
                switch (e.bin) {
                    case BinOp::Lt: return v_bit(bv_ult(s, va, vb));
                    case BinOp::Gt: return v_bit(bv_ult(s, vb, va));
                    case BinOp::Le: return v_bit(s.mk_not(bv_ult(s, vb, va), e.pos));
                    default: return v_bit(s.mk_not(bv_ult(s, va, vb), e.pos));
                }
            }
            case BinOp::Add:
            case BinOp::Sub:
            case BinOp::Mul: {
                size_t w = std::max(std::max(arr_width(a), arr_width(b)), size_t(1));
                if (a.kind == Value::Kind::Int) w = std::max(w, min_width(a.i, e.pos));
                if (b.kind == Value::Kind::Int) w = std::max(w, min_width(b.i, e.pos));
                auto va = to_arr(a, w, e.a->pos);
                auto vb = to_arr(b, w, e.b->pos);
                std::vector<BitRef> res;
                if (e.bin == BinOp::Add) res = bv_add(s, va, vb);
                else if (e.bin == BinOp::Sub) res = bv_sub(s, va, vb);
                else res = bv_mul(s, va, vb);
                if (!arr_ctx) return v_bit(res[0]);  // scalar ± scalar stays a bit
                return v_arr(std::move(res));
            }
            default:
                fail(e.pos, "internal: unexpected operator on bit values");
        }
    }

    size_t min_width(int64_t v, SourcePos pos) {
        if (v < 0) fail(pos, "negative int value used in a bit-array context");
        size_t w = 1;
        while (w < 63 && (uint64_t)v >= (uint64_t(1) << w)) ++w;
        return w;
    }

    BitRef truthy(const Value& v, SourcePos pos) {
        if (v.kind == Value::Kind::Arr)
            return r_.store.mk_nary(NodeKind::Or, v.arr, pos);
        if (v.kind == Value::Kind::Int) return BitRef::constant(v.i != 0);
        return v.bit;
    }

    int64_t eval_int_binary(const Expr& e) {
        int64_t a = to_int(eval(*e.a), e.a->pos);
        // && and || short-circuit on ints
        if (e.bin == BinOp::LogAnd && a == 0) return 0;
        if (e.bin == BinOp::LogOr && a != 0) return 1;
        int64_t b = to_int(eval(*e.b), e.b->pos);
        switch (e.bin) {
            case BinOp::BitAnd: return a & b;
            case BinOp::BitOr: return a | b;
            case BinOp::BitXor: return a ^ b;
            case BinOp::LogAnd: return b != 0;
            case BinOp::LogOr: return b != 0;
            case BinOp::Eq: return a == b;
            case BinOp::Ne: return a != b;
            case BinOp::Lt: return a < b;
            case BinOp::Le: return a <= b;
            case BinOp::Gt: return a > b;
            case BinOp::Ge: return a >= b;
            case BinOp::Shl:
                if (b < 0 || b > 63) fail(e.pos, "int shift amount out of range");
                return (int64_t)((uint64_t)a << b);
            case BinOp::Shr:
                if (b < 0 || b > 63) fail(e.pos, "int shift amount out of range");
                return a >> b;
            case BinOp::Add: return (int64_t)((uint64_t)a + (uint64_t)b);
            case BinOp::Sub: return (int64_t)((uint64_t)a - (uint64_t)b);
            case BinOp::Mul: return (int64_t)((uint64_t)a * (uint64_t)b);
            case BinOp::Div:
                if (b == 0) fail(e.pos, "division of a service int by zero");
                if (a == INT64_MIN && b == -1) fail(e.pos, "int division overflow");
                return a / b;
            case BinOp::Mod:
                if (b == 0) fail(e.pos, "division of a service int by zero");
                if (a == INT64_MIN && b == -1) fail(e.pos, "int division overflow");
                return a % b;
        }
        fail(e.pos, "internal: bad int operator");
    }

    Value eval_call(const Expr& e) {
        const FuncDecl* f = p_.funcs.at(e.name);
        Frame frame;
        frame.func = f;
        frame.entry_path_depth = path_cond_.size();
        for (size_t i = 0; i < f->params.size(); ++i) {
            const Param& par = f->params[i];
            Value arg = eval(*e.args[i]);
            if (par.base == BaseType::Int) {
                frame.ints[par.decl_id] = {to_int(arg, e.args[i]->pos)};
            } else if (par.arr_len < 0) {
                frame.bits[par.decl_id] = {to_bit(arg, e.args[i]->pos)};
            } else {
                frame.bits[par.decl_id] = to_arr(arg, par.arr_len, e.args[i]->pos);
            }
        }
        frames_.push_back(std::move(frame));
        exec_block(f->body);
        Frame done = std::move(frames_.back());
        frames_.pop_back();
        if (f->ret == BaseType::Void) return v_int(0);
        if (!done.returned)
            fail(e.pos, "function '" + f->name + "' did not return a value");
        return done.ret;
    }

    // ---- statements ----

    void exec_block(const Block& b) {
        std::vector<int> declared;
        for (const auto& st : b.stmts) {
            if (frames_.back().returned) break;
            exec_stmt(*st, declared);
        }
        for (int id : declared) {
            frames_.back().bits.erase(id);
            frames_.back().ints.erase(id);
        }
    }

    void exec_stmt(const Stmt& st, std::vector<int>& declared) {
        tick(st.pos);
        switch (st.kind) {
            case Stmt::Kind::Decl: {
                const DeclInfo& d = decl(st.decl_id);
                if (d.base == BaseType::Bit)
                    frames_.back().bits[d.id] =
                        std::vector<BitRef>(d.cells(), BitRef::constant(false));
                else
                    frames_.back().ints[d.id] = std::vector<int64_t>(d.cells(), 0);
                declared.push_back(d.id);
                if (st.init) assign_decl_init(st);
                break;
            }
            case Stmt::Kind::Assign:
                assign(*st.place, eval(*st.value), st.pos);
                break;
            case Stmt::Kind::If:
                exec_if(st);
                break;
            case Stmt::Kind::For:
                exec_for(st);
                break;
            case Stmt::Kind::Call:
                eval(*st.value);
                break;
            case Stmt::Kind::Return: {
                Frame& f = frames_.back();
                if (path_cond_.size() > f.entry_path_depth)
                    fail(st.pos, "return under a symbolic condition is not supported");
                if (st.value) f.ret = eval(*st.value);
                f.returned = true;
                break;
            }
            case Stmt::Kind::Assert: {
                Value v = eval(*st.value);
                if (v.kind == Value::Kind::Int) {
                    if (v.i == 0)
                        fail(st.pos, "assert on a service int failed during translation");
                    break;
                }
                BitRef cond = to_bit(v, st.pos);
                // under a symbolic branch the assertion applies only on that path
                if (!path_cond_.empty()) {
                    std::vector<BitRef> ops;
                    for (BitRef g : path_cond_) ops.push_back(r_.store.mk_not(g, st.pos));
                    ops.push_back(cond);
                    cond = r_.store.mk_nary(NodeKind::Or, std::move(ops), st.pos);
                }
                r_.state.asserts.push_back(cond);
                break;
            }
            case Stmt::Kind::CoreVars: {
                const DeclInfo& d = decl(st.decl_id);
                auto* cells = find_bits(st.decl_id);
                if (!cells) fail(st.pos, "variable '" + d.name + "' is not live here");
                r_.state.core_records.push_back(CoreRecord{d.name, *cells});
                break;
            }
            case Stmt::Kind::Nested:
                exec_block(*st.body);
                break;
        }
    }

    void assign_decl_init(const Stmt& st) {
        Expr place;
        place.kind = Expr::Kind::Ident;
        place.pos = st.pos;
        place.name = st.name;
        place.decl_id = st.decl_id;
        assign(place, eval(*st.init), st.pos);
    }

    void assign(const Expr& place, Value val, SourcePos pos) {
        const DeclInfo& d = decl(place.decl_id);
        if (d.base == BaseType::Int) {
            auto* ints = find_ints(place.decl_id);
            if (!ints) fail(pos, "variable '" + d.name + "' is not live here");
            if (!int_write_ok(place.decl_id))
                fail(pos, "service int '" + d.name + "' modified under a symbolic condition");
            int64_t v = to_int(val, pos);
            if (place.kind == Expr::Kind::Index) {
                int64_t idx = to_int(eval(*place.a), place.a->pos);
                if (idx < 0 || idx >= d.arr_len)
                    fail(pos, "index " + std::to_string(idx) + " out of bounds for '" +
                                  d.name + "'");
                (*ints)[idx] = v;
            } else {
                (*ints)[0] = v;
            }
            return;
        }

        auto* cells = find_bits(place.decl_id);
        if (!cells) fail(pos, "variable '" + d.name + "' is not live here");
        switch (place.kind) {
            case Expr::Kind::Ident: {
                if (d.arr_len < 0) {
                    (*cells)[0] = to_bit(val, pos);
                } else {
                    *cells = to_arr(val, d.arr_len, pos);
                }
                break;
            }
            case Expr::Kind::Index: {
                int64_t idx = to_int(eval(*place.a), place.a->pos);
                if (idx < 0 || idx >= d.arr_len)
                    fail(pos, "index " + std::to_string(idx) + " out of bounds for '" +
                                  d.name + "[" + std::to_string(d.arr_len) + "]'");
                (*cells)[idx] = to_bit(val, pos);
                break;
            }
            case Expr::Kind::Slice: {
                int64_t lo = to_int(eval(*place.a), place.a->pos);
                int64_t hi = to_int(eval(*place.b), place.b->pos);
                if (lo < 0 || hi > d.arr_len || lo >= hi)
                    fail(pos, "invalid slice bounds on '" + d.name + "'");
                auto vals = to_arr(val, hi - lo, pos);
                for (int64_t k = lo; k < hi; ++k) (*cells)[k] = vals[k - lo];
                break;
            }
            default:
                fail(pos, "internal: bad place");
        }
        mark_mem(d, *cells);
    }

    // Ints may only change while no symbolic branch is open; this keeps the
    // service environment single-valued across merges.
    bool int_write_ok(int) const { return path_cond_.empty(); }

    void exec_if(const Stmt& st) {
        Value cv = eval(*st.cond);
        if (cv.kind == Value::Kind::Int) {
            if (cv.i != 0) exec_block(*st.body);
            else if (st.else_body) exec_block(*st.else_body);
            return;
        }
        BitRef cond = truthy(cv, st.pos);
        if (cond.is_const()) {
            if (cond.const_value()) exec_block(*st.body);
            else if (st.else_body) exec_block(*st.else_body);
            return;
        }

        // symbolic condition: run both arms on copies and merge cell-wise
        BitEnv g_snap = globals_bits_;
        std::vector<BitEnv> f_snap;
        for (auto& f : frames_) f_snap.push_back(f.bits);
        IntEnv gi_snap = globals_ints_;
        std::vector<IntEnv> fi_snap;
        for (auto& f : frames_) fi_snap.push_back(f.ints);

        path_cond_.push_back(cond);
        exec_block(*st.body);
        BitEnv g_then = std::move(globals_bits_);
        std::vector<BitEnv> f_then;
        for (auto& f : frames_) f_then.push_back(std::move(f.bits));
        IntEnv gi_then = std::move(globals_ints_);
        std::vector<IntEnv> fi_then;
        for (auto& f : frames_) fi_then.push_back(std::move(f.ints));

        globals_bits_ = g_snap;
        globals_ints_ = gi_snap;
        for (size_t i = 0; i < frames_.size(); ++i) {
            frames_[i].bits = f_snap[i];
            frames_[i].ints = fi_snap[i];
        }
        if (st.else_body) exec_block(*st.else_body);
        path_cond_.pop_back();

        if (globals_ints_ != gi_then) {
            fail(st.pos, "service int modified under a symbolic condition");
        }
        for (size_t i = 0; i < frames_.size(); ++i) {
            if (frames_[i].ints != fi_then[i])
                fail(st.pos, "service int modified under a symbolic condition");
        }

        merge_env(cond, globals_bits_, g_then);
        for (size_t i = 0; i < frames_.size(); ++i)
            merge_env(cond, frames_[i].bits, f_then[i]);
    }

    void merge_env(BitRef cond, BitEnv& else_env, const BitEnv& then_env) {
        for (auto& [id, else_cells] : else_env) {
            auto it = then_env.find(id);
            if (it == then_env.end()) continue;
            else_cells = merge_cells(r_.store, cond, it->second, else_cells);
        }
    }

    void exec_for(const Stmt& st) {
        std::vector<int> declared;
        if (st.for_init) {
            if (st.for_init->kind == Stmt::Kind::Decl) {
                exec_stmt(*st.for_init, declared);
            } else {
                std::vector<int> dummy;
                exec_stmt(*st.for_init, dummy);
            }
        }
        std::string counter_name =
            st.for_init ? (st.for_init->kind == Stmt::Kind::Decl ? st.for_init->name
                                                                 : st.for_init->place->name)
                        : "";
        int counter_id = st.for_init
                             ? (st.for_init->kind == Stmt::Kind::Decl
                                    ? st.for_init->decl_id
                                    : st.for_init->place->decl_id)
                             : -1;
        uint64_t iterations = 0;
        for (;;) {
            Value cv = eval(*st.cond);
            if (to_int(cv, st.cond->pos) == 0) break;
            if (++iterations > 30'000'000)
                fail(st.pos, "loop iteration limit exceeded (bound not constant?)");
            if (counter_id >= 0) {
                auto* ints = find_ints(counter_id);
                unroll_ctx_.push_back({counter_name, ints ? (*ints)[0] : 0});
            }
            exec_block(*st.body);
            if (counter_id >= 0) unroll_ctx_.pop_back();
            if (frames_.back().returned) break;
            std::vector<int> dummy;
            exec_stmt(*st.for_step, dummy);
        }
        for (int id : declared) {
            frames_.back().bits.erase(id);
            frames_.back().ints.erase(id);
        }
    }
};

}  // namespace

SymResult execute(const Program& prog) {
    SymResult res;
    try {
        Executor ex(prog, res);
        ex.run();
        res.ok = true;
    } catch (ExecError& e) {
        res.diags.push_back(e.diag);
        res.ok = false;
    }
    return res;
}

}  // namespace tenc

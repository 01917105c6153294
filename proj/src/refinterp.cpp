#include "refinterp.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>

namespace tenc {

namespace {

struct Fault {
    Diagnostic diag;
};

struct CVal {
    enum class Kind { Int, Bit, Arr } kind = Kind::Int;
    int64_t i = 0;
    bool bit = false;
    std::vector<uint8_t> arr;
};

CVal c_int(int64_t v) { CVal c; c.kind = CVal::Kind::Int; c.i = v; return c; }
CVal c_bit(bool v) { CVal c; c.kind = CVal::Kind::Bit; c.bit = v; return c; }
CVal c_arr(std::vector<uint8_t> a) {
    CVal c;
    c.kind = CVal::Kind::Arr;
    c.arr = std::move(a);
    return c;
}

class Interp {
  public:
    Interp(const Program& prog, const std::vector<uint8_t>& inputs)
        : p_(prog), inputs_(inputs) {}

    std::vector<uint8_t> run() {
        size_t next = 0;
        for (const auto& g : p_.ast.globals) {
            const DeclInfo& d = p_.decls[g->decl_id];
            if (d.base == BaseType::Bit) {
                std::vector<uint8_t> cells(d.cells(), 0);
                if (d.is_in())
                    for (int k = 0; k < d.cells(); ++k) cells[k] = inputs_.at(next++);
                gbits_[d.id] = std::move(cells);
            } else {
                gints_[d.id] = std::vector<int64_t>(d.cells(), 0);
            }
            if (g->init) {
                Expr place;
                place.kind = Expr::Kind::Ident;
                place.pos = g->pos;
                place.name = g->name;
                place.decl_id = g->decl_id;
                assign(place, eval(*g->init), g->pos);
            }
        }

        Frame f;
        f.func = p_.main;
        frames_.push_back(std::move(f));
        exec_block(p_.main->body);
        frames_.pop_back();

        std::vector<uint8_t> out;
        for (int id : p_.output_decls)
            for (uint8_t b : gbits_.at(id)) out.push_back(b);
        return out;
    }

  private:
    const Program& p_;
    const std::vector<uint8_t>& inputs_;

    using BitEnv = std::map<int, std::vector<uint8_t>>;
    using IntEnv = std::map<int, std::vector<int64_t>>;

    struct Frame {
        const FuncDecl* func = nullptr;
        BitEnv bits;
        IntEnv ints;
        bool returned = false;
        CVal ret;
    };

    BitEnv gbits_;
    IntEnv gints_;
    std::vector<Frame> frames_;
    uint64_t budget_ = 400'000'000;

    [[noreturn]] void fault(SourcePos pos, const std::string& msg) {
        throw Fault{{Diagnostic::Severity::Error, msg, pos}};
    }
    void tick(SourcePos pos) {
        if (budget_-- == 0) fault(pos, "interpreter budget exceeded");
    }

    const DeclInfo& decl(int id) const { return p_.decls[id]; }

    std::vector<uint8_t>* find_bits(int id) {
        for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
            auto f = it->bits.find(id);
            if (f != it->bits.end()) return &f->second;
        }
        auto g = gbits_.find(id);
        return g == gbits_.end() ? nullptr : &g->second;
    }
    std::vector<int64_t>* find_ints(int id) {
        for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
            auto f = it->ints.find(id);
            if (f != it->ints.end()) return &f->second;
        }
        auto g = gints_.find(id);
        return g == gints_.end() ? nullptr : &g->second;
    }

    bool to_bit(const CVal& v, SourcePos pos) {
        if (v.kind == CVal::Kind::Bit) return v.bit;
        if (v.kind == CVal::Kind::Int) {
            if (v.i != 0 && v.i != 1) fault(pos, "int value used as a bit must be 0 or 1");
            return v.i == 1;
        }
        fault(pos, "array used where a single bit is expected");
    }

    std::vector<uint8_t> to_arr(const CVal& v, size_t width, SourcePos pos) {
        if (v.kind == CVal::Kind::Arr) {
            std::vector<uint8_t> a = v.arr;
            a.resize(width, 0);
            return a;
        }
        if (v.kind == CVal::Kind::Bit) {
            std::vector<uint8_t> a(width, 0);
            if (width) a[0] = v.bit;
            return a;
        }
        if (v.i < 0) fault(pos, "negative int in a bit-array context");
        if (width < 64 && (uint64_t)v.i >= (uint64_t(1) << width))
            fault(pos, "int value does not fit the bit array");
        std::vector<uint8_t> a(width, 0);
        for (size_t k = 0; k < width; ++k) a[k] = ((uint64_t)v.i >> k) & 1;
        return a;
    }

    int64_t to_int(const CVal& v, SourcePos pos) {
        if (v.kind != CVal::Kind::Int) fault(pos, "bit value used as an int");
        return v.i;
    }

    size_t width_of(const CVal& v) const {
        if (v.kind == CVal::Kind::Arr) return v.arr.size();
        if (v.kind == CVal::Kind::Bit) return 1;
        return 0;
    }
    size_t min_width(int64_t v, SourcePos pos) {
        if (v < 0) fault(pos, "negative int in a bit-array context");
        size_t w = 1;
        while (w < 63 && (uint64_t)v >= (uint64_t(1) << w)) ++w;
        return w;
    }

    static uint64_t arr_value(const std::vector<uint8_t>& a) {
        // low 64 bits are enough for comparisons below (widths are padded equal)
        uint64_t v = 0;
        for (size_t i = 0; i < a.size() && i < 64; ++i) v |= uint64_t(a[i]) << i;
        return v;
    }

    CVal eval(const Expr& e) {
        tick(e.pos);
        switch (e.kind) {
            case Expr::Kind::IntLit:
                return c_int(e.value);
            case Expr::Kind::Ident: {
                const DeclInfo& d = decl(e.decl_id);
                if (d.base == BaseType::Bit) {
                    auto* cells = find_bits(d.id);
                    if (!cells) fault(e.pos, "variable not live");
                    if (d.arr_len < 0) return c_bit((*cells)[0]);
                    return c_arr(*cells);
                }
                auto* ints = find_ints(d.id);
                if (!ints) fault(e.pos, "variable not live");
                return c_int((*ints)[0]);
            }
            case Expr::Kind::Index: {
                const DeclInfo& d = decl(e.decl_id);
                int64_t idx = to_int(eval(*e.a), e.a->pos);
                if (idx < 0 || idx >= d.arr_len)
                    fault(e.pos, "index " + std::to_string(idx) + " out of bounds for '" +
                                     d.name + "'");
                if (d.base == BaseType::Bit) {
                    auto* cells = find_bits(d.id);
                    if (!cells) fault(e.pos, "variable not live");
                    return c_bit((*cells)[idx]);
                }
                auto* ints = find_ints(d.id);
                if (!ints) fault(e.pos, "variable not live");
                return c_int((*ints)[idx]);
            }
            case Expr::Kind::Slice: {
                const DeclInfo& d = decl(e.decl_id);
                int64_t lo = to_int(eval(*e.a), e.a->pos);
                int64_t hi = to_int(eval(*e.b), e.b->pos);
                if (lo < 0 || hi > d.arr_len || lo >= hi) fault(e.pos, "invalid slice bounds");
                auto* cells = find_bits(d.id);
                if (!cells) fault(e.pos, "variable not live");
                return c_arr(std::vector<uint8_t>(cells->begin() + lo, cells->begin() + hi));
            }
            case Expr::Kind::Unary: {
                CVal a = eval(*e.a);
                switch (e.un) {
                    case UnOp::LogNot:
                        if (a.kind == CVal::Kind::Int) return c_int(a.i == 0);
                        if (a.kind == CVal::Kind::Bit) return c_bit(!a.bit);
                        return c_bit(std::all_of(a.arr.begin(), a.arr.end(),
                                                 [](uint8_t b) { return !b; }));
                    case UnOp::BitNot:
                        if (a.kind == CVal::Kind::Int) return c_int(~a.i);
                        if (a.kind == CVal::Kind::Bit) return c_bit(!a.bit);
                        {
                            for (auto& b : a.arr) b = !b;
                            return a;
                        }
                    case UnOp::Neg:
                        if (a.kind == CVal::Kind::Int) return c_int(-(uint64_t)a.i);
                        if (a.kind == CVal::Kind::Arr) {
                            // two's complement within the array width
                            std::vector<uint8_t> out(a.arr.size());
                            uint8_t carry = 1;
                            for (size_t i = 0; i < a.arr.size(); ++i) {
                                uint8_t v = (!a.arr[i]) + carry;
                                out[i] = v & 1;
                                carry = v >> 1;
                            }
                            return c_arr(std::move(out));
                        }
                        fault(e.pos, "unary minus on a single bit");
                }
                fault(e.pos, "internal");
            }
            case Expr::Kind::Binary:
                return eval_binary(e);
            case Expr::Kind::Call: {
                const FuncDecl* f = p_.funcs.at(e.name);
                Frame frame;
                frame.func = f;
                for (size_t i = 0; i < f->params.size(); ++i) {
                    const Param& par = f->params[i];
                    CVal arg = eval(*e.args[i]);
                    if (par.base == BaseType::Int)
                        frame.ints[par.decl_id] = {to_int(arg, e.args[i]->pos)};
                    else if (par.arr_len < 0)
                        frame.bits[par.decl_id] = {to_bit(arg, e.args[i]->pos)};
                    else
                        frame.bits[par.decl_id] = to_arr(arg, par.arr_len, e.args[i]->pos);
                }
                frames_.push_back(std::move(frame));
                exec_block(f->body);
                Frame done = std::move(frames_.back());
                frames_.pop_back();
                if (f->ret == BaseType::Void) return c_int(0);
                if (!done.returned)
                    fault(e.pos, "function '" + f->name + "' did not return a value");
                return done.ret;
            }
        }
        fault(e.pos, "internal");
    }

    CVal eval_binary(const Expr& e) {
        if (e.type == ValType::IntVal) {
            int64_t a = to_int(eval(*e.a), e.a->pos);
            if (e.bin == BinOp::LogAnd && a == 0) return c_int(0);
            if (e.bin == BinOp::LogOr && a != 0) return c_int(1);
            int64_t b = to_int(eval(*e.b), e.b->pos);
            switch (e.bin) {
                case BinOp::BitAnd: return c_int(a & b);
                case BinOp::BitOr: return c_int(a | b);
                case BinOp::BitXor: return c_int(a ^ b);
                case BinOp::LogAnd: return c_int(b != 0);
                case BinOp::LogOr: return c_int(b != 0);
                case BinOp::Eq: return c_int(a == b);
                case BinOp::Ne: return c_int(a != b);
                case BinOp::Lt: return c_int(a < b);
                case BinOp::Le: return c_int(a <= b);
                case BinOp::Gt: return c_int(a > b);
                case BinOp::Ge: return c_int(a >= b);
                case BinOp::Shl:
                    if (b < 0 || b > 63) fault(e.pos, "int shift out of range");
                    return c_int((int64_t)((uint64_t)a << b));
                case BinOp::Shr:
                    if (b < 0 || b > 63) fault(e.pos, "int shift out of range");
                    return c_int(a >> b);
                case BinOp::Add: return c_int((int64_t)((uint64_t)a + (uint64_t)b));
                case BinOp::Sub: return c_int((int64_t)((uint64_t)a - (uint64_t)b));
                case BinOp::Mul: return c_int((int64_t)((uint64_t)a * (uint64_t)b));
                case BinOp::Div:
                    if (b == 0) fault(e.pos, "division of a service int by zero");
                    if (a == INT64_MIN && b == -1) fault(e.pos, "int division overflow");
                    return c_int(a / b);
                case BinOp::Mod:
                    if (b == 0) fault(e.pos, "division of a service int by zero");
                    if (a == INT64_MIN && b == -1) fault(e.pos, "int division overflow");
                    return c_int(a % b);
            }
            fault(e.pos, "internal");
        }

        if (e.bin == BinOp::Shl || e.bin == BinOp::Shr) {
            CVal a = eval(*e.a);
            int64_t amt = to_int(eval(*e.b), e.b->pos);
            if (amt < 0) fault(e.pos, "negative shift amount");
            bool scalar = a.kind == CVal::Kind::Bit;
            std::vector<uint8_t> arr =
                scalar ? std::vector<uint8_t>{a.bit} : to_arr(a, width_of(a), e.pos);
            std::vector<uint8_t> out(arr.size(), 0);
            for (size_t i = 0; i < arr.size(); ++i) {
                int64_t src = e.bin == BinOp::Shl ? (int64_t)i - amt : (int64_t)i + amt;
                if (src >= 0 && src < (int64_t)arr.size()) out[i] = arr[src];
            }
            if (scalar) return c_bit(out[0] != 0);
            return c_arr(std::move(out));
        }

        CVal a = eval(*e.a);
        CVal b = eval(*e.b);
        bool arr_ctx = a.kind == CVal::Kind::Arr || b.kind == CVal::Kind::Arr;

        auto truthy = [&](const CVal& v, SourcePos pos) -> bool {
            if (v.kind == CVal::Kind::Int) return v.i != 0;
            if (v.kind == CVal::Kind::Bit) return v.bit;
            (void)pos;
            for (uint8_t x : v.arr)
                if (x) return true;
            return false;
        };

        switch (e.bin) {
            case BinOp::LogAnd: return c_bit(truthy(a, e.pos) && truthy(b, e.pos));
            case BinOp::LogOr: return c_bit(truthy(a, e.pos) || truthy(b, e.pos));
            case BinOp::BitAnd:
            case BinOp::BitOr:
            case BinOp::BitXor: {
                if (!arr_ctx) {
                    bool x = to_bit(a, e.a->pos), y = to_bit(b, e.b->pos);
                    if (e.bin == BinOp::BitAnd) return c_bit(x && y);
                    if (e.bin == BinOp::BitOr) return c_bit(x || y);
                    return c_bit(x != y);
                }
                size_t w = std::max(width_of(a), width_of(b));
                if (a.kind == CVal::Kind::Int) w = std::max(w, min_width(a.i, e.pos));
                if (b.kind == CVal::Kind::Int) w = std::max(w, min_width(b.i, e.pos));
                auto va = to_arr(a, w, e.a->pos);
                auto vb = to_arr(b, w, e.b->pos);
                std::vector<uint8_t> out(w);
                for (size_t i = 0; i < w; ++i) {
                    if (e.bin == BinOp::BitAnd) out[i] = va[i] && vb[i];
                    else if (e.bin == BinOp::BitOr) out[i] = va[i] || vb[i];
                    else out[i] = va[i] != vb[i];
                }
                return c_arr(std::move(out));
            }
            case BinOp::Eq:
            case BinOp::Ne:
            case BinOp::Lt:
            case BinOp::Le:
            case BinOp::Gt:
            case BinOp::Ge: {
                bool res;
                if (!arr_ctx && a.kind != CVal::Kind::Int && b.kind != CVal::Kind::Int) {
                    uint64_t x = to_bit(a, e.a->pos), y = to_bit(b, e.b->pos);
                    res = compare(e.bin, x, y);
                } else {
                    size_t w = std::max(std::max(width_of(a), width_of(b)), size_t(1));
                    if (a.kind == CVal::Kind::Int) w = std::max(w, min_width(a.i, e.pos));
                    if (b.kind == CVal::Kind::Int) w = std::max(w, min_width(b.i, e.pos));
                    if (w > 64) {
                        auto va = to_arr(a, w, e.a->pos);
                        auto vb = to_arr(b, w, e.b->pos);
                        res = compare_wide(e.bin, va, vb);
                    } else {
                        uint64_t x = arr_value(to_arr(a, w, e.a->pos));
                        uint64_t y = arr_value(to_arr(b, w, e.b->pos));
                        res = compare(e.bin, x, y);
                    }
                }
                return c_bit(res);
            }
            case BinOp::Add:
            case BinOp::Sub:
            case BinOp::Mul: {
                size_t w = std::max(std::max(width_of(a), width_of(b)), size_t(1));
                if (a.kind == CVal::Kind::Int) w = std::max(w, min_width(a.i, e.pos));
                if (b.kind == CVal::Kind::Int) w = std::max(w, min_width(b.i, e.pos));
                auto va = to_arr(a, w, e.a->pos);
                auto vb = to_arr(b, w, e.b->pos);
                std::vector<uint8_t> out(w, 0);
                if (e.bin == BinOp::Mul) {
                    // schoolbook, truncated to w bits
                    for (size_t i = 0; i < w; ++i) {
                        if (!vb[i]) continue;
                        uint8_t carry = 0;
                        for (size_t j = 0; i + j < w; ++j) {
                            uint8_t v = out[i + j] + (va[j] & 1) + carry;
                            out[i + j] = v & 1;
                            carry = v >> 1;
                        }
                    }
                } else {
                    uint8_t carry = e.bin == BinOp::Sub ? 1 : 0;
                    for (size_t i = 0; i < w; ++i) {
                        uint8_t bb = e.bin == BinOp::Sub ? !vb[i] : vb[i];
                        uint8_t v = va[i] + bb + carry;
                        out[i] = v & 1;
                        carry = v >> 1;
                    }
                }
                if (!arr_ctx) return c_bit(out[0] != 0);
                return c_arr(std::move(out));
            }
            default:
                fault(e.pos, "internal: operator");
        }
    }

    static bool compare(BinOp op, uint64_t x, uint64_t y) {
        switch (op) {
            case BinOp::Eq: return x == y;
            case BinOp::Ne: return x != y;
            case BinOp::Lt: return x < y;
            case BinOp::Le: return x <= y;
            case BinOp::Gt: return x > y;
            default: return x >= y;
        }
    }

    static bool compare_wide(BinOp op, const std::vector<uint8_t>& a,
                             const std::vector<uint8_t>& b) {
        int cmp = 0;
        for (size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) {
                cmp = a[i] < b[i] ? -1 : 1;
                break;
            }
        }
        switch (op) {
            case BinOp::Eq: return cmp == 0;
            case BinOp::Ne: return cmp != 0;
            case BinOp::Lt: return cmp < 0;
            case BinOp::Le: return cmp <= 0;
            case BinOp::Gt: return cmp > 0;
            default: return cmp >= 0;
        }
    }

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
                    frames_.back().bits[d.id] = std::vector<uint8_t>(d.cells(), 0);
                else
                    frames_.back().ints[d.id] = std::vector<int64_t>(d.cells(), 0);
                declared.push_back(d.id);
                if (st.init) {
                    Expr place;
                    place.kind = Expr::Kind::Ident;
                    place.pos = st.pos;
                    place.name = st.name;
                    place.decl_id = st.decl_id;
                    assign(place, eval(*st.init), st.pos);
                }
                break;
            }
            case Stmt::Kind::Assign:
                assign(*st.place, eval(*st.value), st.pos);
                break;
            case Stmt::Kind::If: {
                CVal cv = eval(*st.cond);
                bool taken = cv.kind == CVal::Kind::Int ? cv.i != 0
                             : cv.kind == CVal::Kind::Bit
                                 ? cv.bit
                                 : std::any_of(cv.arr.begin(), cv.arr.end(),
                                               [](uint8_t x) { return x != 0; });
                if (taken) exec_block(*st.body);
                else if (st.else_body) exec_block(*st.else_body);
                break;
            }
            case Stmt::Kind::For: {
                std::vector<int> loop_declared;
                if (st.for_init) exec_stmt(*st.for_init, loop_declared);
                for (;;) {
                    if (to_int(eval(*st.cond), st.cond->pos) == 0) break;
                    exec_block(*st.body);
                    if (frames_.back().returned) break;
                    std::vector<int> dummy;
                    exec_stmt(*st.for_step, dummy);
                }
                for (int id : loop_declared) {
                    frames_.back().bits.erase(id);
                    frames_.back().ints.erase(id);
                }
                break;
            }
            case Stmt::Kind::Call:
                eval(*st.value);
                break;
            case Stmt::Kind::Return:
                if (st.value) frames_.back().ret = eval(*st.value);
                frames_.back().returned = true;
                break;
            case Stmt::Kind::Assert: {
                CVal v = eval(*st.value);
                bool ok = v.kind == CVal::Kind::Int ? v.i != 0 : to_bit(v, st.pos);
                if (!ok)
                    fault(st.pos, "assert violated at line " + std::to_string(st.pos.line));
                break;
            }
            case Stmt::Kind::CoreVars:
                break;  // no effect on concrete execution
            case Stmt::Kind::Nested:
                exec_block(*st.body);
                break;
        }
    }

    void assign(const Expr& place, CVal val, SourcePos pos) {
        const DeclInfo& d = decl(place.decl_id);
        if (d.base == BaseType::Int) {
            auto* ints = find_ints(d.id);
            if (!ints) fault(pos, "variable not live");
            int64_t v = to_int(val, pos);
            if (place.kind == Expr::Kind::Index) {
                int64_t idx = to_int(eval(*place.a), place.a->pos);
                if (idx < 0 || idx >= d.arr_len) fault(pos, "index out of bounds");
                (*ints)[idx] = v;
            } else {
                (*ints)[0] = v;
            }
            return;
        }
        auto* cells = find_bits(d.id);
        if (!cells) fault(pos, "variable not live");
        switch (place.kind) {
            case Expr::Kind::Ident:
                if (d.arr_len < 0) (*cells)[0] = to_bit(val, pos);
                else *cells = to_arr(val, d.arr_len, pos);
                break;
            case Expr::Kind::Index: {
                int64_t idx = to_int(eval(*place.a), place.a->pos);
                if (idx < 0 || idx >= d.arr_len)
                    fault(pos, "index " + std::to_string(idx) + " out of bounds for '" +
                                   d.name + "'");
                (*cells)[idx] = to_bit(val, pos);
                break;
            }
            case Expr::Kind::Slice: {
                int64_t lo = to_int(eval(*place.a), place.a->pos);
                int64_t hi = to_int(eval(*place.b), place.b->pos);
                if (lo < 0 || hi > d.arr_len || lo >= hi) fault(pos, "invalid slice bounds");
                auto vals = to_arr(val, hi - lo, pos);
                for (int64_t k = lo; k < hi; ++k) (*cells)[k] = vals[k - lo];
                break;
            }
            default:
                fault(pos, "internal: place");
        }
    }
};

}  // namespace

InterpResult interpret(const Program& prog, const std::vector<uint8_t>& inputs) {
    InterpResult res;
    if ((int)inputs.size() != prog.num_input_bits) {
        res.error = {Diagnostic::Severity::Error,
                     "input vector length mismatch: expected " +
                         std::to_string(prog.num_input_bits) + ", got " +
                         std::to_string(inputs.size()),
                     {0, 0}};
        return res;
    }
    try {
        Interp in(prog, inputs);
        res.outputs = in.run();
        res.ok = true;
    } catch (Fault& f) {
        res.error = f.diag;
        res.ok = false;
    }
    return res;
}

}  // namespace tenc

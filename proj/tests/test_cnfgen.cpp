#include <doctest.h>

#include <set>

#include "dimacs.hpp"
#include "testutil.hpp"

using namespace tenc;

namespace {

std::set<std::set<int32_t>> clause_set(const TemplateCnf& t) {
    std::set<std::set<int32_t>> out;
    for (const Clause& c : t.clauses) out.insert({c.lits.begin(), c.lits.end()});
    return out;
}

void check_numbering(const TemplateCnf& t) {
    uint32_t n = (uint32_t)t.input_vars.size();
    uint32_t m = (uint32_t)t.output_vars.size();
    for (uint32_t i = 0; i < n; ++i) REQUIRE(t.input_vars[i] == i + 1);
    for (uint32_t j = 0; j < m; ++j)
        REQUIRE(t.output_vars[j] == t.num_vars - m + 1 + j);
    std::vector<uint8_t> used(t.num_vars + 1, 0);
    for (const Clause& c : t.clauses) {
        REQUIRE(!c.lits.empty());
        std::set<int32_t> seen;
        for (int32_t l : c.lits) {
            REQUIRE(l != 0);
            uint32_t v = l > 0 ? l : -l;
            REQUIRE(v <= t.num_vars);
            REQUIRE(!seen.count(-l));  // no tautological clauses
            REQUIRE(seen.insert(l).second);  // no duplicate literals
            used[v] = 1;
        }
    }
    std::set<uint32_t> unused(t.unused_inputs.begin(), t.unused_inputs.end());
    for (uint32_t v = 1; v <= t.num_vars; ++v) {
        if (!used[v]) REQUIRE(unused.count(v) == 1);  // only flagged inputs may be unused
    }
}

TemplateCnf encode_text(const std::string& text, EncodeOptions opts = {}) {
    auto p = tt::compile(text);
    SymResult r = tt::sym(*p);
    TemplateCnf t = tseitin(r.store, r.state, opts);
    check_numbering(t);
    return t;
}

}  // namespace

TEST_CASE("prune: a dead chain disappears from the encoding") {
    auto p = tt::compile(
        "__in bit x0; __in bit x1; __out bit y;\n"
        "void main() { bit z; z = x0 ^ x1; y = x0 & x1; }");
    SymResult r = tt::sym(*p);
    auto live = prune(r.store, r.state);
    size_t live_count = 0;
    bool xor_live = false;
    for (NodeId id = 0; id < r.store.size(); ++id) {
        if (!live[id]) continue;
        ++live_count;
        xor_live = xor_live || r.store.node(id).kind == NodeKind::Xor;
    }
    CHECK(live_count == 3);  // two inputs + the AND
    CHECK(!xor_live);
    // and the template has no XOR constraint: 3 vars, the AND gate clauses only
    TemplateCnf t = tseitin(r.store, r.state, {});
    CHECK(t.num_vars == 3);
    CHECK(t.clauses.size() == 3);
}

TEST_CASE("prune: everything on the output path stays live") {
    auto p = tt::compile(
        "__in bit x0; __in bit x1; __out bit y;\n"
        "void main() { y = (x0 ^ x1) & x0; }");
    SymResult r = tt::sym(*p);
    auto live = prune(r.store, r.state);
    for (NodeId id = 0; id < r.store.size(); ++id) CHECK(live[id] == 1);
}

TEST_CASE("prune: an assert keeps otherwise-dead nodes alive") {
    auto p = tt::compile(
        "__in bit x0; __in bit x1; __out bit y;\n"
        "void main() { bit z; z = x0 ^ x1; assert(z); y = x0 & x1; }");
    SymResult r = tt::sym(*p);
    auto live = prune(r.store, r.state);
    bool xor_live = false;
    for (NodeId id = 0; id < r.store.size(); ++id)
        xor_live = xor_live || (live[id] && r.store.node(id).kind == NodeKind::Xor);
    CHECK(xor_live);
    // the encoding carries the xor clauses plus the forcing unit
    TemplateCnf t = tseitin(r.store, r.state, {});
    bool has_unit = false;
    for (const Clause& c : t.clauses) has_unit = has_unit || c.lits.size() == 1;
    CHECK(has_unit);
}

TEST_CASE("tseitin: standard AND gate clauses") {
    TemplateCnf t = encode_text(
        "__in bit a; __in bit b; __out bit w;\n"
        "void main() { w = a & b; }");
    CHECK(t.num_vars == 3);
    auto cs = clause_set(t);
    std::set<std::set<int32_t>> want = {{-3, 1}, {-3, 2}, {3, -1, -2}};
    CHECK(cs == want);
}

TEST_CASE("tseitin: identity program binds a fresh output slot to the input") {
    TemplateCnf t = encode_text(
        "__in bit x; __out bit y;\n"
        "void main() { y = x; }");
    CHECK(t.num_vars == 2);
    auto cs = clause_set(t);
    std::set<std::set<int32_t>> want = {{-2, 1}, {2, -1}};
    CHECK(cs == want);
}

TEST_CASE("tseitin: single-step feedback is one direct 4-ary XOR constraint") {
    // 19 inputs, one output that is the xor of taps 0,1,2,5: with the
    // default policy the constraint encodes directly over 5 variables
    TemplateCnf t = encode_text(
        "__in bit reg[19]; __out bit out[1];\n"
        "void main() { out[0] = reg[0] ^ reg[1] ^ reg[2] ^ reg[5]; }");
    CHECK(t.num_vars == 20);
    CHECK(t.clauses.size() == 16);
    for (const Clause& c : t.clauses) {
        CHECK(c.lits.size() == 5);
        std::set<uint32_t> vars;
        for (int32_t l : c.lits) vars.insert(l > 0 ? l : -l);
        CHECK(vars == std::set<uint32_t>{1, 2, 3, 6, 20});
    }
    // semantic check via UP on every input assignment of the four taps
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        auto x = tt::random_bits(rng, 19);
        auto y = tt::up_outputs(t, x);
        CHECK(y[0] == (x[0] ^ x[1] ^ x[2] ^ x[5]));
    }
}

TEST_CASE("tseitin: lfsr19 with eight steps renumbers to 27 variables") {
    auto p = tt::compile_file("lfsr19.alg");
    SymResult r = tt::sym(*p);
    TemplateCnf t = tseitin(r.store, r.state, {});
    check_numbering(t);
    // 19 inputs + 8 fresh output slots; the feedback chain is pruned
    CHECK(t.num_vars == 27);
    CHECK(t.input_vars.size() == 19);
    CHECK(t.output_vars.size() == 8);
    CHECK(t.clauses.size() == 16);  // eight equivalence pairs
}

TEST_CASE("tseitin: xor chaining beyond the direct arity introduces fresh variables") {
    EncodeOptions narrow;
    narrow.xor_max_direct = 2;
    TemplateCnf t = encode_text(
        "__in bit x[4]; __out bit y;\n"
        "void main() { y = x[0] ^ x[1] ^ x[2] ^ x[3]; }",
        narrow);
    // two chunk variables + the output
    CHECK(t.num_vars == 7);
    CHECK(t.clauses.size() == 12);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        auto x = tt::random_bits(rng, 4);
        auto y = tt::up_outputs(t, x);
        CHECK(y[0] == (x[0] ^ x[1] ^ x[2] ^ x[3]));
    }
}

TEST_CASE("tseitin: constant outputs become unit clauses on the final slot") {
    TemplateCnf t = encode_text(
        "__in bit x; __out bit y[2];\n"
        "void main() { y[0] = x; y[1] = 0; }");
    CHECK(t.num_vars == 3);
    bool unit_on_slot = false;
    for (const Clause& c : t.clauses)
        unit_on_slot = unit_on_slot || (c.lits.size() == 1 && c.lits[0] == -3);
    CHECK(unit_on_slot);
}

TEST_CASE("tseitin: duplicated outputs get equivalence-bound slots") {
    TemplateCnf t = encode_text(
        "__in bit a; __in bit b; __out bit y[2];\n"
        "void main() { bit w; w = a & b; y[0] = w; y[1] = w; }");
    CHECK(t.num_vars == 4);
    std::mt19937_64 rng(3);
    for (uint64_t v = 0; v < 4; ++v) {
        auto x = tt::bits_of(v, 2);
        auto y = tt::up_outputs(t, x);
        CHECK(y[0] == (x[0] & x[1]));
        CHECK(y[1] == y[0]);
    }
}

TEST_CASE("tseitin: unused declared inputs are retained and flagged") {
    TemplateCnf t = encode_text(
        "__in bit x[3]; __out bit y;\n"
        "void main() { y = x[0]; }");
    CHECK(t.num_vars == 4);
    CHECK(t.input_vars.size() == 3);
    CHECK(t.unused_inputs == std::vector<uint32_t>{2, 3});
}

TEST_CASE("tseitin: asserted equalities hold in every model") {
    auto p = tt::compile(
        "__in bit x; __in bit y; __out bit z;\n"
        "void main() { assert(x == y); z = x & y; }");
    SymResult r = tt::sym(*p);
    TemplateCnf t = tseitin(r.store, r.state, {});
    ModelList ml = enumerate_models(t.num_vars, t.clauses, t.input_vars, 16);
    REQUIRE(ml.models.size() == 2);  // 00 and 11
    for (const auto& row : ml.models) CHECK(row[0] == row[1]);
}

TEST_CASE("a corrupted encoding is caught by the differential check") {
    // stand-in for a mutated encoder build: flip one literal in a healthy
    // template and demand that the UP-vs-reference comparison notices
    auto p = tt::compile_file("toyhash6to3.alg");
    SymResult r = tt::sym(*p);
    TemplateCnf t = tseitin(r.store, r.state, {});
    REQUIRE(!t.clauses.empty());
    t.clauses[t.clauses.size() / 2].lits[0] *= -1;
    size_t mismatches = 0;
    for (uint64_t v = 0; v < 64; ++v) {
        auto x = tt::bits_of(v, 6);
        std::vector<int32_t> assumptions;
        for (size_t i = 0; i < x.size(); ++i)
            assumptions.push_back(x[i] ? (int32_t)t.input_vars[i]
                                       : -(int32_t)t.input_vars[i]);
        UpResult up = unit_propagate(t.num_vars, t.clauses, assumptions);
        if (up.conflict || up.num_assigned != t.num_vars) {
            ++mismatches;
            continue;
        }
        auto want = tt::ref_out(*p, x);
        for (size_t j = 0; j < want.size(); ++j)
            if (up.values[t.output_vars[j]] != (want[j] ? 1 : 0)) {
                ++mismatches;
                break;
            }
    }
    CHECK(mismatches > 0);
}

TEST_CASE("tseitin: assert(0) makes the template unsatisfiable without an empty clause") {
    auto p = tt::compile(
        "__in bit x; __out bit y;\n"
        "void main() { bit t; t = x ^ x; y = x; assert(t); }");
    SymResult r = tt::sym(*p);
    TemplateCnf t = tseitin(r.store, r.state, {});
    for (const Clause& c : t.clauses) CHECK(!c.lits.empty());
    SolveResult sr = solve(t.num_vars, t.clauses, {});
    CHECK(sr.verdict == Verdict::Unsat);
}

TEST_CASE("fuse: a single-fan-out NOT-AND chain collapses into one NAND table") {
    auto p = tt::compile(
        "__in bit a; __in bit b; __out bit y;\n"
        "void main() { y = !(a & b); }");
    SymResult r = tt::sym(*p);
    FusedDag fused = fuse_tables(r.store, r.state, 8);
    size_t tables = 0, gates = 0;
    for (NodeId id = 0; id < fused.store.size(); ++id) {
        NodeKind k = fused.store.node(id).kind;
        if (k == NodeKind::Table) ++tables;
        else if (k != NodeKind::Input) ++gates;
    }
    CHECK(tables == 1);
    CHECK(gates == 0);
    const FormulaNode& tab = fused.store.node(fused.state.output_bits[0].node_id());
    REQUIRE(tab.kind == NodeKind::Table);
    CHECK(tab.children.size() == 2);
    CHECK(tab.table == std::vector<uint8_t>{1, 1, 1, 0});
}

TEST_CASE("fuse: a __mem mark stops fusion and keeps its own variable") {
    const char* with_mem =
        "__in bit a; __in bit b; __out bit y;\n"
        "void main() { __mem bit m; m = a & b; y = !m; }";
    const char* without =
        "__in bit a; __in bit b; __out bit y;\n"
        "void main() { bit m; m = a & b; y = !m; }";
    TemplateCnf tm = encode_text(with_mem);
    TemplateCnf tn = encode_text(without);
    CHECK(tn.num_vars == 3);       // fused into one table
    CHECK(tm.num_vars == 4);       // the mark forces a variable for the AND
    std::mt19937_64 rng(1);
    for (uint64_t v = 0; v < 4; ++v) {
        auto x = tt::bits_of(v, 2);
        CHECK(tt::up_outputs(tm, x) == tt::up_outputs(tn, x));
    }
}

TEST_CASE("fuse: fan-out-2 nodes are not absorbed") {
    auto p = tt::compile(
        "__in bit a; __in bit b; __in bit c; __in bit d; __out bit y0; __out bit y1;\n"
        "void main() { bit w; w = a & b; y0 = w ^ c; y1 = w ^ d; }");
    SymResult r = tt::sym(*p);
    FusedDag fused = fuse_tables(r.store, r.state, 8);
    bool and_survives = false;
    for (NodeId id = 0; id < fused.store.size(); ++id)
        and_survives = and_survives || fused.store.node(id).kind == NodeKind::And;
    CHECK(and_survives);
}

TEST_CASE("fuse: core_vars references keep their own variables") {
    TemplateCnf t = encode_text(
        "__in bit a; __in bit b; __out bit y;\n"
        "void main() { bit m; m = a & b; core_vars(m); y = !m; }");
    REQUIRE(t.core_records.size() == 1);
    REQUIRE(t.core_records[0].entries.size() == 1);
    CHECK(!t.core_records[0].entries[0].is_const);
    uint32_t v = std::abs(t.core_records[0].entries[0].lit);
    CHECK(v >= 1);
    CHECK(v <= t.num_vars);
}

TEST_CASE("fuse: oversized associative nodes split into table parts") {
    // ten product terms over 20 inputs xor-ed together: no single table fits,
    // so the products pack into support-bounded parts
    std::string text = "__in bit x[20]; __out bit y;\nvoid main() { y = ";
    for (int i = 0; i < 10; ++i) {
        if (i) text += " ^ ";
        text += "(x[" + std::to_string(2 * i) + "] & x[" + std::to_string(2 * i + 1) + "])";
    }
    text += "; }";
    auto p = tt::compile(text);
    SymResult r = tt::sym(*p);
    FusedDag fused = fuse_tables(r.store, r.state, 8);
    size_t tables = 0, ands = 0;
    for (NodeId id = 0; id < fused.store.size(); ++id) {
        NodeKind k = fused.store.node(id).kind;
        if (k == NodeKind::Table) ++tables;
        if (k == NodeKind::And) ++ands;
    }
    CHECK(ands == 0);
    CHECK(tables >= 3);  // 10 two-input products, at most 4 per 8-support part
    // semantics preserved
    TemplateCnf t = tseitin(r.store, r.state, {});
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        auto x = tt::random_bits(rng, 20);
        CHECK(tt::up_outputs(t, x) == tt::ref_out(*p, x));
    }
}

TEST_CASE("to_dimacs: exact text for a tiny template") {
    TemplateCnf t;
    t.num_vars = 2;
    t.clauses.push_back(Clause{{1, -2}});
    t.input_vars = {1};
    t.output_vars = {2};
    CHECK(to_dimacs(t) ==
          "c t-encoding v1\n"
          "c input 1\n"
          "c output 2\n"
          "p cnf 2 1\n"
          "1 -2 0\n");
}

TEST_CASE("to_dimacs: the single-step LFSR header names inputs and the output") {
    TemplateCnf t = encode_text(
        "__in bit reg[19]; __out bit out[1];\n"
        "void main() { out[0] = reg[0] ^ reg[1] ^ reg[2] ^ reg[5]; }");
    std::string text = to_dimacs(t);
    CHECK(text.find("c input 1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 19\n") !=
          std::string::npos);
    CHECK(text.find("c output 20\n") != std::string::npos);
    // round-trip through the parser
    TemplateCnf back;
    std::string err;
    REQUIRE(parse_template(text, back, err));
    CHECK(back.num_vars == t.num_vars);
    CHECK(back.input_vars == t.input_vars);
    CHECK(back.output_vars == t.output_vars);
    CHECK(back.clauses.size() == t.clauses.size());
    CHECK(to_dimacs(back) == text);
}

TEST_CASE("parse_template rejects files without the stamp") {
    TemplateCnf out;
    std::string err;
    CHECK(!parse_template("p cnf 1 1\n1 0\n", out, err));
    CHECK(err.find("t-encoding") != std::string::npos);
}

TEST_CASE("core records serialize constants as signed sentinels") {
    TemplateCnf t = encode_text(
        "__in bit x; __out bit y;\n"
        "void main() { bit t0[3]; t0[0] = x; t0[1] = 0; t0[2] = 1; core_vars(t0); y = x; }");
    REQUIRE(t.core_records.size() == 1);
    std::string text = to_dimacs(t);
    CHECK(text.find("c core t0 1 -0 0\n") != std::string::npos);
    TemplateCnf back;
    std::string err;
    REQUIRE(parse_template(text, back, err));
    REQUIRE(back.core_records.size() == 1);
    CHECK(back.core_records[0].entries[1].is_const);
    CHECK(!back.core_records[0].entries[1].const_val);
    CHECK(back.core_records[0].entries[2].is_const);
    CHECK(back.core_records[0].entries[2].const_val);
}

TEST_CASE("UP completeness across the shipped corpus") {
    struct Entry {
        const char* name;
        int trials;  // 0: exhaustive
    };
    const Entry corpus[] = {
        {"toyhash6to3.alg", 0}, {"adder4.alg", 0},      {"perm6.alg", 0},
        {"lfsr19.alg", 1000},   {"geffe_small.alg", 1000}, {"s_geffe160.alg", 200},
        {"wolfram128.alg", 60}, {"bivium.alg", 200},    {"grain_v1.alg", 100},
    };
    std::mt19937_64 rng(31337);
    for (const Entry& e : corpus) {
        CAPTURE(e.name);
        auto p = tt::compile_file(e.name);
        SymResult r = tt::sym(*p);
        TemplateCnf t = tseitin(r.store, r.state, {});
        check_numbering(t);
        if (e.trials == 0) {
            for (uint64_t v = 0; v < (uint64_t(1) << p->num_input_bits); ++v) {
                auto x = tt::bits_of(v, p->num_input_bits);
                REQUIRE(tt::up_outputs(t, x) == tt::ref_out(*p, x));
            }
        } else {
            for (int trial = 0; trial < e.trials; ++trial) {
                auto x = tt::random_bits(rng, p->num_input_bits);
                REQUIRE(tt::up_outputs(t, x) == tt::ref_out(*p, x));
            }
        }
    }
}

TEST_CASE("fusion metrics: clause growth is bounded or variables shrink") {
    const char* names[] = {"lfsr19.alg",  "geffe_small.alg", "s_geffe160.alg",
                           "wolfram128.alg", "bivium.alg",   "grain_v1.alg",
                           "toyhash6to3.alg", "adder4.alg",  "perm6.alg"};
    for (const char* name : names) {
        CAPTURE(name);
        auto p = tt::compile_file(name);
        SymResult r = tt::sym(*p);
        EncodeOptions fused_opts;
        EncodeOptions plain;
        plain.fuse = false;
        TemplateCnf fused = tseitin(r.store, r.state, fused_opts);
        TemplateCnf unfused = tseitin(r.store, r.state, plain);
        bool ok = fused.clauses.size() <= unfused.clauses.size() ||
                  fused.num_vars < unfused.num_vars;
        CHECK(ok);
         MESSAGE(name << ": fused " << fused.num_vars << "v/" << fused.clauses.size()
                      << "c vs plain " << unfused.num_vars << "v/"
                      << unfused.clauses.size() << "c");
    }
}

TEST_CASE("size ballpark for the three reference generators") {
    struct Want {
        const char* name;
        uint32_t vars;
        uint64_t clauses;
    };
    // reference sizes: within a factor of two in both measures
    const Want want[] = {
        {"bivium.alg", 1172, 7405},
        {"grain_v1.alg", 1945, 34165},
        {"s_geffe160.alg", 1000, 6474},
    };
    for (const Want& w : want) {
        CAPTURE(w.name);
        auto p = tt::compile_file(w.name);
        SymResult r = tt::sym(*p);
        TemplateCnf t = tseitin(r.store, r.state, {});
        MESSAGE(w.name << ": " << t.num_vars << " vars, " << t.clauses.size()
                       << " clauses, " << t.num_literals() << " literals");
        CHECK(t.num_vars * 2 >= w.vars);
        CHECK(t.num_vars <= w.vars * 2);
        CHECK(t.clauses.size() * 2 >= w.clauses);
        CHECK(t.clauses.size() <= w.clauses * 2);
    }
}

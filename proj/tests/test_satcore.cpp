#include <doctest.h>

#include <cstdio>
#include <set>

#include "extsolver.hpp"
#include "testutil.hpp"

using namespace tenc;

namespace {

// 20-variable-or-less oracle: truth-table satisfiability
bool brute_sat(uint32_t num_vars, const std::vector<Clause>& clauses) {
    for (uint64_t assign = 0; assign < (uint64_t(1) << num_vars); ++assign) {
        bool all = true;
        for (const Clause& c : clauses) {
            bool sat = false;
            for (int32_t l : c.lits) {
                uint32_t v = l > 0 ? l : -l;
                bool val = (assign >> (v - 1)) & 1;
                if ((l > 0) == val) {
                    sat = true;
                    break;
                }
            }
            if (!sat) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

uint64_t brute_count(uint32_t num_vars, const std::vector<Clause>& clauses) {
    uint64_t count = 0;
    for (uint64_t assign = 0; assign < (uint64_t(1) << num_vars); ++assign) {
        bool all = true;
        for (const Clause& c : clauses) {
            bool sat = false;
            for (int32_t l : c.lits) {
                uint32_t v = l > 0 ? l : -l;
                if ((l > 0) == bool((assign >> (v - 1)) & 1)) {
                    sat = true;
                    break;
                }
            }
            if (!sat) {
                all = false;
                break;
            }
        }
        if (all) ++count;
    }
    return count;
}

std::vector<Clause> random_cnf(std::mt19937_64& rng, uint32_t vars, uint32_t clauses) {
    std::vector<Clause> out;
    for (uint32_t i = 0; i < clauses; ++i) {
        Clause c;
        std::set<uint32_t> used;
        uint32_t len = 1 + rng() % 3;
        while (c.lits.size() < len) {
            uint32_t v = 1 + rng() % vars;
            if (!used.insert(v).second) continue;
            c.lits.push_back(rng() & 1 ? (int32_t)v : -(int32_t)v);
        }
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

TEST_CASE("unit_propagate: a unit clause assigns its variable") {
    std::vector<Clause> cnf = {Clause{{1}}};
    UpResult r = unit_propagate(1, cnf, {});
    CHECK(!r.conflict);
    CHECK(r.values[1] == 1);
    CHECK(r.num_assigned == 1);
}

TEST_CASE("unit_propagate: contradicting assumption conflicts") {
    std::vector<Clause> cnf = {Clause{{1}}};
    UpResult r = unit_propagate(1, cnf, {-1});
    CHECK(r.conflict);
}

TEST_CASE("unit_propagate: chains propagate to a fixpoint deterministically") {
    // x1, x1->x2, x2->x3
    std::vector<Clause> cnf = {Clause{{1}}, Clause{{-1, 2}}, Clause{{-2, 3}}};
    UpResult a = unit_propagate(3, cnf, {});
    UpResult b = unit_propagate(3, cnf, {});
    CHECK(!a.conflict);
    CHECK(a.values[3] == 1);
    CHECK(a.values == b.values);
}

TEST_CASE("unit_propagate: a bound LFSR input derives the whole template") {
    auto p = tt::compile_file("lfsr19.alg");
    SymResult r = tt::sym(*p);
    TemplateCnf t = tseitin(r.store, r.state, {});
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        auto x = tt::random_bits(rng, 19);
        CHECK(tt::up_outputs(t, x) == tt::ref_out(*p, x));
    }
}

TEST_CASE("solve: forced AND inversion has the unique model (1,1)") {
    auto p = tt::compile(
        "__in bit a; __in bit b; __out bit y;\n"
        "void main() { y = a & b; }");
    SymResult r = tt::sym(*p);
    TemplateCnf t = tseitin(r.store, r.state, {});
    std::vector<Clause> work = t.clauses;
    work.push_back(Clause{{(int32_t)t.output_vars[0]}});
    SolveResult sr = solve(t.num_vars, work, {});
    REQUIRE(sr.verdict == Verdict::Sat);
    CHECK(sr.model[t.input_vars[0]] == 1);
    CHECK(sr.model[t.input_vars[1]] == 1);
}

TEST_CASE("solve: verdicts match brute force on small random formulas") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 300; ++trial) {
        uint32_t vars = 3 + rng() % 10;
        uint32_t clauses = 2 + rng() % (3 * vars);
        auto cnf = random_cnf(rng, vars, clauses);
        CAPTURE(trial);
        SolveResult r = solve(vars, cnf, {});
        REQUIRE(r.verdict != Verdict::Unknown);
        CHECK((r.verdict == Verdict::Sat) == brute_sat(vars, cnf));
    }
}

TEST_CASE("solve: conflict budget yields Unknown") {
    // pigeonhole-ish: 5 pigeons in 4 holes, hard enough to burn conflicts
    std::vector<Clause> cnf;
    auto var = [](int p, int h) { return p * 4 + h + 1; };
    for (int p = 0; p < 5; ++p) {
        Clause c;
        for (int h = 0; h < 4; ++h) c.lits.push_back(var(p, h));
        cnf.push_back(c);
    }
    for (int h = 0; h < 4; ++h)
        for (int p1 = 0; p1 < 5; ++p1)
            for (int p2 = p1 + 1; p2 < 5; ++p2)
                cnf.push_back(Clause{{-var(p1, h), -var(p2, h)}});
    SolveOptions budget;
    budget.max_conflicts = 3;
    SolveResult r = solve(20, cnf, {}, budget);
    CHECK(r.verdict == Verdict::Unknown);
    SolveResult full = solve(20, cnf, {});
    CHECK(full.verdict == Verdict::Unsat);
}

TEST_CASE("solve: vsids branching is available and agrees") {
    std::mt19937_64 rng(123);
    SolveOptions vsids;
    vsids.branch = SolveOptions::Branch::Vsids;
    for (int trial = 0; trial < 50; ++trial) {
        uint32_t vars = 4 + rng() % 8;
        auto cnf = random_cnf(rng, vars, 2 * vars);
        CHECK((solve(vars, cnf, {}, vsids).verdict == Verdict::Sat) ==
              brute_sat(vars, cnf));
    }
}

TEST_CASE("enumerate: (x ∨ y) has three models") {
    std::vector<Clause> cnf = {Clause{{1, 2}}};
    ModelList ml = enumerate_models(2, cnf, {1, 2}, 100);
    CHECK(!ml.truncated);
    CHECK(ml.models.size() == 3);
}

TEST_CASE("enumerate: unsat formulas have no models") {
    std::vector<Clause> cnf = {Clause{{1}}, Clause{{-1}}};
    ModelList ml = enumerate_models(1, cnf, {}, 10);
    CHECK(ml.models.empty());
    CHECK(!ml.truncated);
}

TEST_CASE("enumerate: the cap sets the truncation flag") {
    std::vector<Clause> cnf = {Clause{{1, 2, 3}}};
    ModelList ml = enumerate_models(3, cnf, {}, 2);
    CHECK(ml.models.size() == 2);
    CHECK(ml.truncated);
}

TEST_CASE("enumerate: counts match brute force") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 100; ++trial) {
        uint32_t vars = 3 + rng() % 8;
        auto cnf = random_cnf(rng, vars, vars + rng() % vars);
        uint64_t want = brute_count(vars, cnf);
        ModelList ml = enumerate_models(vars, cnf, {}, 1 << 16);
        CAPTURE(trial);
        CHECK(ml.models.size() == want);
    }
}

TEST_CASE("external bridge: differential agreement with the embedded solver") {
    std::string cmd = std::string(tt::cli_path()) + " sat";
    std::mt19937_64 rng(99);
    int checked = 0;
    for (int trial = 0; trial < 50; ++trial) {
        uint32_t vars = 3 + rng() % 8;
        auto cnf = random_cnf(rng, vars, 2 + rng() % (2 * vars));
        ExternalResult er = external_solve(vars, cnf, cmd);
        REQUIRE(er.status == ExternalResult::Status::Ok);
        SolveResult emb = solve(vars, cnf, {});
        CHECK(er.result.verdict == emb.verdict);
        ++checked;
    }
    CHECK(checked == 50);
}

TEST_CASE("external bridge: nonzero exit without a status line is unparseable") {
    std::vector<Clause> cnf = {Clause{{1}}};
    ExternalResult er = external_solve(1, cnf, "false");
    CHECK(er.status == ExternalResult::Status::Unparseable);
}

TEST_CASE("external bridge: a corrupted value line fails verification") {
    std::vector<Clause> cnf = {Clause{{1}}, Clause{{2}}};
    // claims SAT with the wrong polarity on variable 1
    ExternalResult er =
        external_solve(2, cnf, "sh -c 'echo s SATISFIABLE; echo v -1 2 0' fake");
    CHECK(er.status == ExternalResult::Status::VerificationFailed);
}

TEST_CASE("external bridge: missing values fail verification") {
    std::vector<Clause> cnf = {Clause{{1, 2}}};
    ExternalResult er =
        external_solve(2, cnf, "sh -c 'echo s SATISFIABLE; echo v 1 0' fake");
    CHECK(er.status == ExternalResult::Status::VerificationFailed);
}

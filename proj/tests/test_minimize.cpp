#include <doctest.h>

#include <random>

#include "minimize.hpp"

using namespace tenc;

namespace {

// model check of v ≡ φ against a clause list over literals 1..k (children)
// and k+1 (v); exhaustive over all 2^(k+1) assignments
bool equivalent_to_table(const TruthTable& tt, const std::vector<std::vector<int>>& cnf) {
    int k = tt.arity;
    for (uint32_t assign = 0; assign < (1u << (k + 1)); ++assign) {
        bool cnf_sat = true;
        for (const auto& cl : cnf) {
            bool clause_sat = false;
            for (int l : cl) {
                int var = l > 0 ? l : -l;
                bool val = (assign >> (var - 1)) & 1;
                if ((l > 0) == val) {
                    clause_sat = true;
                    break;
                }
            }
            if (!clause_sat) {
                cnf_sat = false;
                break;
            }
        }
        bool v = (assign >> k) & 1;
        bool phi = tt.bits[assign & ((1u << k) - 1)] != 0;
        if (cnf_sat != (v == phi)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("minimize: majority of three costs six ternary clauses") {
    TruthTable tt;
    tt.arity = 3;
    tt.bits.resize(8);
    for (uint32_t r = 0; r < 8; ++r)
        tt.bits[r] = __builtin_popcount(r) >= 2;
    auto cnf = minimize_table(tt);
    CHECK(cnf.size() == 6);
    for (const auto& cl : cnf) CHECK(cl.size() == 3);
    CHECK(equivalent_to_table(tt, cnf));
}

TEST_CASE("minimize: constants become unit clauses") {
    TruthTable one{1, {1, 1}};
    auto cnf1 = minimize_table(one);
    REQUIRE(cnf1.size() == 1);
    CHECK(cnf1[0] == std::vector<int>{2});

    TruthTable zero{2, {0, 0, 0, 0}};
    auto cnf0 = minimize_table(zero);
    REQUIRE(cnf0.size() == 1);
    CHECK(cnf0[0] == std::vector<int>{-3});
}

TEST_CASE("minimize: a projection is an equivalence pair") {
    TruthTable proj{2, {0, 1, 0, 1}};  // φ = x1
    auto cnf = minimize_table(proj);
    CHECK(cnf.size() == 2);
    CHECK(equivalent_to_table(proj, cnf));
    for (const auto& cl : cnf) CHECK(cl.size() == 2);
}

TEST_CASE("minimize: parity admits no shorter cover") {
    TruthTable par{4, {}};
    par.bits.resize(16);
    for (uint32_t r = 0; r < 16; ++r) par.bits[r] = __builtin_popcount(r) & 1;
    auto cnf = minimize_table(par);
    CHECK(cnf.size() == 16);
    for (const auto& cl : cnf) CHECK(cl.size() == 5);
    CHECK(equivalent_to_table(par, cnf));
}

TEST_CASE("minimize: 500 random tables of arity ≤ 8 are model-equivalent to naive") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 500; ++trial) {
        TruthTable tt;
        tt.arity = 1 + (int)(rng() % 8);
        tt.bits.resize(size_t(1) << tt.arity);
        for (auto& b : tt.bits) b = rng() & 1;
        CAPTURE(trial);
        CAPTURE(tt.arity);
        auto minimized = minimize_table(tt);
        auto naive = naive_table_cnf(tt);
        REQUIRE(equivalent_to_table(tt, minimized));
        REQUIRE(equivalent_to_table(tt, naive));
        CHECK(minimized.size() <= naive.size());
    }
}

TEST_CASE("minimize: arity 13 falls back to the naive per-row encoding") {
    TruthTable tt;
    tt.arity = 13;
    tt.bits.assign(size_t(1) << 13, 0);
    tt.bits[5] = 1;
    auto cnf = minimize_table(tt);
    CHECK(cnf.size() == (size_t(1) << 13));
}

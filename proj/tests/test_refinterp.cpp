#include <doctest.h>

#include "testutil.hpp"

using namespace tenc;

namespace {

// hand-rolled simulator for the shipped 19-cell LFSR: an implementation of
// the recurrence that shares nothing with the interpreter
std::vector<uint8_t> lfsr19_sim(const std::vector<uint8_t>& seed, int steps) {
    std::vector<uint8_t> s = seed;  // s[t] grows as the sequence extends
    for (int t = 0; (int)s.size() < 19 + steps; ++t)
        s.push_back(s[t] ^ s[t + 1] ^ s[t + 2] ^ s[t + 5]);
    return std::vector<uint8_t>(s.begin(), s.begin() + steps);
}

}  // namespace

TEST_CASE("interpret: identity program copies input to output") {
    auto p = tt::compile(
        "__in bit x[4]; __out bit y[4];\n"
        "void main() { y = x; }");
    for (uint64_t v = 0; v < 16; ++v) {
        auto x = tt::bits_of(v, 4);
        CHECK(tt::ref_out(*p, x) == x);
    }
}

TEST_CASE("interpret: LFSR keystream matches an independent simulation") {
    auto p = tt::compile_file("lfsr19.alg");
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        auto seed = tt::random_bits(rng, 19);
        CHECK(tt::ref_out(*p, seed) == lfsr19_sim(seed, 8));
    }
}

TEST_CASE("interpret: violated asserts are reported, not assumed") {
    auto p = tt::compile(
        "__in bit x; __out bit y;\n"
        "void main() { assert(x); y = x; }");
    InterpResult bad = interpret(*p, {0});
    CHECK(!bad.ok);
    CHECK(bad.error.message.find("assert") != std::string::npos);
    CHECK(bad.error.pos.line == 2);
    InterpResult good = interpret(*p, {1});
    CHECK(good.ok);
}

TEST_CASE("interpret: asserts inside branches fire only on the taken path") {
    auto p = tt::compile(
        "__in bit x; __out bit y;\n"
        "void main() { if (x) { assert(!x); } y = x; }");
    CHECK(interpret(*p, {0}).ok);
    CHECK(!interpret(*p, {1}).ok);
}

TEST_CASE("interpret: adder4 sums its operands") {
    auto p = tt::compile_file("adder4.alg");
    for (uint64_t a = 0; a < 16; ++a) {
        for (uint64_t b = 0; b < 16; ++b) {
            std::vector<uint8_t> x = tt::bits_of(a, 4);
            auto xb = tt::bits_of(b, 4);
            x.insert(x.end(), xb.begin(), xb.end());
            CHECK(tt::value_of(tt::ref_out(*p, x)) == a + b);
        }
    }
}

TEST_CASE("interpret: out-of-bounds indices report the position") {
    auto p = tt::compile(
        "__in bit a[4]; __out bit y;\n"
        "void main() { int i = 5; y = a[i]; }");
    InterpResult r = interpret(*p, {0, 0, 0, 0});
    CHECK(!r.ok);
    CHECK(r.error.message.find("out of bounds") != std::string::npos);
}

TEST_CASE("interpret is deterministic") {
    auto p = tt::compile_file("toyhash6to3.alg");
    for (uint64_t v = 0; v < 64; ++v) {
        auto x = tt::bits_of(v, 6);
        CHECK(tt::ref_out(*p, x) == tt::ref_out(*p, x));
    }
}

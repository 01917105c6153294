#ifndef TENC_TESTUTIL_HPP
#define TENC_TESTUTIL_HPP

#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnfgen.hpp"
#include "refinterp.hpp"
#include "resolver.hpp"
#include "satcore.hpp"
#include "symex.hpp"

namespace tt {

using namespace tenc;

inline std::string programs_dir() {
#ifdef TENC_PROGRAMS_DIR
    return TENC_PROGRAMS_DIR;
#else
    return "programs";
#endif
}

inline std::string cli_path() {
#ifdef TENC_CLI_PATH
    return TENC_CLI_PATH;
#else
    return "tenc";
#endif
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::unique_ptr<Program> compile(const std::string& text,
                                        const std::string& origin = "<test>") {
    DiagList diags;
    auto p = compile_program(SourceProgram{text, origin}, diags);
    if (!p) throw std::runtime_error("compile failed:\n" + format_diags(diags, origin));
    return p;
}

inline std::unique_ptr<Program> compile_file(const std::string& name) {
    return compile(read_file(programs_dir() + "/" + name), name);
}

inline SymResult sym(const Program& p) {
    SymResult r = execute(p);
    if (!r.ok) throw std::runtime_error("symex failed:\n" + format_diags(r.diags, "<test>"));
    return r;
}

// concrete evaluation of the symbolic DAG: the test-side oracle pairing
inline std::vector<uint8_t> eval_dag(const SymResult& r, const std::vector<uint8_t>& x) {
    std::vector<int8_t> memo(r.store.size(), -1);
    std::vector<uint8_t> out;
    for (BitRef b : r.state.output_bits) out.push_back(r.store.eval(b, x, memo) ? 1 : 0);
    return out;
}

inline std::vector<uint8_t> ref_out(const Program& p, const std::vector<uint8_t>& x) {
    InterpResult r = interpret(p, x);
    if (!r.ok) throw std::runtime_error("refinterp failed: " + r.error.message);
    return r.outputs;
}

inline std::vector<uint8_t> random_bits(std::mt19937_64& rng, size_t n) {
    std::vector<uint8_t> v(n);
    uint64_t w = 0;
    for (size_t i = 0; i < n; ++i) {
        if (i % 64 == 0) w = rng();
        v[i] = (w >> (i % 64)) & 1;
    }
    return v;
}

inline std::vector<uint8_t> bits_of(uint64_t value, size_t n) {
    std::vector<uint8_t> v(n);
    for (size_t i = 0; i < n; ++i) v[i] = (value >> i) & 1;
    return v;
}

inline uint64_t value_of(const std::vector<uint8_t>& bits) {
    uint64_t v = 0;
    for (size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) v |= uint64_t(1) << i;
    return v;
}

// UP over a template with the input bound; returns the output bits, or
// throws if UP leaves variables open or conflicts
inline std::vector<uint8_t> up_outputs(const TemplateCnf& t, const std::vector<uint8_t>& x) {
    std::vector<int32_t> assumptions;
    for (size_t i = 0; i < x.size(); ++i)
        assumptions.push_back(x[i] ? (int32_t)t.input_vars[i] : -(int32_t)t.input_vars[i]);
    UpResult up = unit_propagate(t.num_vars, t.clauses, assumptions);
    if (up.conflict) throw std::runtime_error("UP conflict");
    if (up.num_assigned != t.num_vars) throw std::runtime_error("UP left variables open");
    std::vector<uint8_t> y;
    for (uint32_t ov : t.output_vars) y.push_back(up.values[ov] == 1);
    return y;
}

}  // namespace tt

#endif

#ifndef TENC_INSTANCE_HPP
#define TENC_INSTANCE_HPP

#include <memory>
#include <string>
#include <vector>

#include "cnf.hpp"
#include "satcore.hpp"

namespace tenc {

// A template CNF turned into a concrete problem: unit bindings, a second
// disjoint copy for collisions, or guarded relaxation constraints.
struct BoundInstance {
    enum class Kind { InputBound, OutputBound, Collision, Relaxed, Raw };
    Kind kind = Kind::Raw;
    std::shared_ptr<const TemplateCnf> base;
    std::vector<Clause> extra;          // beyond the base clauses
    uint32_t extra_vars = 0;            // beyond base->num_vars

    std::vector<uint8_t> bound_input;   // recorded binding, empty if none
    std::vector<uint8_t> bound_output;

    struct Switch {
        std::string label;
        uint32_t var = 0;
        int state = -1;                 // -1 free, 0 deactivated, 1 activated
    };
    std::vector<Switch> switches;

    // collision bookkeeping: the second copy lives at +copy_offset
    uint32_t copy_offset = 0;

    uint32_t num_vars() const { return (base ? base->num_vars : 0) + extra_vars; }

    // base clauses + extra clauses + switch activation units
    std::vector<Clause> all_clauses() const;

    // input/output variables per group (group 1 exists only for collisions)
    std::vector<uint32_t> input_vars(int group = 0) const;
    std::vector<uint32_t> output_vars() const;
};

BoundInstance bind_input(std::shared_ptr<const TemplateCnf> t,
                         const std::vector<uint8_t>& x);
BoundInstance bind_output(std::shared_ptr<const TemplateCnf> t,
                          const std::vector<uint8_t>& y);

// Two disjoint template copies, output equivalences, and fresh
// input-difference variables d_i ≡ x_i¹ ⊕ x_i² with the clause (d_1 ∨ … ∨ d_n).
BoundInstance collision_instance(std::shared_ptr<const TemplateCnf> t);

// Appends ¬u to every payload clause; u is fresh. The constraint is inert
// until the switch is activated.
uint32_t add_switching(BoundInstance& inst, const std::vector<Clause>& payload,
                       const std::string& label);
void set_switch(BoundInstance& inst, uint32_t var, int state);

struct MuResult {
    uint32_t count = 0;     // target variables assigned at the UP fixpoint
    bool conflict = false;  // count reported as 0 when set
};
// Unit propagation over the instance; counts how many of `targets`
// (default: the input variables) receive values. Conflicts are flagged.
MuResult measure_mu(const BoundInstance& inst, std::vector<uint32_t> targets = {});

struct GuessFamily {
    std::shared_ptr<const TemplateCnf> base;
    std::vector<uint8_t> y;
    std::vector<uint32_t> guess_vars;
    bool exhaustive = true;
    uint64_t count = 0;
    uint64_t seed = 0;
    std::vector<std::vector<uint8_t>> samples;  // sampled assignments, one per member

    uint64_t size() const { return count; }
    BoundInstance member(uint64_t index) const;
};

// Exhaustive mode enumerates all 2^|B| assignments (|B| ≤ 30); sample mode
// draws `k` seeded assignments, reproducibly.
GuessFamily guess_family(std::shared_ptr<const TemplateCnf> t,
                         const std::vector<uint8_t>& y,
                         const std::vector<uint32_t>& guess_vars, bool exhaustive,
                         uint64_t sample_count, uint64_t seed);

struct GdOptions {
    uint32_t samples = 100;
    uint64_t seed = 0;
    uint64_t budget_conflicts = 1'000'000;
    double budget_seconds = 0;
    bool use_external = false;
    std::string external_cmd;
};

// Monte Carlo runtime estimation for a guessed-bits attack. Complexity is
// measured in solver conflicts so that reports are reproducible; wall-clock
// means are reported alongside as advisory data. The estimate uses the
// simplified form T = 2^|B| * mean_cost / max(rho, eps), eps = 1/(2N).
struct GdReport {
    uint32_t samples = 0;
    uint32_t solved = 0;
    double rho = 0;
    double epsilon = 0;
    double mean_conflicts = 0;
    double est_total_conflicts = 0;
    double mean_seconds = 0;
    double est_total_seconds = 0;
    uint64_t seed = 0;
    uint32_t guess_bits = 0;
    uint64_t budget_conflicts = 0;
};
GdReport estimate_gd(std::shared_ptr<const TemplateCnf> t,
                     const std::vector<uint32_t>& guess_vars, const GdOptions& opts);

// Instance files reuse the template header plus binding records:
//   c bound input <bits>      / c bound output <bits>
//   c switch <label> <var> <on|off|free>
//   c collision <base-vars> <base-inputs>
std::string instance_to_dimacs(const BoundInstance& inst);
bool parse_instance(const std::string& text, BoundInstance& out, std::string& err,
                    bool require_header = true);

}  // namespace tenc

#endif

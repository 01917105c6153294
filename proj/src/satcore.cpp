#include "satcore.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <stdexcept>

namespace tenc {

namespace {

inline uint32_t var_of(int32_t lit) { return lit > 0 ? lit : -lit; }
inline int8_t sign_of(int32_t lit) { return lit > 0 ? 1 : 0; }

}  // namespace

UpResult unit_propagate(uint32_t num_vars, const std::vector<Clause>& clauses,
                        const std::vector<int32_t>& assumptions) {
    UpResult res;
    res.values.assign(num_vars + 1, -1);

    std::vector<int32_t> queue;
    bool failed = false;
    auto enqueue = [&](int32_t lit) -> bool {
        uint32_t v = var_of(lit);
        int8_t want = sign_of(lit);
        if (res.values[v] >= 0) return res.values[v] == want;
        res.values[v] = want;
        ++res.num_assigned;
        queue.push_back(lit);
        return true;
    };

    for (int32_t a : assumptions) {
        if (!enqueue(a)) {
            res.conflict = true;
            res.conflict_clause = -1;  // assumptions contradict each other
            return res;
        }
    }

    std::vector<std::vector<uint32_t>> occ(2 * (num_vars + 1));
    auto occ_idx = [&](int32_t lit) { return 2 * var_of(lit) + (lit > 0 ? 1 : 0); };
    for (uint32_t ci = 0; ci < clauses.size(); ++ci)
        for (int32_t l : clauses[ci].lits) occ[occ_idx(l)].push_back(ci);

    auto check_clause = [&](uint32_t ci) -> bool {
        int32_t unit_lit = 0;
        int unassigned = 0;
        for (int32_t l : clauses[ci].lits) {
            int8_t v = res.values[var_of(l)];
            if (v < 0) {
                if (++unassigned > 1) return true;
                unit_lit = l;
            } else if (v == sign_of(l)) {
                return true;  // satisfied
            }
        }
        if (unassigned == 1 && enqueue(unit_lit)) return true;
        res.conflict = true;
        res.conflict_clause = (int32_t)ci;
        return false;
    };

    for (uint32_t ci = 0; ci < clauses.size() && !failed; ++ci)
        if (!check_clause(ci)) return res;

    size_t head = 0;
    while (head < queue.size()) {
        int32_t lit = queue[head++];
        for (uint32_t ci : occ[occ_idx(-lit)])
            if (!check_clause(ci)) return res;
    }
    return res;
}

namespace {

class Dpll {
  public:
    Dpll(uint32_t num_vars, const std::vector<Clause>& clauses)
        : nvars_(num_vars), clauses_(clauses) {}

    SolveResult run(const std::vector<int32_t>& assumptions, const SolveOptions& opts) {
        auto t0 = std::chrono::steady_clock::now();
        auto elapsed = [&] {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        };
        SolveResult out;
        auto finish = [&](Verdict v) {
            out.verdict = v;
            out.stats = stats_;
            out.stats.seconds = elapsed();
            return out;
        };

        values_.assign(nvars_ + 1, -1);
        watches_.assign(2 * (nvars_ + 1), {});
        watch_lits_.assign(clauses_.size(), {0, 0});
        activity_.assign(nvars_ + 1, 0.0);

        for (uint32_t ci = 0; ci < clauses_.size(); ++ci) {
            const Clause& c = clauses_[ci];
            if (c.lits.empty()) return finish(Verdict::Unsat);
            int32_t la = c.lits[0];
            int32_t lb = c.lits.size() > 1 ? c.lits[1] : c.lits[0];
            watch_lits_[ci] = {la, lb};
            watches_[widx(la)].push_back(ci);
            if (lb != la) watches_[widx(lb)].push_back(ci);
        }

        for (uint32_t ci = 0; ci < clauses_.size(); ++ci)
            if (clauses_[ci].lits.size() == 1 && !assign(clauses_[ci].lits[0]))
                return finish(Verdict::Unsat);
        for (int32_t a : assumptions)
            if (!assign(a)) return finish(Verdict::Unsat);
        if (propagate() != -1) return finish(Verdict::Unsat);

        uint64_t steps = 0;
        for (;;) {
            if (opts.max_seconds > 0 && (++steps & 0x3ff) == 0 &&
                elapsed() > opts.max_seconds)
                return finish(Verdict::Unknown);

            uint32_t v = pick_branch(opts.branch);
            if (v == 0) {
                verify_model(out);
                return finish(Verdict::Sat);
            }

            ++stats_.decisions;
            decisions_.push_back({v, trail_.size(), false});
            assign(-(int32_t)v);  // false first

            while (propagate() != -1) {
                ++stats_.conflicts;
                if (stats_.conflicts >= opts.max_conflicts)
                    return finish(Verdict::Unknown);
                while (!decisions_.empty() && decisions_.back().flipped) {
                    undo_trail(decisions_.back().trail_size);
                    decisions_.pop_back();
                }
                if (decisions_.empty()) return finish(Verdict::Unsat);
                Decision d = decisions_.back();
                undo_trail(d.trail_size);
                decisions_.back().flipped = true;
                assign((int32_t)d.var);
            }
        }
    }

  private:
    struct Decision {
        uint32_t var;
        size_t trail_size;
        bool flipped;
    };

    uint32_t nvars_;
    const std::vector<Clause>& clauses_;
    std::vector<int8_t> values_;
    std::vector<std::vector<uint32_t>> watches_;
    std::vector<std::array<int32_t, 2>> watch_lits_;
    std::vector<int32_t> trail_;
    std::vector<Decision> decisions_;
    std::vector<double> activity_;
    size_t prop_head_ = 0;
    SolveStats stats_;

    size_t widx(int32_t lit) const { return 2 * var_of(lit) + (lit > 0 ? 1 : 0); }

    bool is_true(int32_t lit) const { return values_[var_of(lit)] == sign_of(lit); }
    bool is_false(int32_t lit) const {
        int8_t v = values_[var_of(lit)];
        return v >= 0 && v != sign_of(lit);
    }

    bool assign(int32_t lit) {
        uint32_t v = var_of(lit);
        int8_t want = sign_of(lit);
        if (values_[v] >= 0) return values_[v] == want;
        values_[v] = want;
        trail_.push_back(lit);
        return true;
    }

    void undo_trail(size_t size) {
        while (trail_.size() > size) {
            values_[var_of(trail_.back())] = -1;
            trail_.pop_back();
        }
        prop_head_ = std::min(prop_head_, trail_.size());
    }

    // -1 on fixpoint, else a conflicting clause index
    int64_t propagate() {
        while (prop_head_ < trail_.size()) {
            int32_t assigned = trail_[prop_head_++];
            ++stats_.propagations;
            int32_t f = -assigned;  // literal that just became false
            auto& wl = watches_[widx(f)];
            size_t keep = 0;
            int64_t conflict = -1;
            for (size_t i = 0; i < wl.size(); ++i) {
                uint32_t ci = wl[i];
                if (conflict != -1) {
                    wl[keep++] = ci;
                    continue;
                }
                auto& w = watch_lits_[ci];
                int32_t other = w[0] == f ? w[1] : w[0];
                if (is_true(other)) {
                    wl[keep++] = ci;
                    continue;
                }
                // replacement watch: any non-false literal besides the two watches
                int32_t repl = 0;
                for (int32_t l : clauses_[ci].lits) {
                    if (l == f || l == other) continue;
                    if (!is_false(l)) {
                        repl = l;
                        break;
                    }
                }
                if (repl != 0) {
                    (w[0] == f ? w[0] : w[1]) = repl;
                    watches_[widx(repl)].push_back(ci);
                    continue;  // dropped from this list
                }
                wl[keep++] = ci;
                if (is_false(other)) {
                    bump_activity(clauses_[ci]);
                    conflict = ci;
                } else {
                    assign(other);  // unit
                }
            }
            wl.resize(keep);
            if (conflict != -1) return conflict;
        }
        return -1;
    }

    void bump_activity(const Clause& c) {
        for (int32_t l : c.lits) activity_[var_of(l)] += 1.0;
        if ((stats_.conflicts & 0xff) == 0)
            for (auto& a : activity_) a *= 0.5;
    }

    uint32_t pick_branch(SolveOptions::Branch mode) {
        if (mode == SolveOptions::Branch::FixedOrder) {
            for (uint32_t v = 1; v <= nvars_; ++v)
                if (values_[v] < 0) return v;
            return 0;
        }
        uint32_t best = 0;
        double best_act = -1;
        for (uint32_t v = 1; v <= nvars_; ++v) {
            if (values_[v] < 0 && activity_[v] > best_act) {
                best_act = activity_[v];
                best = v;
            }
        }
        return best;
    }

    void verify_model(SolveResult& out) {
        out.model.assign(nvars_ + 1, 0);
        for (uint32_t v = 1; v <= nvars_; ++v) out.model[v] = values_[v] == 1;
        // a Sat verdict is only ever returned verified
        for (const Clause& c : clauses_) {
            bool sat = false;
            for (int32_t l : c.lits)
                if (out.model[var_of(l)] == (l > 0)) {
                    sat = true;
                    break;
                }
            if (!sat) throw std::logic_error("internal: model fails verification");
        }
    }
};

}  // namespace

SolveResult solve(uint32_t num_vars, const std::vector<Clause>& clauses,
                  const std::vector<int32_t>& assumptions, const SolveOptions& opts) {
    Dpll s(num_vars, clauses);
    return s.run(assumptions, opts);
}

ModelList enumerate_models(uint32_t num_vars, const std::vector<Clause>& clauses,
                           const std::vector<uint32_t>& projection, uint64_t cap,
                           const SolveOptions& opts) {
    std::vector<uint32_t> proj = projection;
    if (proj.empty())
        for (uint32_t v = 1; v <= num_vars; ++v) proj.push_back(v);

    ModelList out;
    std::vector<Clause> work = clauses;
    for (;;) {
        SolveResult r = solve(num_vars, work, {}, opts);
        if (r.verdict == Verdict::Unsat) return out;
        if (r.verdict == Verdict::Unknown) {
            out.truncated = true;
            return out;
        }
        std::vector<uint8_t> row;
        Clause block;
        for (uint32_t v : proj) {
            row.push_back(r.model[v]);
            block.lits.push_back(r.model[v] ? -(int32_t)v : (int32_t)v);
        }
        out.models.push_back(std::move(row));
        work.push_back(std::move(block));
        if (out.models.size() >= cap) {
            SolveResult probe = solve(num_vars, work, {}, opts);
            out.truncated = probe.verdict != Verdict::Unsat;
            return out;
        }
    }
}

}  // namespace tenc

#include "instance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dimacs.hpp"
#include "extsolver.hpp"

namespace tenc {

std::vector<Clause> BoundInstance::all_clauses() const {
    std::vector<Clause> out;
    if (base) out = base->clauses;
    out.insert(out.end(), extra.begin(), extra.end());
    for (const Switch& sw : switches) {
        if (sw.state == 1) out.push_back(Clause{{(int32_t)sw.var}});
        else if (sw.state == 0) out.push_back(Clause{{-(int32_t)sw.var}});
    }
    return out;
}

std::vector<uint32_t> BoundInstance::input_vars(int group) const {
    if (!base) return {};
    std::vector<uint32_t> v = base->input_vars;
    if (group == 1) {
        if (kind != Kind::Collision) return {};
        for (auto& x : v) x += copy_offset;
    }
    return v;
}

std::vector<uint32_t> BoundInstance::output_vars() const {
    return base ? base->output_vars : std::vector<uint32_t>{};
}

namespace {

std::shared_ptr<const TemplateCnf> require(std::shared_ptr<const TemplateCnf> t) {
    if (!t) throw std::invalid_argument("null template");
    return t;
}

}  // namespace

BoundInstance bind_input(std::shared_ptr<const TemplateCnf> t,
                         const std::vector<uint8_t>& x) {
    require(t);
    if (x.size() != t->input_vars.size())
        throw std::invalid_argument("bind_input: expected " +
                                    std::to_string(t->input_vars.size()) + " bits, got " +
                                    std::to_string(x.size()));
    BoundInstance inst;
    inst.kind = BoundInstance::Kind::InputBound;
    inst.base = t;
    inst.bound_input = x;
    for (size_t i = 0; i < x.size(); ++i) {
        int32_t v = (int32_t)t->input_vars[i];
        inst.extra.push_back(Clause{{x[i] ? v : -v}});
    }
    return inst;
}

BoundInstance bind_output(std::shared_ptr<const TemplateCnf> t,
                          const std::vector<uint8_t>& y) {
    require(t);
    if (y.size() != t->output_vars.size())
        throw std::invalid_argument("bind_output: expected " +
                                    std::to_string(t->output_vars.size()) + " bits, got " +
                                    std::to_string(y.size()));
    BoundInstance inst;
    inst.kind = BoundInstance::Kind::OutputBound;
    inst.base = t;
    inst.bound_output = y;
    for (size_t i = 0; i < y.size(); ++i) {
        int32_t v = (int32_t)t->output_vars[i];
        inst.extra.push_back(Clause{{y[i] ? v : -v}});
    }
    return inst;
}

BoundInstance collision_instance(std::shared_ptr<const TemplateCnf> t) {
    require(t);
    BoundInstance inst;
    inst.kind = BoundInstance::Kind::Collision;
    inst.base = t;
    uint32_t V = t->num_vars;
    uint32_t n = (uint32_t)t->input_vars.size();
    inst.copy_offset = V;
    inst.extra_vars = V + n;

    // disjoint second copy by uniform offset
    for (const Clause& c : t->clauses) {
        Clause nc;
        for (int32_t l : c.lits)
            nc.lits.push_back(l > 0 ? l + (int32_t)V : l - (int32_t)V);
        inst.extra.push_back(std::move(nc));
    }
    // outputs agree
    for (uint32_t ov : t->output_vars) {
        int32_t y1 = (int32_t)ov, y2 = (int32_t)(ov + V);
        inst.extra.push_back(Clause{{-y1, y2}});
        inst.extra.push_back(Clause{{y1, -y2}});
    }
    // inputs differ somewhere: d_i ≡ x_i¹ ⊕ x_i², (d_1 ∨ … ∨ d_n)
    Clause big;
    for (uint32_t i = 0; i < n; ++i) {
        int32_t x1 = (int32_t)t->input_vars[i];
        int32_t x2 = x1 + (int32_t)V;
        int32_t d = (int32_t)(2 * V + 1 + i);
        inst.extra.push_back(Clause{{-d, x1, x2}});
        inst.extra.push_back(Clause{{-d, -x1, -x2}});
        inst.extra.push_back(Clause{{d, x1, -x2}});
        inst.extra.push_back(Clause{{d, -x1, x2}});
        big.lits.push_back(d);
    }
    inst.extra.push_back(std::move(big));
    return inst;
}

uint32_t add_switching(BoundInstance& inst, const std::vector<Clause>& payload,
                       const std::string& label) {
    uint32_t u = inst.num_vars() + 1;
    inst.extra_vars += 1;
    for (const Clause& c : payload) {
        Clause guarded = c;
        guarded.lits.push_back(-(int32_t)u);
        inst.extra.push_back(std::move(guarded));
    }
    inst.switches.push_back({label, u, -1});
    if (inst.kind == BoundInstance::Kind::Raw ||
        inst.kind == BoundInstance::Kind::OutputBound)
        inst.kind = BoundInstance::Kind::Relaxed;
    return u;
}

void set_switch(BoundInstance& inst, uint32_t var, int state) {
    for (auto& sw : inst.switches) {
        if (sw.var == var) {
            sw.state = state;
            return;
        }
    }
    throw std::invalid_argument("unknown switching variable " + std::to_string(var));
}

MuResult measure_mu(const BoundInstance& inst, std::vector<uint32_t> targets) {
    if (targets.empty()) targets = inst.input_vars();
    auto clauses = inst.all_clauses();
    UpResult up = unit_propagate(inst.num_vars(), clauses, {});
    MuResult out;
    if (up.conflict) {
        out.conflict = true;
        out.count = 0;
        return out;
    }
    for (uint32_t v : targets)
        if (v <= inst.num_vars() && up.values[v] >= 0) ++out.count;
    return out;
}

GuessFamily guess_family(std::shared_ptr<const TemplateCnf> t,
                         const std::vector<uint8_t>& y,
                         const std::vector<uint32_t>& guess_vars, bool exhaustive,
                         uint64_t sample_count, uint64_t seed) {
    require(t);
    for (uint32_t v : guess_vars)
        if (v == 0 || v > t->num_vars)
            throw std::invalid_argument("guess variable " + std::to_string(v) +
                                        " outside the template");
    GuessFamily fam;
    fam.base = t;
    fam.y = y;
    fam.guess_vars = guess_vars;
    fam.exhaustive = exhaustive;
    fam.seed = seed;
    if (exhaustive) {
        if (guess_vars.size() > 30)
            throw std::invalid_argument("exhaustive mode limited to 30 guessed bits");
        fam.count = uint64_t(1) << guess_vars.size();
    } else {
        fam.count = sample_count;
        std::mt19937_64 rng(seed);
        for (uint64_t i = 0; i < sample_count; ++i) {
            std::vector<uint8_t> bits(guess_vars.size());
            uint64_t word = 0;
            for (size_t j = 0; j < bits.size(); ++j) {
                if (j % 64 == 0) word = rng();
                bits[j] = (word >> (j % 64)) & 1;
            }
            fam.samples.push_back(std::move(bits));
        }
    }
    return fam;
}

BoundInstance GuessFamily::member(uint64_t index) const {
    if (index >= count) throw std::out_of_range("guess family index");
    BoundInstance inst = bind_output(base, y);
    for (size_t j = 0; j < guess_vars.size(); ++j) {
        bool bit = exhaustive ? ((index >> j) & 1) : samples[index][j] != 0;
        int32_t v = (int32_t)guess_vars[j];
        inst.extra.push_back(Clause{{bit ? v : -v}});
    }
    return inst;
}

GdReport estimate_gd(std::shared_ptr<const TemplateCnf> t,
                     const std::vector<uint32_t>& guess_vars, const GdOptions& opts) {
    require(t);
    if (opts.samples == 0) throw std::invalid_argument("estimate_gd: N must be positive");
    for (uint32_t v : guess_vars)
        if (v == 0 || v > t->num_vars)
            throw std::invalid_argument("guess variable " + std::to_string(v) +
                                        " outside the template");

    GdReport rep;
    rep.samples = opts.samples;
    rep.seed = opts.seed;
    rep.guess_bits = (uint32_t)guess_vars.size();
    rep.budget_conflicts = opts.budget_conflicts;
    rep.epsilon = 1.0 / (2.0 * opts.samples);

    std::mt19937_64 rng(opts.seed);
    uint32_t n = (uint32_t)t->input_vars.size();

    double total_conflicts = 0, total_seconds = 0;
    for (uint32_t s = 0; s < opts.samples; ++s) {
        std::vector<uint8_t> x(n);
        uint64_t word = 0;
        for (uint32_t j = 0; j < n; ++j) {
            if (j % 64 == 0) word = rng();
            x[j] = (word >> (j % 64)) & 1;
        }
        // forward run: UP alone determines the whole template
        BoundInstance fwd = bind_input(t, x);
        auto fwd_clauses = fwd.all_clauses();
        UpResult up = unit_propagate(t->num_vars, fwd_clauses, {});
        if (up.conflict || up.num_assigned != t->num_vars)
            throw std::runtime_error("estimate_gd: template is not UP-complete");

        BoundInstance inst = bind_output(t, [&] {
            std::vector<uint8_t> y;
            for (uint32_t ov : t->output_vars) y.push_back(up.values[ov] == 1);
            return y;
        }());
        // hints: true values of the guessed bits from the forward run
        for (uint32_t gv : guess_vars)
            inst.extra.push_back(
                Clause{{up.values[gv] == 1 ? (int32_t)gv : -(int32_t)gv}});

        auto clauses = inst.all_clauses();
        if (opts.use_external) {
            auto tstart = std::chrono::steady_clock::now();
            ExternalResult er = external_solve(inst.num_vars(), clauses, opts.external_cmd);
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                        tstart)
                              .count();
            if (er.status == ExternalResult::Status::Ok &&
                er.result.verdict == Verdict::Sat) {
                ++rep.solved;
                total_seconds += secs;
            }
        } else {
            SolveOptions so;
            so.max_conflicts = opts.budget_conflicts;
            so.max_seconds = opts.budget_seconds;
            SolveResult r = solve(inst.num_vars(), clauses, {}, so);
            if (r.verdict == Verdict::Sat) {
                ++rep.solved;
                total_conflicts += (double)r.stats.conflicts;
                total_seconds += r.stats.seconds;
            }
        }
    }

    rep.rho = (double)rep.solved / rep.samples;
    double denom = std::max(rep.rho, rep.epsilon);
    if (rep.solved > 0) {
        rep.mean_conflicts = total_conflicts / rep.solved;
        rep.mean_seconds = total_seconds / rep.solved;
    }
    double scale = std::pow(2.0, (double)rep.guess_bits);
    // a fully propagated instance costs no conflicts; floor at one unit so
    // the estimate never collapses to zero
    rep.est_total_conflicts = scale * std::max(rep.mean_conflicts, 1.0) / denom;
    rep.est_total_seconds = scale * rep.mean_seconds / denom;
    return rep;
}

std::string instance_to_dimacs(const BoundInstance& inst) {
    std::ostringstream os;
    os << "c t-encoding v1\n";
    os << "c input";
    for (uint32_t v : inst.input_vars()) os << " " << v;
    os << "\n";
    os << "c output";
    for (uint32_t v : inst.output_vars()) os << " " << v;
    os << "\n";
    if (inst.base)
        for (const auto& rec : inst.base->core_records) {
            os << "c core " << rec.label;
            for (const auto& e : rec.entries) os << " " << e.text();
            os << "\n";
        }
    if (inst.base && !inst.base->unused_inputs.empty()) {
        os << "c unused-input";
        for (uint32_t v : inst.base->unused_inputs) os << " " << v;
        os << "\n";
    }
    if (!inst.bound_input.empty()) {
        os << "c bound input ";
        for (uint8_t b : inst.bound_input) os << (b ? '1' : '0');
        os << "\n";
    }
    if (!inst.bound_output.empty()) {
        os << "c bound output ";
        for (uint8_t b : inst.bound_output) os << (b ? '1' : '0');
        os << "\n";
    }
    if (inst.kind == BoundInstance::Kind::Collision) {
        os << "c collision " << (inst.base ? inst.base->num_vars : 0) << " "
           << inst.input_vars().size() << "\n";
    }
    for (const auto& sw : inst.switches) {
        os << "c switch " << sw.label << " " << sw.var << " "
           << (sw.state == 1 ? "on" : sw.state == 0 ? "off" : "free") << "\n";
    }
    auto clauses = inst.all_clauses();
    os << "p cnf " << inst.num_vars() << " " << clauses.size() << "\n";
    for (const Clause& c : clauses) {
        for (int32_t l : c.lits) os << l << " ";
        os << "0\n";
    }
    return os.str();
}

bool parse_instance(const std::string& text, BoundInstance& out, std::string& err,
                    bool require_header) {
    out = BoundInstance{};
    out.kind = BoundInstance::Kind::Raw;

    // reuse the template parser leniently: collect header data by hand
    std::istringstream is(text);
    std::string line;
    bool stamped = false;
    auto tpl = std::make_shared<TemplateCnf>();
    uint32_t total_vars = 0;
    size_t num_clauses = 0;
    bool have_p = false;
    std::string body;
    uint32_t collision_base = 0;

    while (std::getline(is, line)) {
        if (line.rfind("c", 0) == 0) {
            std::istringstream ls(line.size() > 2 ? line.substr(2) : "");
            std::string tag;
            ls >> tag;
            if (tag == "t-encoding") {
                std::string ver;
                ls >> ver;
                stamped = ver == "v1";
            } else if (tag == "input") {
                int64_t v;
                while (ls >> v) tpl->input_vars.push_back((uint32_t)v);
            } else if (tag == "output") {
                int64_t v;
                while (ls >> v) tpl->output_vars.push_back((uint32_t)v);
            } else if (tag == "bound") {
                std::string which, bits;
                ls >> which >> bits;
                std::vector<uint8_t> vals;
                for (char ch : bits) vals.push_back(ch == '1');
                if (which == "input") out.bound_input = vals;
                else if (which == "output") out.bound_output = vals;
            } else if (tag == "collision") {
                ls >> collision_base;
                out.kind = BoundInstance::Kind::Collision;
            } else if (tag == "switch") {
                BoundInstance::Switch sw;
                std::string state;
                ls >> sw.label >> sw.var >> state;
                sw.state = state == "on" ? 1 : state == "off" ? 0 : -1;
                out.switches.push_back(sw);
                out.kind = BoundInstance::Kind::Relaxed;
            } else if (tag == "core") {
                CoreRecordOut rec;
                ls >> rec.label;
                std::string tok;
                while (ls >> tok) {
                    CoreEntry e;
                    if (tok == "0") {
                        e.is_const = true;
                        e.const_val = true;
                    } else if (tok == "-0") {
                        e.is_const = true;
                        e.const_val = false;
                    } else {
                        e.lit = (int32_t)std::stol(tok);
                    }
                    rec.entries.push_back(e);
                }
                tpl->core_records.push_back(std::move(rec));
            }
            continue;
        }
        if (line.rfind("p ", 0) == 0) {
            std::istringstream ls(line.substr(2));
            std::string fmt;
            ls >> fmt >> total_vars >> num_clauses;
            if (fmt != "cnf") {
                err = "not a DIMACS cnf file";
                return false;
            }
            have_p = true;
            continue;
        }
        if (have_p && !line.empty()) {
            body += line;
            body += "\n";
        }
    }

    if (require_header && !stamped) {
        err = "not a t-encoding template (missing 'c t-encoding v1' header)";
        return false;
    }
    if (!have_p) {
        err = "missing p-line";
        return false;
    }

    std::vector<Clause> clauses;
    {
        std::istringstream bs(body);
        Clause cur;
        int64_t lit;
        while (bs >> lit) {
            if (lit == 0) {
                if (cur.lits.empty()) {
                    err = "empty clause in input";
                    return false;
                }
                clauses.push_back(std::move(cur));
                cur = Clause{};
            } else {
                uint64_t v = lit > 0 ? lit : -lit;
                if (v > total_vars) {
                    err = "literal out of range";
                    return false;
                }
                cur.lits.push_back((int32_t)lit);
            }
        }
        if (!cur.lits.empty()) {
            err = "unterminated clause";
            return false;
        }
        if (clauses.size() != num_clauses) {
            err = "clause count mismatch";
            return false;
        }
    }

    // all clauses live in the synthesized base; the instance adds nothing
    tpl->num_vars = total_vars;
    tpl->clauses = std::move(clauses);
    if (out.kind == BoundInstance::Kind::Collision) out.copy_offset = collision_base;
    out.base = tpl;
    // switch activation units are already materialized in the clause list
    for (auto& sw : out.switches) sw.state = -1;
    if (out.kind == BoundInstance::Kind::Raw) {
        if (!out.bound_input.empty()) out.kind = BoundInstance::Kind::InputBound;
        else if (!out.bound_output.empty()) out.kind = BoundInstance::Kind::OutputBound;
    }
    return true;
}

}  // namespace tenc

#include "tenc.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include "aiger.hpp"
#include "cnfgen.hpp"
#include "dimacs.hpp"
#include "extsolver.hpp"
#include "instance.hpp"
#include "refinterp.hpp"
#include "resolver.hpp"
#include "satcore.hpp"
#include "symex.hpp"

using namespace tenc;

namespace {

thread_local std::string g_last_error;

tenc_status set_error(tenc_status st, std::string msg) {
    g_last_error = std::move(msg);
    return st;
}

template <typename Fn>
tenc_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (std::invalid_argument& e) {
        return set_error(TENC_ERR_ARG, e.what());
    } catch (std::exception& e) {
        return set_error(TENC_ERR_INTERNAL, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* out = (char*)std::malloc(s.size() + 1);
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

bool read_file(const char* path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

bool write_file(const char* path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << text;
    return out.good();
}

}  // namespace

struct tenc_program {
    std::unique_ptr<Program> prog;
    std::string origin;
};

struct tenc_template {
    std::shared_ptr<const TemplateCnf> cnf;
};

struct tenc_instance {
    BoundInstance inst;
};

struct tenc_result {
    SolveResult res;
};

struct tenc_family {
    GuessFamily fam;
};

extern "C" {

const char* tenc_version(void) { return "tenc 1.0.0"; }

const char* tenc_last_error(void) { return g_last_error.c_str(); }

void tenc_string_free(char* s) { std::free(s); }

/* ---- programs ---- */

tenc_status tenc_program_load(const char* path, tenc_program** out) {
    if (!path || !out) return set_error(TENC_ERR_ARG, "null argument");
    return guarded([&]() -> tenc_status {
        std::string text;
        if (!read_file(path, text))
            return set_error(TENC_ERR_IO, std::string("cannot read ") + path);
        DiagList diags;
        SourceProgram src{text, path};
        auto prog = compile_program(src, diags);
        if (!prog) return set_error(TENC_ERR_DIAGNOSTICS, format_diags(diags, path));
        *out = new tenc_program{std::move(prog), path};
        return TENC_OK;
    });
}

tenc_status tenc_program_from_string(const char* text, const char* origin,
                                     tenc_program** out) {
    if (!text || !out) return set_error(TENC_ERR_ARG, "null argument");
    return guarded([&]() -> tenc_status {
        std::string org = origin ? origin : "<memory>";
        DiagList diags;
        SourceProgram src{text, org};
        auto prog = compile_program(src, diags);
        if (!prog) return set_error(TENC_ERR_DIAGNOSTICS, format_diags(diags, org));
        *out = new tenc_program{std::move(prog), org};
        return TENC_OK;
    });
}

void tenc_program_free(tenc_program* p) { delete p; }

uint32_t tenc_program_num_inputs(const tenc_program* p) {
    return p ? p->prog->num_input_bits : 0;
}
uint32_t tenc_program_num_outputs(const tenc_program* p) {
    return p ? p->prog->num_output_bits : 0;
}

tenc_status tenc_program_interpret(const tenc_program* p, const uint8_t* in, size_t n,
                                   uint8_t* out, size_t m) {
    if (!p || (!in && n) || !out) return set_error(TENC_ERR_ARG, "null argument");
    return guarded([&]() -> tenc_status {
        if ((int)n != p->prog->num_input_bits || (int)m != p->prog->num_output_bits)
            return set_error(TENC_ERR_ARG, "input/output length mismatch");
        InterpResult r = interpret(*p->prog, std::vector<uint8_t>(in, in + n));
        if (!r.ok)
            return set_error(TENC_ERR_DIAGNOSTICS, format_diag(r.error, p->origin));
        for (size_t i = 0; i < m; ++i) out[i] = r.outputs[i];
        return TENC_OK;
    });
}

/* ---- encoding ---- */

void tenc_encode_options_init(tenc_encode_options* o) {
    if (!o) return;
    o->fuse = 1;
    o->fuse_max_arity = 8;
    o->xor_max_direct = 4;
    o->ite_redundant = 0;
    o->var_cap = 20'000'000;
}

static EncodeOptions to_opts(const tenc_encode_options* o) {
    EncodeOptions e;
    if (o) {
        e.fuse = o->fuse != 0;
        e.fuse_max_arity = o->fuse_max_arity;
        e.xor_max_direct = o->xor_max_direct;
        e.ite_redundant = o->ite_redundant != 0;
        e.var_cap = o->var_cap;
    }
    return e;
}

tenc_status tenc_program_encode(const tenc_program* p, const tenc_encode_options* o,
                                tenc_template** out) {
    if (!p || !out) return set_error(TENC_ERR_ARG, "null argument");
    return guarded([&]() -> tenc_status {
        EncodeOptions opts = to_opts(o);
        if (opts.fuse_max_arity < 2 || opts.fuse_max_arity > 12)
            return set_error(TENC_ERR_ARG, "fuse_max_arity must be in 2..12");
        if (opts.xor_max_direct < 2 || opts.xor_max_direct > 6)
            return set_error(TENC_ERR_ARG, "xor_max_direct must be in 2..6");
        SymResult sym = execute(*p->prog);
        if (!sym.ok)
            return set_error(TENC_ERR_DIAGNOSTICS, format_diags(sym.diags, p->origin));
        TemplateCnf cnf = tseitin(sym.store, sym.state, opts);
        *out = new tenc_template{std::make_shared<TemplateCnf>(std::move(cnf))};
        return TENC_OK;
    });
}

tenc_status tenc_program_aiger(const tenc_program* p, char** out_text) {
    if (!p || !out_text) return set_error(TENC_ERR_ARG, "null argument");
    return guarded([&]() -> tenc_status {
        SymResult sym = execute(*p->prog);
        if (!sym.ok)
            return set_error(TENC_ERR_DIAGNOSTICS, format_diags(sym.diags, p->origin));
        AigerResult r = to_aiger(sym.store, sym.state);
        if (!r.ok) return set_error(TENC_ERR_STATE, r.error);
        *out_text = dup_string(r.text);
        return TENC_OK;
    });
}

/* ---- templates ---- */

tenc_status tenc_template_load(const char* path, tenc_template** out) {
    if (!path || !out) return set_error(TENC_ERR_ARG, "null argument");
    return guarded([&]() -> tenc_status {
        std::string text;
        if (!read_file(path, text))
            return set_error(TENC_ERR_IO, std::string("cannot read ") + path);
        TemplateCnf t;
        std::string err;
        if (!parse_template(text, t, err)) return set_error(TENC_ERR_IO, err);
        *out = new tenc_template{std::make_shared<TemplateCnf>(std::move(t))};
        return TENC_OK;
    });
}

tenc_status tenc_template_save(const tenc_template* t, const char* path) {
    if (!t || !path) return set_error(TENC_ERR_ARG, "null argument");
    return guarded([&]() -> tenc_status {
        if (!write_file(path, to_dimacs(*t->cnf)))
            return set_error(TENC_ERR_IO, std::string("cannot write ") + path);
        return TENC_OK;
    });
}

tenc_status tenc_template_dimacs(const tenc_template* t, char** out_text) {
    if (!t || !out_text) return set_error(TENC_ERR_ARG, "null argument");
    *out_text = dup_string(to_dimacs(*t->cnf));
    return TENC_OK;
}

void tenc_template_free(tenc_template* t) { delete t; }

uint32_t tenc_template_num_vars(const tenc_template* t) { return t->cnf->num_vars; }
uint64_t tenc_template_num_clauses(const tenc_template* t) {
    return t->cnf->clauses.size();
}
uint64_t tenc_template_num_literals(const tenc_template* t) {
    return t->cnf->num_literals();
}
uint32_t tenc_template_num_inputs(const tenc_template* t) {
    return (uint32_t)t->cnf->input_vars.size();
}
uint32_t tenc_template_num_outputs(const tenc_template* t) {
    return (uint32_t)t->cnf->output_vars.size();
}
uint32_t tenc_template_input_var(const tenc_template* t, uint32_t i) {
    return i < t->cnf->input_vars.size() ? t->cnf->input_vars[i] : 0;
}
uint32_t tenc_template_output_var(const tenc_template* t, uint32_t i) {
    return i < t->cnf->output_vars.size() ? t->cnf->output_vars[i] : 0;
}

uint32_t tenc_template_num_core_records(const tenc_template* t) {
    return (uint32_t)t->cnf->core_records.size();
}
const char* tenc_template_core_label(const tenc_template* t, uint32_t i) {
    if (i >= t->cnf->core_records.size()) return nullptr;
    return t->cnf->core_records[i].label.c_str();
}
tenc_status tenc_template_core_entries(const tenc_template* t, uint32_t i, char** out) {
    if (!t || !out || i >= t->cnf->core_records.size())
        return set_error(TENC_ERR_ARG, "bad core record index");
    std::string s;
    for (const auto& e : t->cnf->core_records[i].entries) {
        if (!s.empty()) s += " ";
        s += e.text();
    }
    *out = dup_string(s);
    return TENC_OK;
}

/* ---- instances ---- */

static std::vector<uint8_t> to_bits(const uint8_t* bits, size_t n) {
    std::vector<uint8_t> v(n);
    for (size_t i = 0; i < n; ++i) v[i] = bits[i] ? 1 : 0;
    return v;
}

tenc_status tenc_instance_bind_input(const tenc_template* t, const uint8_t* bits,
                                     size_t n, tenc_instance** out) {
    if (!t || !out || (!bits && n)) return set_error(TENC_ERR_ARG, "null argument");
    return guarded([&]() -> tenc_status {
        *out = new tenc_instance{bind_input(t->cnf, to_bits(bits, n))};
        return TENC_OK;
    });
}

tenc_status tenc_instance_bind_output(const tenc_template* t, const uint8_t* bits,
                                      size_t m, tenc_instance** out) {
    if (!t || !out || (!bits && m)) return set_error(TENC_ERR_ARG, "null argument");
    return guarded([&]() -> tenc_status {
        *out = new tenc_instance{bind_output(t->cnf, to_bits(bits, m))};
        return TENC_OK;
    });
}

tenc_status tenc_instance_collision(const tenc_template* t, tenc_instance** out) {
    if (!t || !out) return set_error(TENC_ERR_ARG, "null argument");
    return guarded([&]() -> tenc_status {
        *out = new tenc_instance{collision_instance(t->cnf)};
        return TENC_OK;
    });
}

tenc_status tenc_instance_from_template(const tenc_template* t, tenc_instance** out) {
    if (!t || !out) return set_error(TENC_ERR_ARG, "null argument");
    return guarded([&]() -> tenc_status {
        BoundInstance inst;
        inst.kind = BoundInstance::Kind::Raw;
        inst.base = t->cnf;
        *out = new tenc_instance{std::move(inst)};
        return TENC_OK;
    });
}

tenc_status tenc_instance_load(const char* path, int strict, tenc_instance** out) {
    if (!path || !out) return set_error(TENC_ERR_ARG, "null argument");
    return guarded([&]() -> tenc_status {
        std::string text;
        if (!read_file(path, text))
            return set_error(TENC_ERR_IO, std::string("cannot read ") + path);
        BoundInstance inst;
        std::string err;
        if (!parse_instance(text, inst, err, strict != 0))
            return set_error(TENC_ERR_IO, err);
        *out = new tenc_instance{std::move(inst)};
        return TENC_OK;
    });
}

tenc_status tenc_instance_save(const tenc_instance* i, const char* path) {
    if (!i || !path) return set_error(TENC_ERR_ARG, "null argument");
    return guarded([&]() -> tenc_status {
        if (!write_file(path, instance_to_dimacs(i->inst)))
            return set_error(TENC_ERR_IO, std::string("cannot write ") + path);
        return TENC_OK;
    });
}

tenc_status tenc_instance_dimacs(const tenc_instance* i, char** out_text) {
    if (!i || !out_text) return set_error(TENC_ERR_ARG, "null argument");
    *out_text = dup_string(instance_to_dimacs(i->inst));
    return TENC_OK;
}

void tenc_instance_free(tenc_instance* i) { delete i; }

uint32_t tenc_instance_num_vars(const tenc_instance* i) { return i->inst.num_vars(); }
uint32_t tenc_instance_num_input_groups(const tenc_instance* i) {
    return i->inst.kind == BoundInstance::Kind::Collision ? 2 : 1;
}
uint32_t tenc_instance_num_inputs(const tenc_instance* i) {
    return (uint32_t)i->inst.input_vars().size();
}
uint32_t tenc_instance_num_outputs(const tenc_instance* i) {
    return (uint32_t)i->inst.output_vars().size();
}
uint32_t tenc_instance_input_var(const tenc_instance* i, uint32_t group, uint32_t k) {
    auto v = i->inst.input_vars((int)group);
    return k < v.size() ? v[k] : 0;
}
uint32_t tenc_instance_output_var(const tenc_instance* i, uint32_t k) {
    auto v = i->inst.output_vars();
    return k < v.size() ? v[k] : 0;
}

tenc_status tenc_instance_add_units(tenc_instance* i, const int32_t* lits, size_t n) {
    if (!i || (!lits && n)) return set_error(TENC_ERR_ARG, "null argument");
    for (size_t k = 0; k < n; ++k) {
        if (lits[k] == 0) return set_error(TENC_ERR_ARG, "zero literal");
        uint32_t v = lits[k] > 0 ? lits[k] : -lits[k];
        if (v > i->inst.num_vars())
            return set_error(TENC_ERR_ARG, "literal outside the instance");
        i->inst.extra.push_back(Clause{{lits[k]}});
    }
    return TENC_OK;
}

tenc_status tenc_instance_add_switch(tenc_instance* i, const int32_t* lits, size_t n,
                                     const char* label, uint32_t* out_var) {
    if (!i || !out_var || (!lits && n)) return set_error(TENC_ERR_ARG, "null argument");
    return guarded([&]() -> tenc_status {
        std::vector<Clause> payload;
        Clause cur;
        for (size_t k = 0; k < n; ++k) {
            if (lits[k] == 0) {
                if (cur.lits.empty()) return set_error(TENC_ERR_ARG, "empty payload clause");
                payload.push_back(std::move(cur));
                cur = Clause{};
            } else {
                uint32_t v = lits[k] > 0 ? lits[k] : -lits[k];
                if (v > i->inst.num_vars())
                    return set_error(TENC_ERR_ARG, "payload literal outside the instance");
                cur.lits.push_back(lits[k]);
            }
        }
        if (!cur.lits.empty()) payload.push_back(std::move(cur));
        if (payload.empty()) return set_error(TENC_ERR_ARG, "empty switching payload");
        *out_var = add_switching(i->inst, payload, label ? label : "r");
        return TENC_OK;
    });
}

tenc_status tenc_instance_set_switch(tenc_instance* i, uint32_t var, int state) {
    if (!i) return set_error(TENC_ERR_ARG, "null argument");
    return guarded([&]() -> tenc_status {
        set_switch(i->inst, var, state);
        return TENC_OK;
    });
}

tenc_status tenc_instance_propagate(const tenc_instance* i, int8_t* values,
                                    int* conflict_out) {
    if (!i || !values || !conflict_out) return set_error(TENC_ERR_ARG, "null argument");
    return guarded([&]() -> tenc_status {
        auto clauses = i->inst.all_clauses();
        UpResult up = unit_propagate(i->inst.num_vars(), clauses, {});
        *conflict_out = up.conflict ? 1 : 0;
        for (uint32_t v = 0; v <= i->inst.num_vars(); ++v) values[v] = up.values[v];
        return TENC_OK;
    });
}

tenc_status tenc_instance_measure_mu(const tenc_instance* i, const uint32_t* targets,
                                     size_t ntargets, uint32_t* count_out,
                                     int* conflict_out) {
    if (!i || !count_out || !conflict_out) return set_error(TENC_ERR_ARG, "null argument");
    return guarded([&]() -> tenc_status {
        std::vector<uint32_t> tg;
        if (targets && ntargets) tg.assign(targets, targets + ntargets);
        MuResult r = measure_mu(i->inst, tg);
        *count_out = r.count;
        *conflict_out = r.conflict ? 1 : 0;
        return TENC_OK;
    });
}

/* ---- solving ---- */

void tenc_solve_options_init(tenc_solve_options* o) {
    if (!o) return;
    o->use_external = 0;
    o->external_cmd = nullptr;
    o->max_conflicts = 0;
    o->max_seconds = 0;
    o->vsids = 0;
}

tenc_status tenc_instance_solve(const tenc_instance* i, const tenc_solve_options* o,
                                tenc_result** out) {
    if (!i || !out) return set_error(TENC_ERR_ARG, "null argument");
    return guarded([&]() -> tenc_status {
        auto clauses = i->inst.all_clauses();
        if (o && o->use_external) {
            std::string cmd = o->external_cmd ? o->external_cmd : "";
            if (cmd.empty()) {
                const char* env = std::getenv("T_ENCODER_SOLVER");
                if (env) cmd = env;
            }
            if (cmd.empty())
                return set_error(TENC_ERR_ARG, "no external solver command configured");
            ExternalResult er = external_solve(i->inst.num_vars(), clauses, cmd);
            if (er.status != ExternalResult::Status::Ok) {
                const char* what = er.status == ExternalResult::Status::CommandFailed
                                       ? "external solver failed: "
                                   : er.status == ExternalResult::Status::Unparseable
                                       ? "unparseable solver output: "
                                       : "model verification failed: ";
                return set_error(TENC_ERR_SOLVER, what + er.message);
            }
            *out = new tenc_result{std::move(er.result)};
            return TENC_OK;
        }
        SolveOptions so;
        if (o) {
            if (o->max_conflicts) so.max_conflicts = o->max_conflicts;
            so.max_seconds = o->max_seconds;
            so.branch = o->vsids ? SolveOptions::Branch::Vsids
                                 : SolveOptions::Branch::FixedOrder;
        }
        SolveResult r = solve(i->inst.num_vars(), clauses, {}, so);
        *out = new tenc_result{std::move(r)};
        return TENC_OK;
    });
}

void tenc_result_free(tenc_result* r) { delete r; }

tenc_verdict tenc_result_verdict(const tenc_result* r) {
    switch (r->res.verdict) {
        case Verdict::Sat: return TENC_SAT;
        case Verdict::Unsat: return TENC_UNSAT;
        default: return TENC_UNKNOWN;
    }
}
int tenc_result_value(const tenc_result* r, uint32_t var) {
    if (r->res.verdict != Verdict::Sat || var >= r->res.model.size()) return -1;
    return r->res.model[var] ? 1 : 0;
}
uint64_t tenc_result_conflicts(const tenc_result* r) { return r->res.stats.conflicts; }
uint64_t tenc_result_decisions(const tenc_result* r) { return r->res.stats.decisions; }
uint64_t tenc_result_propagations(const tenc_result* r) {
    return r->res.stats.propagations;
}
double tenc_result_seconds(const tenc_result* r) { return r->res.stats.seconds; }

tenc_status tenc_instance_enumerate(const tenc_instance* i, const uint32_t* proj,
                                    size_t nproj, uint64_t cap, uint8_t** rows_out,
                                    uint64_t* nrows_out, int* truncated_out) {
    if (!i || !rows_out || !nrows_out || !truncated_out || cap == 0)
        return set_error(TENC_ERR_ARG, "bad argument");
    return guarded([&]() -> tenc_status {
        std::vector<uint32_t> p;
        if (proj && nproj) p.assign(proj, proj + nproj);
        auto clauses = i->inst.all_clauses();
        ModelList ml = enumerate_models(i->inst.num_vars(), clauses, p, cap, {});
        size_t width = p.empty() ? i->inst.num_vars() : p.size();
        uint8_t* rows = (uint8_t*)std::malloc(std::max<size_t>(1, ml.models.size() * width));
        for (size_t r = 0; r < ml.models.size(); ++r)
            std::memcpy(rows + r * width, ml.models[r].data(), width);
        *rows_out = rows;
        *nrows_out = ml.models.size();
        *truncated_out = ml.truncated ? 1 : 0;
        return TENC_OK;
    });
}

/* ---- families ---- */

tenc_status tenc_family_new(const tenc_template* t, const uint8_t* y, size_t m,
                            const uint32_t* guess_vars, size_t nguess, int exhaustive,
                            uint64_t sample_count, uint64_t seed, tenc_family** out) {
    if (!t || !out || (!y && m) || (!guess_vars && nguess))
        return set_error(TENC_ERR_ARG, "null argument");
    return guarded([&]() -> tenc_status {
        std::vector<uint32_t> B(guess_vars, guess_vars + nguess);
        *out = new tenc_family{guess_family(t->cnf, to_bits(y, m), B, exhaustive != 0,
                                            sample_count, seed)};
        return TENC_OK;
    });
}

uint64_t tenc_family_size(const tenc_family* f) { return f->fam.size(); }

tenc_status tenc_family_member(const tenc_family* f, uint64_t index,
                               tenc_instance** out) {
    if (!f || !out) return set_error(TENC_ERR_ARG, "null argument");
    return guarded([&]() -> tenc_status {
        *out = new tenc_instance{f->fam.member(index)};
        return TENC_OK;
    });
}

void tenc_family_free(tenc_family* f) { delete f; }

/* ---- estimation ---- */

void tenc_estimate_options_init(tenc_estimate_options* o) {
    if (!o) return;
    o->samples = 100;
    o->seed = 0;
    o->budget_conflicts = 1'000'000;
    o->budget_seconds = 0;
    o->use_external = 0;
    o->external_cmd = nullptr;
}

tenc_status tenc_template_estimate(const tenc_template* t, const uint32_t* guess_vars,
                                   size_t nguess, const tenc_estimate_options* o,
                                   tenc_gd_report* out) {
    if (!t || !out || (!guess_vars && nguess))
        return set_error(TENC_ERR_ARG, "null argument");
    return guarded([&]() -> tenc_status {
        GdOptions g;
        if (o) {
            g.samples = o->samples;
            g.seed = o->seed;
            g.budget_conflicts = o->budget_conflicts;
            g.budget_seconds = o->budget_seconds;
            g.use_external = o->use_external != 0;
            g.external_cmd = o->external_cmd ? o->external_cmd : "";
        }
        std::vector<uint32_t> B(guess_vars, guess_vars + nguess);
        GdReport r = estimate_gd(t->cnf, B, g);
        out->samples = r.samples;
        out->solved = r.solved;
        out->rho = r.rho;
        out->epsilon = r.epsilon;
        out->mean_conflicts = r.mean_conflicts;
        out->est_total_conflicts = r.est_total_conflicts;
        out->mean_seconds = r.mean_seconds;
        out->est_total_seconds = r.est_total_seconds;
        out->seed = r.seed;
        out->guess_bits = r.guess_bits;
        out->budget_conflicts = r.budget_conflicts;
        return TENC_OK;
    });
}

}  // extern "C"

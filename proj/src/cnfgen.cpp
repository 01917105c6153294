#include "cnfgen.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "minimize.hpp"

namespace tenc {

namespace {

// nodes that must keep an addressable value of their own (cone roots)
std::set<NodeId> forced_roots(const EncodingState& state) {
    std::set<NodeId> f;
    for (BitRef r : state.output_bits)
        if (!r.is_const()) f.insert(r.node_id());
    for (BitRef r : state.asserts)
        if (!r.is_const()) f.insert(r.node_id());
    for (const CoreRecord& rec : state.core_records)
        for (BitRef r : rec.refs)
            if (!r.is_const()) f.insert(r.node_id());
    for (NodeId id : state.mem_marks) f.insert(id);
    return f;
}

}  // namespace

std::vector<uint8_t> prune(const NodeStore& store, const EncodingState& state) {
    std::vector<uint8_t> live(store.size(), 0);
    std::vector<NodeId> stack;
    auto mark = [&](NodeId id) {
        if (!live[id]) {
            live[id] = 1;
            stack.push_back(id);
        }
    };
    for (BitRef r : state.output_bits)
        if (!r.is_const()) mark(r.node_id());
    for (BitRef r : state.asserts)
        if (!r.is_const()) mark(r.node_id());
    for (const CoreRecord& rec : state.core_records)
        for (BitRef r : rec.refs)
            if (!r.is_const()) mark(r.node_id());
    for (NodeId id : state.input_vars) mark(id);  // declared inputs always survive
    while (!stack.empty()) {
        NodeId id = stack.back();
        stack.pop_back();
        for (NodeId c : store.node(id).children) mark(c);
    }
    return live;
}

namespace {

class Fuser {
  public:
    Fuser(const NodeStore& store, const EncodingState& state, int max_arity)
        : in_(store), state_(state), max_arity_(std::max(2, max_arity)) {}

    FusedDag run() {
        live_ = prune(in_, state_);
        forced_ = forced_roots(state_);

        fanout_.assign(in_.size(), 0);
        for (NodeId id = 0; id < in_.size(); ++id) {
            if (!live_[id]) continue;
            for (NodeId c : in_.node(id).children) ++fanout_[c];
        }

        absorbed_.assign(in_.size(), 0);
        cone_of_.assign(in_.size(), (uint32_t)-1);

        // classify: every live node becomes a root or is absorbed into the
        // cone of its unique parent
        for (NodeId id = in_.size(); id-- > 0;) {
            if (!live_[id] || absorbed_[id]) continue;
            if (is_root(id) && cone_of_[id] == (uint32_t)-1) build_cone(id);
        }
        // fan-out-1 nodes whose parent refused them become roots themselves
        for (NodeId id = in_.size(); id-- > 0;) {
            if (!live_[id] || absorbed_[id]) continue;
            if (cone_of_[id] == (uint32_t)-1) build_cone(id);
        }

        emit();
        return std::move(out_);
    }

  private:
    const NodeStore& in_;
    const EncodingState& state_;
    int max_arity_;
    std::vector<uint8_t> live_;
    std::set<NodeId> forced_;
    std::vector<uint32_t> fanout_;
    std::vector<uint8_t> absorbed_;
    std::vector<uint32_t> cone_of_;  // root id for every node in a cone (incl. root)

    struct Cone {
        NodeId root;
        std::vector<NodeId> members;    // absorbed nodes incl. root
        std::vector<NodeId> support;    // boundary refs, first-encounter order
        // associative split: per-bin member/support sets (empty when unused)
        struct Bin {
            std::vector<NodeId> children;  // root's direct children in this bin
            std::vector<NodeId> support;
        };
        std::vector<Bin> bins;
        std::vector<NodeId> loose;      // root children left outside bins
        bool split = false;
    };
    std::map<NodeId, Cone> cones_;
    FusedDag out_;

    bool is_root(NodeId id) const {
        const FormulaNode& n = in_.node(id);
        return n.kind == NodeKind::Input || fanout_[id] != 1 || forced_.count(id) != 0;
    }

    bool absorbable(NodeId id) const {
        const FormulaNode& n = in_.node(id);
        return live_[id] && n.kind != NodeKind::Input && fanout_[id] == 1 &&
               forced_.count(id) == 0 && cone_of_[id] == (uint32_t)-1 && !absorbed_[id];
    }

    // Expand a sub-cone from `start`, absorbing greedily while the support
    // stays within `budget`. Returns false (and leaves no marks) if even the
    // immediate children overflow.
    bool grow(NodeId start, std::set<NodeId>& support_set, std::vector<NodeId>& support,
              std::vector<NodeId>& members, size_t budget) {
        // tentative: treat start's children as new support
        std::set<NodeId> trial = support_set;
        trial.erase(start);
        for (NodeId c : in_.node(start).children) trial.insert(c);
        if (trial.size() > budget) return false;

        members.push_back(start);
        support_set.erase(start);
        support.erase(std::remove(support.begin(), support.end(), start), support.end());
        for (NodeId c : in_.node(start).children) {
            if (!support_set.count(c)) {
                support_set.insert(c);
                support.push_back(c);
            }
        }
        // try absorbing children depth-first, left to right
        for (NodeId c : in_.node(start).children) {
            if (!support_set.count(c)) continue;  // already absorbed via another path
            if (absorbable(c))
                grow(c, support_set, support, members, budget);
        }
        return true;
    }

    void build_cone(NodeId root) {
        Cone cone;
        cone.root = root;
        const FormulaNode& n = in_.node(root);

        if (n.kind == NodeKind::Input || n.kind == NodeKind::Not) {
            // Not roots stay literal substitutions unless their operand cone fits
            cone.members = {root};
            if (n.kind == NodeKind::Not && absorbable(n.children[0])) {
                std::set<NodeId> sset{n.children[0]};
                std::vector<NodeId> sup{n.children[0]};
                std::vector<NodeId> members{root};
                if (grow(n.children[0], sset, sup, members, max_arity_)) {
                    cone.members = members;
                    cone.support = sup;
                }
            }
            commit(cone);
            return;
        }

        if (n.kind == NodeKind::And || n.kind == NodeKind::Or || n.kind == NodeKind::Xor ||
            n.kind == NodeKind::Ite || n.kind == NodeKind::Table) {
            // generic cone first
            std::set<NodeId> sset;
            std::vector<NodeId> sup;
            std::vector<NodeId> members{root};
            for (NodeId c : n.children) {
                if (!sset.count(c)) {
                    sset.insert(c);
                    sup.push_back(c);
                }
            }
            if (sset.size() <= (size_t)max_arity_) {
                for (NodeId c : n.children) {
                    if (sset.count(c) && absorbable(c)) grow(c, sset, sup, members, max_arity_);
                }
                cone.members = members;
                cone.support = sup;
                if (members.size() == 1) cone.support.clear();
                commit(cone);
                return;
            }

            // oversized associative node: pack single-use gate operands into
            // disjoint support-bounded parts, one variable each
            if (n.kind == NodeKind::And || n.kind == NodeKind::Or || n.kind == NodeKind::Xor) {
                split_associative(cone, n);
                commit(cone);
                return;
            }
        }

        cone.members = {root};
        commit(cone);
    }

    void split_associative(Cone& cone, const FormulaNode& n) {
        struct Cand {
            NodeId child;
            std::vector<NodeId> members;
            std::vector<NodeId> support;
        };
        std::vector<Cand> cands;
        for (NodeId c : n.children) {
            if (!absorbable(c)) {
                cone.loose.push_back(c);
                continue;
            }
            const FormulaNode& cn = in_.node(c);
            bool gate = cn.kind == NodeKind::And || cn.kind == NodeKind::Or ||
                        cn.kind == NodeKind::Xor || cn.kind == NodeKind::Ite ||
                        cn.kind == NodeKind::Not || cn.kind == NodeKind::Table;
            if (!gate) {
                cone.loose.push_back(c);
                continue;
            }
            std::set<NodeId> sset{c};
            std::vector<NodeId> sup{c};
            std::vector<NodeId> members;
            if (!grow(c, sset, sup, members, max_arity_)) {
                cone.loose.push_back(c);
                continue;
            }
            cands.push_back({c, members, sup});
        }

        if (cands.empty()) {
            cone.members = {cone.root};
            cone.loose.clear();
            return;
        }

        // largest support first, then first bin that still fits
        std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            return a.support.size() > b.support.size();
        });
        struct WorkBin {
            std::set<NodeId> support_set;
            std::vector<Cand*> members;
        };
        std::vector<WorkBin> bins;
        for (auto& cand : cands) {
            bool placed = false;
            for (auto& b : bins) {
                std::set<NodeId> u = b.support_set;
                u.insert(cand.support.begin(), cand.support.end());
                if (u.size() <= (size_t)max_arity_) {
                    b.support_set = std::move(u);
                    b.members.push_back(&cand);
                    placed = true;
                    break;
                }
            }
            if (!placed) bins.push_back({{cand.support.begin(), cand.support.end()}, {&cand}});
        }

        cone.split = true;
        cone.members = {cone.root};
        for (auto& b : bins) {
            Cone::Bin bin;
            for (Cand* c : b.members) {
                bin.children.push_back(c->child);
                for (NodeId m : c->members) {
                    absorbed_[m] = 1;
                    cone_of_[m] = cone.root;
                    cone.members.push_back(m);
                }
            }
            bin.support.assign(b.support_set.begin(), b.support_set.end());
            cone.bins.push_back(std::move(bin));
        }
    }

    void commit(Cone cone) {
        for (NodeId m : cone.members) {
            if (m != cone.root) absorbed_[m] = 1;
            cone_of_[m] = cone.root;
        }
        cones_[cone.root] = std::move(cone);
    }

    // evaluate node `id` under `assign` (values for support refs), walking
    // only nodes inside this cone
    bool eval_in(NodeId id, const std::map<NodeId, bool>& assign,
                 std::map<NodeId, bool>& memo) const {
        auto a = assign.find(id);
        if (a != assign.end()) return a->second;
        auto m = memo.find(id);
        if (m != memo.end()) return m->second;
        const FormulaNode& n = in_.node(id);
        bool v = false;
        switch (n.kind) {
            case NodeKind::And: {
                v = true;
                for (NodeId c : n.children) v = v && eval_in(c, assign, memo);
                break;
            }
            case NodeKind::Or: {
                for (NodeId c : n.children) v = v || eval_in(c, assign, memo);
                break;
            }
            case NodeKind::Xor: {
                for (NodeId c : n.children) v = v != eval_in(c, assign, memo);
                break;
            }
            case NodeKind::Not:
                v = !eval_in(n.children[0], assign, memo);
                break;
            case NodeKind::Ite:
                v = eval_in(n.children[0], assign, memo)
                        ? eval_in(n.children[1], assign, memo)
                        : eval_in(n.children[2], assign, memo);
                break;
            case NodeKind::Table: {
                size_t row = 0;
                for (size_t i = 0; i < n.children.size(); ++i)
                    if (eval_in(n.children[i], assign, memo)) row |= size_t(1) << i;
                v = n.table[row] != 0;
                break;
            }
            case NodeKind::Input:
                throw std::logic_error("fuse: input inside a cone");
        }
        memo[id] = v;
        return v;
    }

    std::vector<uint8_t> cone_truth(NodeId value_of, const std::vector<NodeId>& support) const {
        std::vector<uint8_t> bits(size_t(1) << support.size());
        for (size_t row = 0; row < bits.size(); ++row) {
            std::map<NodeId, bool> assign;
            for (size_t i = 0; i < support.size(); ++i)
                assign[support[i]] = (row >> i) & 1;
            std::map<NodeId, bool> memo;
            bits[row] = eval_in(value_of, assign, memo);
        }
        return bits;
    }

    // combined table of op over bin children
    std::vector<uint8_t> bin_truth(NodeKind op, const Cone::Bin& bin) const {
        std::vector<uint8_t> bits(size_t(1) << bin.support.size());
        for (size_t row = 0; row < bits.size(); ++row) {
            std::map<NodeId, bool> assign;
            for (size_t i = 0; i < bin.support.size(); ++i)
                assign[bin.support[i]] = (row >> i) & 1;
            std::map<NodeId, bool> memo;
            bool v = op == NodeKind::And;
            for (NodeId c : bin.children) {
                bool cv = eval_in(c, assign, memo);
                if (op == NodeKind::And) v = v && cv;
                else if (op == NodeKind::Or) v = v || cv;
                else v = v != cv;
            }
            bits[row] = v;
        }
        return bits;
    }

    // mk_table wrapper that specializes away children whose mapped value
    // folded to a constant (distinct cones can cons to one table node, and
    // the resulting sharing lets parent gates fold)
    BitRef emit_table(std::vector<BitRef> kids, std::vector<uint8_t> bits,
                      SourcePos origin) {
        for (size_t i = 0; i < kids.size();) {
            if (!kids[i].is_const()) {
                ++i;
                continue;
            }
            size_t bit = kids[i].const_value() ? 1 : 0;
            std::vector<uint8_t> reduced(bits.size() / 2);
            for (size_t row = 0; row < reduced.size(); ++row) {
                size_t low = row & ((size_t(1) << i) - 1);
                size_t high = row >> i;
                reduced[row] = bits[(high << (i + 1)) | (bit << i) | low];
            }
            bits = std::move(reduced);
            kids.erase(kids.begin() + i);
        }
        if (kids.empty()) return BitRef::constant(bits[0] != 0);
        return out_.store.mk_table(std::move(kids), std::move(bits), origin);
    }

    void emit() {
        std::vector<BitRef> map(in_.size(), BitRef::constant(false));
        std::vector<uint8_t> mapped(in_.size(), 0);

        auto mref = [&](NodeId old) -> BitRef {
            if (!mapped[old]) throw std::logic_error("fuse: unmapped reference");
            return map[old];
        };

        for (NodeId id = 0; id < in_.size(); ++id) {
            if (!live_[id] || absorbed_[id]) continue;
            auto it = cones_.find(id);
            if (it == cones_.end()) throw std::logic_error("fuse: live node without a cone");
            const Cone& cone = it->second;
            const FormulaNode& n = in_.node(id);

            BitRef built;
            if (cone.split) {
                std::vector<BitRef> ops;
                for (const auto& bin : cone.bins) {
                    std::vector<BitRef> kids;
                    for (NodeId s : bin.support) kids.push_back(mref(s));
                    ops.push_back(emit_table(std::move(kids), bin_truth(n.kind, bin),
                                             n.origin));
                }
                for (NodeId c : cone.loose) ops.push_back(mref(c));
                built = out_.store.mk_nary(n.kind, std::move(ops), n.origin);
            } else if (cone.members.size() > 1) {
                std::vector<BitRef> kids;
                for (NodeId s : cone.support) kids.push_back(mref(s));
                built = emit_table(std::move(kids), cone_truth(id, cone.support),
                                   n.origin);
            } else {
                switch (n.kind) {
                    case NodeKind::Input:
                        built = out_.store.add_input(n.input_index, n.origin);
                        break;
                    case NodeKind::Not:
                        built = out_.store.mk_not(mref(n.children[0]), n.origin);
                        break;
                    case NodeKind::Ite:
                        built = out_.store.mk_ite(mref(n.children[0]), mref(n.children[1]),
                                                  mref(n.children[2]), n.origin);
                        break;
                    case NodeKind::Table: {
                        std::vector<BitRef> kids;
                        for (NodeId c : n.children) kids.push_back(mref(c));
                        built = emit_table(std::move(kids), n.table, n.origin);
                        break;
                    }
                    default: {
                        std::vector<BitRef> kids;
                        for (NodeId c : n.children) kids.push_back(mref(c));
                        built = out_.store.mk_nary(n.kind, std::move(kids), n.origin);
                        break;
                    }
                }
            }
            map[id] = built;
            mapped[id] = 1;
        }

        auto map_ref = [&](BitRef r) -> BitRef {
            if (r.is_const()) return r;
            if (!mapped[r.node_id()]) throw std::logic_error("fuse: dangling state ref");
            return map[r.node_id()];
        };

        for (NodeId id : state_.input_vars) {
            BitRef r = map_ref(BitRef::node(id));
            if (r.is_const()) throw std::logic_error("fuse: input folded away");
            out_.state.input_vars.push_back(r.node_id());
        }
        for (BitRef r : state_.output_bits) out_.state.output_bits.push_back(map_ref(r));
        for (BitRef r : state_.asserts) out_.state.asserts.push_back(map_ref(r));
        for (const CoreRecord& rec : state_.core_records) {
            CoreRecord nr;
            nr.label = rec.label;
            for (BitRef r : rec.refs) nr.refs.push_back(map_ref(r));
            out_.state.core_records.push_back(std::move(nr));
        }
        for (NodeId id : state_.mem_marks) {
            if (!live_[id]) continue;
            BitRef r = map_ref(BitRef::node(id));
            if (!r.is_const()) out_.state.mem_marks.push_back(r.node_id());
        }
    }
};

}  // namespace

FusedDag fuse_tables(const NodeStore& store, const EncodingState& state, int max_arity) {
    Fuser f(store, state, max_arity);
    return f.run();
}

namespace {

class Emitter {
  public:
    Emitter(const NodeStore& store, const EncodingState& state, const EncodeOptions& opts)
        : store_(store), state_(state), opts_(opts) {}

    TemplateCnf run() {
        live_ = prune(store_, state_);
        pvar_.assign(store_.size(), 0);

        uint32_t n = (uint32_t)state_.input_vars.size();
        for (uint32_t i = 0; i < n; ++i) {
            NodeId id = state_.input_vars[i];
            if (store_.node(id).kind != NodeKind::Input)
                throw std::logic_error("tseitin: input list entry is not an Input node");
            pvar_[id] = i + 1;
        }
        next_pvar_ = n + 1;

        for (NodeId id = 0; id < store_.size(); ++id) {
            if (!live_[id]) continue;
            const FormulaNode& nd = store_.node(id);
            if (nd.kind == NodeKind::Input || nd.kind == NodeKind::Not) continue;
            pvar_[id] = next_pvar_++;
            emit_gate(id, nd);
            if (next_pvar_ > opts_.var_cap)
                throw std::runtime_error("tseitin: variable budget exceeded");
        }

        emit_asserts();
        emit_outputs();
        return renumber();
    }

  private:
    const NodeStore& store_;
    const EncodingState& state_;
    const EncodeOptions& opts_;
    std::vector<uint8_t> live_;
    std::vector<uint32_t> pvar_;
    uint32_t next_pvar_ = 1;
    std::vector<Clause> clauses_;
    std::vector<uint32_t> slot_pvars_;  // per output position
    std::map<std::string, std::vector<std::vector<int>>> table_memo_;

    int32_t lit_of(BitRef r) const {
        if (r.is_const()) throw std::logic_error("tseitin: constant has no literal");
        return lit_of(r.node_id());
    }
    int32_t lit_of(NodeId id) const {
        const FormulaNode& n = store_.node(id);
        if (n.kind == NodeKind::Not) return -lit_of(n.children[0]);
        if (pvar_[id] == 0) throw std::logic_error("tseitin: node without a variable");
        return (int32_t)pvar_[id];
    }

    void add_clause(std::vector<int32_t> lits) {
        // dedupe; drop tautologies (they can arise from negated table inputs)
        std::vector<int32_t> out;
        for (int32_t l : lits) {
            bool dup = false;
            for (int32_t o : out) {
                if (o == l) dup = true;
                if (o == -l) return;  // tautology
            }
            if (!dup) out.push_back(l);
        }
        if (out.empty()) throw std::logic_error("tseitin: empty clause");
        clauses_.push_back(Clause{std::move(out)});
    }

    void emit_gate(NodeId id, const FormulaNode& nd) {
        int32_t v = (int32_t)pvar_[id];
        switch (nd.kind) {
            case NodeKind::And: {
                std::vector<int32_t> big{v};
                for (NodeId c : nd.children) {
                    int32_t l = lit_of(c);
                    add_clause({-v, l});
                    big.push_back(-l);
                }
                add_clause(std::move(big));
                break;
            }
            case NodeKind::Or: {
                std::vector<int32_t> big{-v};
                for (NodeId c : nd.children) {
                    int32_t l = lit_of(c);
                    add_clause({v, -l});
                    big.push_back(l);
                }
                add_clause(std::move(big));
                break;
            }
            case NodeKind::Xor: {
                std::vector<int32_t> lits;
                for (NodeId c : nd.children) lits.push_back(lit_of(c));
                emit_xor_def(v, lits);
                break;
            }
            case NodeKind::Ite: {
                int32_t c = lit_of(nd.children[0]);
                int32_t t = lit_of(nd.children[1]);
                int32_t e = lit_of(nd.children[2]);
                add_clause({-v, -c, t});
                add_clause({-v, c, e});
                add_clause({v, -c, -t});
                add_clause({v, c, -e});
                if (opts_.ite_redundant) {
                    add_clause({-v, t, e});
                    add_clause({v, -t, -e});
                }
                break;
            }
            case NodeKind::Table: {
                std::vector<int32_t> lits;
                for (NodeId c : nd.children) lits.push_back(lit_of(c));
                lits.push_back(v);
                std::string key((const char*)nd.table.data(), nd.table.size());
                key.push_back((char)nd.children.size());
                auto it = table_memo_.find(key);
                if (it == table_memo_.end()) {
                    TruthTable tt{(int)nd.children.size(), nd.table};
                    it = table_memo_.emplace(key, minimize_table(tt)).first;
                }
                for (const auto& cl : it->second) {
                    std::vector<int32_t> out;
                    for (int l : cl)
                        out.push_back(l > 0 ? lits[l - 1] : -lits[-l - 1]);
                    add_clause(std::move(out));
                }
                break;
            }
            default:
                throw std::logic_error("tseitin: unexpected node kind");
        }
    }

    // defining clauses for target ≡ xor(lits); wide XORs chain through fresh
    // variables in chunks of xor_max_direct
    void emit_xor_def(int32_t target, std::vector<int32_t> lits) {
        size_t maxk = std::max(2, opts_.xor_max_direct);
        while (lits.size() > maxk) {
            std::vector<int32_t> rest;
            size_t i = 0;
            for (; i + maxk <= lits.size(); i += maxk) {
                std::vector<int32_t> chunk(lits.begin() + i, lits.begin() + i + maxk);
                int32_t f = (int32_t)next_pvar_++;
                emit_xor_direct(f, chunk);
                rest.push_back(f);
            }
            for (; i < lits.size(); ++i) rest.push_back(lits[i]);
            lits = std::move(rest);
        }
        emit_xor_direct(target, lits);
    }

    void emit_xor_direct(int32_t target, const std::vector<int32_t>& lits) {
        size_t k = lits.size();
        for (uint32_t mask = 0; mask < (1u << k); ++mask) {
            std::vector<int32_t> cl;
            int parity = 0;
            for (size_t i = 0; i < k; ++i) {
                bool one = (mask >> i) & 1;
                parity ^= one;
                cl.push_back(one ? -lits[i] : lits[i]);
            }
            cl.push_back(parity ? target : -target);
            add_clause(std::move(cl));
        }
    }

    void emit_asserts() {
        for (BitRef r : state_.asserts) {
            if (r.is_const()) {
                if (r.const_value()) continue;  // assert(1): nothing to add
                // assert(0): force a contradiction without an empty clause
                int32_t q = (int32_t)next_pvar_++;
                add_clause({q});
                add_clause({-q});
                continue;
            }
            add_clause({lit_of(r)});
        }
    }

    void emit_outputs() {
        std::set<NodeId> owners;
        for (BitRef r : state_.output_bits) {
            if (r.is_const()) {
                int32_t o = (int32_t)next_pvar_++;
                slot_pvars_.push_back((uint32_t)o);
                add_clause({r.const_value() ? o : -o});
                owner_flags_.push_back(false);
                continue;
            }
            NodeId id = r.node_id();
            const FormulaNode& nd = store_.node(id);
            bool can_own = nd.kind != NodeKind::Input && nd.kind != NodeKind::Not &&
                           owners.count(id) == 0;
            if (can_own) {
                owners.insert(id);
                slot_pvars_.push_back(pvar_[id]);
                owner_flags_.push_back(true);
            } else {
                int32_t o = (int32_t)next_pvar_++;
                int32_t l = lit_of(id);
                add_clause({-o, l});
                add_clause({o, -l});
                slot_pvars_.push_back((uint32_t)o);
                owner_flags_.push_back(false);
            }
        }
    }

    std::vector<bool> owner_flags_;

    TemplateCnf renumber() {
        uint32_t n = (uint32_t)state_.input_vars.size();
        uint32_t m = (uint32_t)state_.output_bits.size();
        uint32_t total_pvars = next_pvar_ - 1;

        std::set<uint32_t> slot_set(slot_pvars_.begin(), slot_pvars_.end());
        if (slot_set.size() != slot_pvars_.size())
            throw std::logic_error("tseitin: output slots must be distinct");

        uint32_t interior = total_pvars - n - m;
        uint32_t num_vars = total_pvars;

        std::vector<uint32_t> final_of(total_pvars + 1, 0);
        for (uint32_t i = 1; i <= n; ++i) final_of[i] = i;
        uint32_t next = n + 1;
        for (uint32_t pv = n + 1; pv <= total_pvars; ++pv) {
            if (slot_set.count(pv)) continue;
            final_of[pv] = next++;
        }
        if (next != n + interior + 1)
            throw std::logic_error("tseitin: interior numbering inconsistency");
        for (uint32_t j = 0; j < m; ++j)
            final_of[slot_pvars_[j]] = n + interior + 1 + j;

        TemplateCnf out;
        out.num_vars = num_vars;
        for (Clause& c : clauses_) {
            Clause nc;
            for (int32_t l : c.lits) {
                uint32_t fv = final_of[l > 0 ? l : -l];
                if (fv == 0) throw std::logic_error("tseitin: unmapped variable");
                nc.lits.push_back(l > 0 ? (int32_t)fv : -(int32_t)fv);
            }
            out.clauses.push_back(std::move(nc));
        }
        for (uint32_t i = 1; i <= n; ++i) out.input_vars.push_back(i);
        for (uint32_t j = 0; j < m; ++j) out.output_vars.push_back(n + interior + 1 + j);

        for (const CoreRecord& rec : state_.core_records) {
            CoreRecordOut ro;
            ro.label = rec.label;
            for (BitRef r : rec.refs) {
                CoreEntry e;
                if (r.is_const()) {
                    e.is_const = true;
                    e.const_val = r.const_value();
                } else {
                    int32_t l = lit_of(r);
                    uint32_t fv = final_of[l > 0 ? l : -l];
                    e.lit = l > 0 ? (int32_t)fv : -(int32_t)fv;
                }
                ro.entries.push_back(e);
            }
            out.core_records.push_back(std::move(ro));
        }

        std::vector<uint8_t> used(num_vars + 1, 0);
        for (const Clause& c : out.clauses)
            for (int32_t l : c.lits) used[l > 0 ? l : -l] = 1;
        for (uint32_t i = 1; i <= n; ++i)
            if (!used[i]) out.unused_inputs.push_back(i);
        for (uint32_t v = n + 1; v <= num_vars; ++v)
            if (!used[v]) throw std::logic_error("tseitin: gap variable " + std::to_string(v));
        return out;
    }
};

}  // namespace

TemplateCnf tseitin(const NodeStore& store, const EncodingState& state,
                    const EncodeOptions& opts) {
    if (opts.fuse) {
        FusedDag fused = fuse_tables(store, state, opts.fuse_max_arity);
        Emitter e(fused.store, fused.state, opts);
        return e.run();
    }
    Emitter e(store, state, opts);
    return e.run();
}

}  // namespace tenc

#include "aiger.hpp"

#include <map>
#include <sstream>

#include "cnfgen.hpp"

namespace tenc {

namespace {

class AigBuilder {
  public:
    explicit AigBuilder(uint32_t num_inputs) : next_var_(num_inputs + 1) {}

    uint32_t input_lit(uint32_t index) const { return 2 * (index + 1); }

    uint32_t mk_and(uint32_t a, uint32_t b) {
        if (a > b) std::swap(a, b);
        if (a == 0) return 0;            // false
        if (a == 1) return b;            // true ∧ b
        if (a == b) return a;
        if ((a ^ b) == 1) return 0;      // x ∧ ¬x
        auto key = std::make_pair(a, b);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        uint32_t lhs = 2 * next_var_++;
        gates_.push_back({lhs, a, b});
        cache_[key] = lhs;
        return lhs;
    }
    uint32_t mk_or(uint32_t a, uint32_t b) { return mk_and(a ^ 1, b ^ 1) ^ 1; }
    uint32_t mk_xor(uint32_t a, uint32_t b) {
        return mk_or(mk_and(a, b ^ 1), mk_and(a ^ 1, b));
    }
    uint32_t mk_ite(uint32_t c, uint32_t t, uint32_t e) {
        return mk_or(mk_and(c, t), mk_and(c ^ 1, e));
    }

    struct Gate {
        uint32_t lhs, rhs0, rhs1;
    };
    const std::vector<Gate>& gates() const { return gates_; }
    uint32_t max_var() const { return next_var_ - 1; }

  private:
    uint32_t next_var_;
    std::vector<Gate> gates_;
    std::map<std::pair<uint32_t, uint32_t>, uint32_t> cache_;
};

}  // namespace

AigerResult to_aiger(const NodeStore& store, const EncodingState& state) {
    AigerResult out;
    for (BitRef a : state.asserts) {
        if (!(a.is_const() && a.const_value())) {
            out.error = "AIGER export requires a pure circuit (assert constraints present)";
            return out;
        }
    }

    std::vector<uint8_t> live = prune(store, state);
    uint32_t n = (uint32_t)state.input_vars.size();
    AigBuilder aig(n);

    std::vector<uint32_t> lit(store.size(), UINT32_MAX);
    for (NodeId id = 0; id < store.size(); ++id) {
        if (!live[id]) continue;
        const FormulaNode& nd = store.node(id);
        uint32_t v = UINT32_MAX;
        switch (nd.kind) {
            case NodeKind::Input:
                v = aig.input_lit(nd.input_index);
                break;
            case NodeKind::Not:
                v = lit[nd.children[0]] ^ 1;
                break;
            case NodeKind::And: {
                v = 1;
                for (NodeId c : nd.children) v = aig.mk_and(v, lit[c]);
                break;
            }
            case NodeKind::Or: {
                v = 0;
                for (NodeId c : nd.children) v = aig.mk_or(v, lit[c]);
                break;
            }
            case NodeKind::Xor: {
                v = 0;
                for (NodeId c : nd.children) v = aig.mk_xor(v, lit[c]);
                break;
            }
            case NodeKind::Ite:
                v = aig.mk_ite(lit[nd.children[0]], lit[nd.children[1]],
                               lit[nd.children[2]]);
                break;
            case NodeKind::Table: {
                out.error = "AIGER export requires a table-free DAG";
                return out;
            }
        }
        lit[id] = v;
    }

    std::vector<uint32_t> outputs;
    for (BitRef r : state.output_bits) {
        if (r.is_const()) outputs.push_back(r.const_value() ? 1 : 0);
        else outputs.push_back(lit[r.node_id()]);
    }

    std::ostringstream os;
    os << "aag " << aig.max_var() << " " << n << " 0 " << outputs.size() << " "
       << aig.gates().size() << "\n";
    for (uint32_t i = 0; i < n; ++i) os << aig.input_lit(i) << "\n";
    for (uint32_t o : outputs) os << o << "\n";
    for (const auto& g : aig.gates()) os << g.lhs << " " << g.rhs0 << " " << g.rhs1 << "\n";
    out.text = os.str();
    out.ok = true;
    return out;
}

}  // namespace tenc

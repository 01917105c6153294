#include "minimize.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace tenc {

namespace {

// implicant over k variables: `care` marks fixed positions, `val` their values
struct Cube {
    uint32_t care = 0;
    uint32_t val = 0;
    bool operator<(const Cube& o) const {
        return care != o.care ? care < o.care : val < o.val;
    }
    bool operator==(const Cube& o) const { return care == o.care && val == o.val; }
};

bool covers(const Cube& c, uint32_t minterm) {
    return (minterm & c.care) == c.val;
}

// prime implicants of the on-set `ones` over k variables
std::vector<Cube> prime_implicants(int k, const std::vector<uint32_t>& ones) {
    uint32_t full = k == 32 ? 0xffffffffu : ((1u << k) - 1);
    std::set<Cube> current;
    for (uint32_t m : ones) current.insert(Cube{full, m});

    std::vector<Cube> primes;
    while (!current.empty()) {
        std::set<Cube> next;
        std::map<Cube, bool> merged;
        std::vector<Cube> cur(current.begin(), current.end());
        for (auto& c : cur) merged[c] = false;
        // group by care mask; only cubes with the same mask can merge
        for (size_t i = 0; i < cur.size(); ++i) {
            for (size_t j = i + 1; j < cur.size(); ++j) {
                if (cur[i].care != cur[j].care) continue;
                uint32_t diff = cur[i].val ^ cur[j].val;
                if (diff == 0 || (diff & (diff - 1)) != 0) continue;  // exactly one bit
                Cube m{cur[i].care & ~diff, cur[i].val & ~diff};
                next.insert(m);
                merged[cur[i]] = true;
                merged[cur[j]] = true;
            }
        }
        for (auto& c : cur)
            if (!merged[c]) primes.push_back(c);
        current = std::move(next);
    }
    std::sort(primes.begin(), primes.end());
    return primes;
}

// essential-first greedy cover of `ones` by `primes`
std::vector<Cube> greedy_cover(const std::vector<Cube>& primes,
                               const std::vector<uint32_t>& ones) {
    if (ones.empty()) return {};
    std::map<uint32_t, std::vector<size_t>> coverers;
    for (uint32_t m : ones) coverers[m] = {};
    for (size_t p = 0; p < primes.size(); ++p)
        for (uint32_t m : ones)
            if (covers(primes[p], m)) coverers[m].push_back(p);

    std::set<uint32_t> uncovered(ones.begin(), ones.end());
    std::set<size_t> chosen;

    // essential primes first
    for (auto& [m, ps] : coverers) {
        if (ps.size() == 1) chosen.insert(ps[0]);
    }
    for (size_t p : chosen)
        for (auto it = uncovered.begin(); it != uncovered.end();)
            it = covers(primes[p], *it) ? uncovered.erase(it) : std::next(it);

    while (!uncovered.empty()) {
        size_t best = primes.size();
        size_t best_count = 0;
        for (size_t p = 0; p < primes.size(); ++p) {
            if (chosen.count(p)) continue;
            size_t cnt = 0;
            for (uint32_t m : uncovered)
                if (covers(primes[p], m)) ++cnt;
            if (cnt > best_count) {
                best_count = cnt;
                best = p;  // ties break to the lowest-ordered prime
            }
        }
        if (best == primes.size()) throw std::logic_error("cover: uncoverable minterm");
        chosen.insert(best);
        for (auto it = uncovered.begin(); it != uncovered.end();)
            it = covers(primes[best], *it) ? uncovered.erase(it) : std::next(it);
    }

    std::vector<Cube> out;
    for (size_t p : chosen) out.push_back(primes[p]);
    std::sort(out.begin(), out.end());
    return out;
}

// clause forbidding cube `c` of φ-polarity `phi_val`:
//   implicant of φ   -> ( v ∨ ¬cube )
//   implicant of ¬φ  -> (¬v ∨ ¬cube )
std::vector<int> cube_clause(int k, const Cube& c, bool phi_val) {
    std::vector<int> cl;
    for (int i = 0; i < k; ++i) {
        if (!(c.care & (1u << i))) continue;
        bool is_one = c.val & (1u << i);
        cl.push_back(is_one ? -(i + 1) : (i + 1));
    }
    cl.push_back(phi_val ? (k + 1) : -(k + 1));
    return cl;
}

}  // namespace

std::vector<std::vector<int>> naive_table_cnf(const TruthTable& tt) {
    if (tt.arity < 1 || tt.arity > 16 || tt.bits.size() != (size_t(1) << tt.arity))
        throw std::logic_error("naive_table_cnf: bad table");
    std::vector<std::vector<int>> out;
    for (uint32_t row = 0; row < (1u << tt.arity); ++row) {
        std::vector<int> cl;
        for (int i = 0; i < tt.arity; ++i)
            cl.push_back((row & (1u << i)) ? -(i + 1) : (i + 1));
        cl.push_back(tt.bits[row] ? (tt.arity + 1) : -(tt.arity + 1));
        out.push_back(std::move(cl));
    }
    return out;
}

std::vector<std::vector<int>> minimize_table(const TruthTable& tt) {
    if (tt.arity < 1 || tt.arity > 16 || tt.bits.size() != (size_t(1) << tt.arity))
        throw std::logic_error("minimize_table: arity out of range");
    if (tt.arity > 12) return naive_table_cnf(tt);

    std::vector<uint32_t> on, off;
    for (uint32_t row = 0; row < (1u << tt.arity); ++row)
        (tt.bits[row] ? on : off).push_back(row);

    std::vector<std::vector<int>> out;
    if (off.empty()) {
        out.push_back({tt.arity + 1});  // φ ≡ 1: unit (v)
        return out;
    }
    if (on.empty()) {
        out.push_back({-(tt.arity + 1)});
        return out;
    }

    auto on_cover = greedy_cover(prime_implicants(tt.arity, on), on);
    auto off_cover = greedy_cover(prime_implicants(tt.arity, off), off);
    for (const Cube& c : off_cover) out.push_back(cube_clause(tt.arity, c, false));
    for (const Cube& c : on_cover) out.push_back(cube_clause(tt.arity, c, true));
    return out;
}

}  // namespace tenc

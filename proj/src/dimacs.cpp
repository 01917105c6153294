#include "dimacs.hpp"

#include <sstream>

namespace tenc {

std::string to_dimacs(const TemplateCnf& t) {
    std::ostringstream os;
    os << "c t-encoding v1\n";
    os << "c input";
    for (uint32_t v : t.input_vars) os << " " << v;
    os << "\n";
    os << "c output";
    for (uint32_t v : t.output_vars) os << " " << v;
    os << "\n";
    for (const auto& rec : t.core_records) {
        os << "c core " << rec.label;
        for (const auto& e : rec.entries) os << " " << e.text();
        os << "\n";
    }
    if (!t.unused_inputs.empty()) {
        os << "c unused-input";
        for (uint32_t v : t.unused_inputs) os << " " << v;
        os << "\n";
    }
    os << "p cnf " << t.num_vars << " " << t.clauses.size() << "\n";
    for (const Clause& c : t.clauses) {
        for (int32_t l : c.lits) os << l << " ";
        os << "0\n";
    }
    return os.str();
}

namespace {

bool parse_clause_body(std::istringstream& is, std::vector<Clause>& clauses,
                       uint32_t num_vars, size_t num_clauses, std::string& err) {
    Clause cur;
    int64_t lit;
    while (is >> lit) {
        if (lit == 0) {
            if (cur.lits.empty()) {
                err = "empty clause in input";
                return false;
            }
            clauses.push_back(std::move(cur));
            cur = Clause{};
        } else {
            uint64_t v = lit > 0 ? lit : -lit;
            if (v > num_vars) {
                err = "literal " + std::to_string(lit) + " out of range";
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
        err = "clause count mismatch: header says " + std::to_string(num_clauses) +
              ", found " + std::to_string(clauses.size());
        return false;
    }
    return true;
}

}  // namespace

bool parse_template(const std::string& text, TemplateCnf& out, std::string& err) {
    out = TemplateCnf{};
    std::istringstream is(text);
    std::string line;
    bool stamped = false, have_p = false;
    size_t num_clauses = 0;
    std::string body;

    while (std::getline(is, line)) {
        if (line.rfind("c ", 0) == 0 || line == "c") {
            std::istringstream ls(line.size() > 2 ? line.substr(2) : "");
            std::string tag;
            ls >> tag;
            if (tag == "t-encoding") {
                std::string ver;
                ls >> ver;
                stamped = ver == "v1";
            } else if (tag == "input") {
                int64_t v;
                while (ls >> v) out.input_vars.push_back((uint32_t)v);
            } else if (tag == "output") {
                int64_t v;
                while (ls >> v) out.output_vars.push_back((uint32_t)v);
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
                out.core_records.push_back(std::move(rec));
            } else if (tag == "unused-input") {
                int64_t v;
                while (ls >> v) out.unused_inputs.push_back((uint32_t)v);
            }
            continue;
        }
        if (line.rfind("p ", 0) == 0) {
            std::istringstream ls(line.substr(2));
            std::string fmt;
            ls >> fmt >> out.num_vars >> num_clauses;
            if (fmt != "cnf") {
                err = "not a DIMACS cnf file";
                return false;
            }
            have_p = true;
            continue;
        }
        if (have_p) {
            body += line;
            body += "\n";
        } else if (!line.empty()) {
            err = "unexpected text before the p-line";
            return false;
        }
    }

    if (!stamped) {
        err = "not a t-encoding template (missing 'c t-encoding v1' header)";
        return false;
    }
    if (!have_p) {
        err = "missing p-line";
        return false;
    }
    std::istringstream bs(body);
    return parse_clause_body(bs, out.clauses, out.num_vars, num_clauses, err);
}

bool parse_dimacs(const std::string& text, uint32_t& num_vars,
                  std::vector<Clause>& clauses, std::string& err) {
    std::istringstream is(text);
    std::string line;
    bool have_p = false;
    size_t num_clauses = 0;
    std::string body;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == 'c') continue;
        if (line.rfind("p ", 0) == 0) {
            std::istringstream ls(line.substr(2));
            std::string fmt;
            ls >> fmt >> num_vars >> num_clauses;
            if (fmt != "cnf") {
                err = "not a DIMACS cnf file";
                return false;
            }
            have_p = true;
            continue;
        }
        if (have_p) {
            body += line;
            body += "\n";
        }
    }
    if (!have_p) {
        err = "missing p-line";
        return false;
    }
    std::istringstream bs(body);
    return parse_clause_body(bs, clauses, num_vars, num_clauses, err);
}

}  // namespace tenc

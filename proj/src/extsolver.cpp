#include "extsolver.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <unistd.h>

namespace tenc {

ExternalResult external_solve(uint32_t num_vars, const std::vector<Clause>& clauses,
                              const std::string& command) {
    ExternalResult out;

    char path[] = "/tmp/tenc-ext-XXXXXX";
    int fd = mkstemp(path);
    if (fd < 0) {
        out.status = ExternalResult::Status::CommandFailed;
        out.message = "cannot create temp file";
        return out;
    }
    {
        std::ostringstream os;
        os << "p cnf " << num_vars << " " << clauses.size() << "\n";
        for (const Clause& c : clauses) {
            for (int32_t l : c.lits) os << l << " ";
            os << "0\n";
        }
        std::string text = os.str();
        ssize_t w = write(fd, text.data(), text.size());
        close(fd);
        if (w != (ssize_t)text.size()) {
            unlink(path);
            out.status = ExternalResult::Status::CommandFailed;
            out.message = "cannot write temp file";
            return out;
        }
    }

    std::string cmd = command + " " + path + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        unlink(path);
        out.status = ExternalResult::Status::CommandFailed;
        out.message = "cannot run solver command";
        return out;
    }
    std::string output;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, n);
    int rc = pclose(pipe);
    unlink(path);

    // parse "s ..." and "v ..." lines
    bool have_status = false, sat = false;
    std::vector<int32_t> lits;
    std::istringstream is(output);
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind("s ", 0) == 0) {
            if (line.find("UNSATISFIABLE") != std::string::npos) {
                have_status = true;
                sat = false;
            } else if (line.find("SATISFIABLE") != std::string::npos) {
                have_status = true;
                sat = true;
            } else if (line.find("UNKNOWN") != std::string::npos) {
                out.result.verdict = Verdict::Unknown;
                return out;
            }
        } else if (line.rfind("v ", 0) == 0) {
            std::istringstream ls(line.substr(2));
            int64_t l;
            while (ls >> l)
                if (l != 0) lits.push_back((int32_t)l);
        }
    }

    if (!have_status) {
        out.status = ExternalResult::Status::Unparseable;
        out.message = rc != 0 ? "solver exited with status " + std::to_string(rc) +
                                    " and no status line"
                              : "no status line in solver output";
        return out;
    }

    if (!sat) {
        out.result.verdict = Verdict::Unsat;
        return out;
    }

    out.result.verdict = Verdict::Sat;
    out.result.model.assign(num_vars + 1, 0);
    std::vector<uint8_t> seen(num_vars + 1, 0);
    for (int32_t l : lits) {
        uint32_t v = l > 0 ? l : -l;
        if (v == 0 || v > num_vars) continue;
        out.result.model[v] = l > 0;
        seen[v] = 1;
    }
    for (uint32_t v = 1; v <= num_vars; ++v) {
        if (!seen[v]) {
            out.status = ExternalResult::Status::VerificationFailed;
            out.message = "model leaves variable " + std::to_string(v) + " unassigned";
            return out;
        }
    }
    for (size_t ci = 0; ci < clauses.size(); ++ci) {
        bool csat = false;
        for (int32_t l : clauses[ci].lits) {
            uint32_t v = l > 0 ? l : -l;
            if (out.result.model[v] == (l > 0)) {
                csat = true;
                break;
            }
        }
        if (!csat) {
            out.status = ExternalResult::Status::VerificationFailed;
            out.message = "claimed model falsifies clause " + std::to_string(ci + 1);
            return out;
        }
    }
    return out;
}

}  // namespace tenc

#ifndef TENC_DIAG_HPP
#define TENC_DIAG_HPP

#include <string>
#include <vector>

namespace tenc {

struct SourcePos {
    int line = 0;    // 1-based; 0 means "no position"
    int column = 0;
};

struct Diagnostic {
    enum class Severity { Error, Warning };
    Severity severity = Severity::Error;
    std::string message;
    SourcePos pos;
};

using DiagList = std::vector<Diagnostic>;

inline bool has_errors(const DiagList& diags) {
    for (const auto& d : diags)
        if (d.severity == Diagnostic::Severity::Error) return true;
    return false;
}

inline std::string format_diag(const Diagnostic& d, const std::string& origin) {
    std::string s = origin;
    if (d.pos.line > 0) {
        s += ":" + std::to_string(d.pos.line) + ":" + std::to_string(d.pos.column);
    }
    s += d.severity == Diagnostic::Severity::Error ? ": error: " : ": warning: ";
    s += d.message;
    return s;
}

inline std::string format_diags(const DiagList& diags, const std::string& origin) {
    std::string s;
    for (const auto& d : diags) {
        s += format_diag(d, origin);
        s += "\n";
    }
    return s;
}

}  // namespace tenc

#endif

#include "lexer.hpp"

#include <cctype>
#include <unordered_set>

namespace tenc {

namespace {

const std::unordered_set<std::string> kKeywords = {
    "bit", "int", "void", "if", "else", "for", "return", "assert", "core_vars",
};

const std::unordered_set<std::string> kAttributes = {"__in", "__out", "__mem"};

bool ident_start(char c) { return std::isalpha((unsigned char)c) || c == '_'; }
bool ident_char(char c) { return std::isalnum((unsigned char)c) || c == '_'; }

}  // namespace

std::vector<Token> tokenize(const SourceProgram& src, DiagList& diags) {
    std::vector<Token> out;
    const std::string& s = src.text;
    size_t i = 0;
    int line = 1, col = 1;

    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n && i < s.size(); ++k, ++i) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto push = [&](Token::Kind kind, std::string lex, int l, int c, int64_t v = 0) {
        Token t;
        t.kind = kind;
        t.lexeme = std::move(lex);
        t.value = v;
        t.line = l;
        t.column = c;
        out.push_back(std::move(t));
    };

    while (i < s.size()) {
        char c = s[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < s.size() && s[i + 1] == '/') {
            while (i < s.size() && s[i] != '\n') advance(1);
            continue;
        }
        if (c == '/' && i + 1 < s.size() && s[i + 1] == '*') {
            int l = line, co = col;
            advance(2);
            bool closed = false;
            while (i < s.size()) {
                if (s[i] == '*' && i + 1 < s.size() && s[i + 1] == '/') {
                    advance(2);
                    closed = true;
                    break;
                }
                advance(1);
            }
            if (!closed)
                diags.push_back({Diagnostic::Severity::Error, "unterminated comment", {l, co}});
            continue;
        }

        int l = line, co = col;

        if (ident_start(c)) {
            size_t j = i;
            while (j < s.size() && ident_char(s[j])) ++j;
            std::string word = s.substr(i, j - i);
            advance(j - i);
            if (kAttributes.count(word))
                push(Token::Kind::Attribute, word, l, co);
            else if (kKeywords.count(word))
                push(Token::Kind::Keyword, word, l, co);
            else
                push(Token::Kind::Identifier, word, l, co);
            continue;
        }

        if (std::isdigit((unsigned char)c)) {
            size_t j = i;
            int base = 10;
            if (c == '0' && i + 1 < s.size() && (s[i + 1] == 'x' || s[i + 1] == 'X')) {
                base = 16;
                j = i + 2;
                while (j < s.size() && std::isxdigit((unsigned char)s[j])) ++j;
                if (j == i + 2) {
                    diags.push_back({Diagnostic::Severity::Error, "malformed hex literal", {l, co}});
                    advance(2);
                    continue;
                }
            } else {
                while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
            }
            std::string word = s.substr(i, j - i);
            int64_t v = 0;
            try {
                v = std::stoll(word, nullptr, base);
            } catch (...) {
                diags.push_back({Diagnostic::Severity::Error,
                                 "integer literal out of range: " + word, {l, co}});
                v = 0;
            }
            advance(j - i);
            push(Token::Kind::IntLiteral, word, l, co, v);
            continue;
        }

        auto two = [&](const char* op) {
            return i + 1 < s.size() && s[i] == op[0] && s[i + 1] == op[1];
        };
        if (two("<<") || two(">>") || two("<=") || two(">=") || two("==") || two("!=") ||
            two("&&") || two("||")) {
            std::string op = s.substr(i, 2);
            advance(2);
            push(Token::Kind::Operator, op, l, co);
            continue;
        }
        if (std::string("!~&|^<>+-*/%=").find(c) != std::string::npos) {
            advance(1);
            push(Token::Kind::Operator, std::string(1, c), l, co);
            continue;
        }
        if (std::string("(){}[];,:").find(c) != std::string::npos) {
            advance(1);
            push(Token::Kind::Punct, std::string(1, c), l, co);
            continue;
        }

        diags.push_back({Diagnostic::Severity::Error,
                         std::string("illegal character '") + c + "'", {l, co}});
        advance(1);
    }

    push(Token::Kind::EndOfFile, "<eof>", line, col);
    return out;
}

}  // namespace tenc

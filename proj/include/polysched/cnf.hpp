#pragma once

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "polysched/error.hpp"

namespace polysched {

struct Literal {
    int var = 0;  // 0-based
    bool negated = false;

    friend bool operator==(const Literal&, const Literal&) = default;
};

struct CnfFormula {
    int num_vars = 0;
    std::vector<std::vector<Literal>> clauses;

    friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

struct Assignment {
    std::vector<bool> values;  // values[i] for variable i

    bool value(const Literal& l) const { return values.at(l.var) != l.negated; }
};

inline void check_formula(const CnfFormula& f) {
    if (f.num_vars < 0) throw InvalidInput("negative variable count");
    for (std::size_t j = 0; j < f.clauses.size(); ++j) {
        const auto& c = f.clauses[j];
        if (c.empty() || c.size() > 3)
            throw InvalidInput("clause " + std::to_string(j + 1) + " must have 1 to 3 literals");
        for (const auto& l : c)
            if (l.var < 0 || l.var >= f.num_vars)
                throw InvalidInput("clause " + std::to_string(j + 1) + " uses an undeclared variable");
    }
}

inline bool satisfies(const CnfFormula& f, const Assignment& a) {
    if (a.values.size() != static_cast<std::size_t>(f.num_vars)) return false;
    for (const auto& c : f.clauses) {
        bool sat = false;
        for (const auto& l : c) sat = sat || a.value(l);
        if (!sat) return false;
    }
    return true;
}

// DIMACS CNF with at most three literals per clause. Clauses may span lines.
inline CnfFormula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool header = false;
    long declared_clauses = 0;
    CnfFormula f;
    std::vector<Literal> cur;
    int cur_line = 0;
    auto fail = [&](int ln, const std::string& msg) { return ParseError("line " + std::to_string(ln), msg); };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c") continue;
        if (tok == "%") break;
        if (tok == "p") {
            if (header) throw fail(lineno, "duplicate problem line");
            std::string fmt;
            long v = -1, c = -1;
            if (!(ls >> fmt >> v >> c) || fmt != "cnf" || v < 0 || c < 0) throw fail(lineno, "expected 'p cnf <vars> <clauses>'");
            if (ls >> tok) throw fail(lineno, "trailing tokens after problem line");
            f.num_vars = static_cast<int>(v);
            declared_clauses = c;
            header = true;
            continue;
        }
        if (!header) throw fail(lineno, "clause before the problem line");
        do {
            char* end = nullptr;
            long lit = std::strtol(tok.c_str(), &end, 10);
            if (end == tok.c_str() || *end != '\0') throw fail(lineno, "not an integer literal: '" + tok + "'");
            if (lit == 0) {
                if (cur.empty()) throw fail(lineno, "empty clause");
                f.clauses.push_back(cur);
                cur.clear();
                continue;
            }
            if (std::labs(lit) > f.num_vars) throw fail(lineno, "literal " + tok + " exceeds the declared variable count");
            if (cur.empty()) cur_line = lineno;
            cur.push_back({static_cast<int>(std::labs(lit)) - 1, lit < 0});
            if (cur.size() > 3) throw fail(cur_line, "clause has more than three literals");
        } while (ls >> tok);
    }
    if (!header) throw fail(lineno, "missing problem line");
    if (!cur.empty()) throw fail(cur_line, "clause not terminated by 0");
    if (static_cast<long>(f.clauses.size()) != declared_clauses)
        throw fail(lineno, "expected " + std::to_string(declared_clauses) + " clauses, found " +
                               std::to_string(f.clauses.size()));
    return f;
}

inline std::string to_dimacs(const CnfFormula& f) {
    std::ostringstream out;
    out << "p cnf " << f.num_vars << " " << f.clauses.size() << "\n";
    for (const auto& c : f.clauses) {
        for (const auto& l : c) out << (l.negated ? "-" : "") << l.var + 1 << " ";
        out << "0\n";
    }
    return out.str();
}

// One signed variable per line ("3", "-2", "+1"); blank lines and lines
// starting with 'c' or '#' are ignored. Must cover every variable once.
inline Assignment parse_assignment(const std::string& text, int num_vars) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<int> state(num_vars, -1);
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == 'c' || tok[0] == '#') continue;
        char* end = nullptr;
        long v = std::strtol(tok.c_str(), &end, 10);
        if (end == tok.c_str() || *end != '\0' || v == 0)
            throw ParseError("line " + std::to_string(lineno), "expected a signed variable, got '" + tok + "'");
        if (ls >> tok) throw ParseError("line " + std::to_string(lineno), "one literal per line");
        if (std::labs(v) > num_vars)
            throw ParseError("line " + std::to_string(lineno), "variable " + std::to_string(std::labs(v)) + " out of range");
        int& s = state[std::labs(v) - 1];
        if (s >= 0) throw ParseError("line " + std::to_string(lineno), "variable assigned twice");
        s = v > 0 ? 1 : 0;
    }
    Assignment a;
    for (int i = 0; i < num_vars; ++i) {
        if (state[i] < 0) throw ParseError("", "variable " + std::to_string(i + 1) + " has no value");
        a.values.push_back(state[i] == 1);
    }
    return a;
}

}  // namespace polysched

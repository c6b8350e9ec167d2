#pragma once

#include <cstddef>
#include <vector>

#include "polysched/rational.hpp"

namespace polysched {

enum class Sense { LessEq, GreaterEq, Equal };

// maximize objective.x  subject to  rows[i].x (sense[i]) rhs[i],  x >= 0
struct LinearProgram {
    std::size_t num_vars = 0;
    std::vector<Rational> objective;
    std::vector<std::vector<Rational>> rows;
    std::vector<Sense> senses;
    std::vector<Rational> rhs;

    void add_row(std::vector<Rational> coeffs, Sense s, Rational b) {
        rows.push_back(std::move(coeffs));
        senses.push_back(s);
        rhs.push_back(std::move(b));
    }
};

struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Infeasible;
    Rational value{0};
    std::vector<Rational> x;
    std::size_t pivots = 0;
};

namespace detail {

// Dense tableau, two phases, Bland's rule throughout (no cycling).
class Tableau {
public:
    std::vector<std::vector<Rational>> a;  // rows x (cols + 1), last column is the rhs
    std::vector<std::size_t> basis;
    std::size_t cols = 0;
    std::size_t pivots = 0;

    void pivot(std::size_t r, std::size_t c, std::vector<Rational>& obj) {
        ++pivots;
        auto& pr = a[r];
        const Rational p = pr[c];
        for (auto& v : pr) v /= p;
        auto eliminate = [&](std::vector<Rational>& row) {
            if (row[c] == 0) return;
            const Rational f = row[c];
            for (std::size_t j = 0; j <= cols; ++j)
                if (pr[j] != 0) row[j] -= f * pr[j];
        };
        for (std::size_t i = 0; i < a.size(); ++i)
            if (i != r) eliminate(a[i]);
        eliminate(obj);
        basis[r] = c;
    }

    // obj[j] are reduced costs of a maximisation; negative means improving.
    // Returns false if unbounded.
    bool optimise(std::vector<Rational>& obj, const std::vector<char>& allowed) {
        for (;;) {
            std::size_t enter = cols;
            for (std::size_t j = 0; j < cols; ++j)
                if (allowed[j] && obj[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter == cols) return true;
            std::size_t leave = a.size();
            Rational best;
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i][enter] <= 0) continue;
                Rational ratio = a[i][cols] / a[i][enter];
                if (leave == a.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == a.size()) return false;
            pivot(leave, enter, obj);
        }
    }

    // Reduced-cost row for maximising cost over all columns.
    std::vector<Rational> objective_row(const std::vector<Rational>& cost) const {
        std::vector<Rational> obj(cols + 1, Rational(0));
        for (std::size_t j = 0; j < cols; ++j) obj[j] = -cost[j];
        for (std::size_t i = 0; i < a.size(); ++i) {
            const Rational& cb = cost[basis[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j <= cols; ++j)
                if (a[i][j] != 0) obj[j] += cb * a[i][j];
        }
        return obj;
    }
};

}  // namespace detail

inline LpResult solve_lp(const LinearProgram& lp) {
    const std::size_t n = lp.num_vars, m = lp.rows.size();
    if (lp.objective.size() != n || lp.senses.size() != m || lp.rhs.size() != m)
        throw InvalidInput("linear program dimensions disagree");

    // Column layout: structural | slack/surplus | artificial.
    std::size_t n_slack = 0, n_art = 0;
    std::vector<Sense> sense = lp.senses;
    std::vector<char> flip(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        if (lp.rows[i].size() != n) throw InvalidInput("linear program row has the wrong width");
        if (lp.rhs[i] < 0) {
            flip[i] = 1;
            if (sense[i] == Sense::LessEq) sense[i] = Sense::GreaterEq;
            else if (sense[i] == Sense::GreaterEq) sense[i] = Sense::LessEq;
        }
        if (sense[i] != Sense::Equal) ++n_slack;
        if (sense[i] != Sense::LessEq) ++n_art;
    }
    detail::Tableau t;
    t.cols = n + n_slack + n_art;
    t.a.assign(m, std::vector<Rational>(t.cols + 1, Rational(0)));
    t.basis.assign(m, 0);
    std::size_t s = n, art = n + n_slack;
    for (std::size_t i = 0; i < m; ++i) {
        auto& row = t.a[i];
        for (std::size_t j = 0; j < n; ++j) row[j] = flip[i] ? Rational(-lp.rows[i][j]) : lp.rows[i][j];
        row[t.cols] = flip[i] ? Rational(-lp.rhs[i]) : lp.rhs[i];
        if (sense[i] == Sense::LessEq) {
            row[s] = 1;
            t.basis[i] = s++;
        } else {
            if (sense[i] == Sense::GreaterEq) row[s++] = -1;
            row[art] = 1;
            t.basis[i] = art++;
        }
    }

    LpResult res;
    std::vector<char> allowed(t.cols, 1);
    if (n_art > 0) {
        std::vector<Rational> cost(t.cols, Rational(0));
        for (std::size_t j = n + n_slack; j < t.cols; ++j) cost[j] = -1;
        auto obj = t.objective_row(cost);
        t.optimise(obj, allowed);
        if (obj[t.cols] != 0) {
            res.status = LpResult::Status::Infeasible;
            res.pivots = t.pivots;
            return res;
        }
        // Drive zero-valued artificials out of the basis; drop redundant rows.
        for (std::size_t i = 0; i < t.a.size();) {
            if (t.basis[i] < n + n_slack) {
                ++i;
                continue;
            }
            std::size_t c = 0;
            while (c < n + n_slack && t.a[i][c] == 0) ++c;
            if (c == n + n_slack) {
                t.a.erase(t.a.begin() + static_cast<std::ptrdiff_t>(i));
                t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
                continue;
            }
            t.pivot(i, c, obj);
            ++i;
        }
        for (std::size_t j = n + n_slack; j < t.cols; ++j) allowed[j] = 0;
    }

    std::vector<Rational> cost(t.cols, Rational(0));
    for (std::size_t j = 0; j < n; ++j) cost[j] = lp.objective[j];
    auto obj = t.objective_row(cost);
    const bool bounded = t.optimise(obj, allowed);
    res.pivots = t.pivots;
    if (!bounded) {
        res.status = LpResult::Status::Unbounded;
        return res;
    }
    res.status = LpResult::Status::Optimal;
    res.value = obj[t.cols];
    res.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < t.a.size(); ++i)
        if (t.basis[i] < n) res.x[t.basis[i]] = t.a[i][t.cols];
    return res;
}

}  // namespace polysched

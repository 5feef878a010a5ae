#include "ggism/two_sat.hpp"

#include "ggism/instance.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace ggism {

namespace {

void validate(const TwoSatInstance& ts) {
    for (const auto& [a, b] : ts.clauses)
        if (a.var < 1 || a.var > ts.n_v || b.var < 1 || b.var > ts.n_v)
            throw std::invalid_argument("2-SAT clause references an unknown variable");
}

}  // namespace

TwoSatInstance parse_two_sat(std::istream& in) {
    TwoSatInstance ts;
    bool header_seen = false;
    int declared_clauses = 0;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto fail = [&](const std::string& what) {
            throw ParseError("line " + std::to_string(lineno) + ": " + what);
        };
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;  // blank line
        if (first == "c") continue;    // comment
        if (first == "p") {
            std::string kind;
            if (!(ls >> kind >> ts.n_v >> declared_clauses) || kind != "cnf")
                fail("expected 'p cnf <variables> <clauses>'");
            if (ts.n_v < 1) fail("variable count must be positive");
            header_seen = true;
            continue;
        }
        if (!header_seen) fail("clause before 'p cnf' header");
        std::vector<Literal> lits;
        int value = 0;
        std::istringstream cs(line);
        while (cs >> value && value != 0)
            lits.push_back(Literal{std::abs(value), value < 0});
        if (value != 0) fail("clause must end with 0");
        if (lits.empty() || lits.size() > 2) fail("clauses must have one or two literals");
        for (const auto& lit : lits)
            if (lit.var < 1 || lit.var > ts.n_v)
                fail("clause references a variable beyond the declared count");
        if (lits.size() == 1) lits.push_back(lits[0]);
        ts.clauses.emplace_back(lits[0], lits[1]);
    }
    if (!header_seen) throw ParseError("missing 'p cnf' header");
    if (declared_clauses != static_cast<int>(ts.clauses.size()))
        throw ParseError("clause count disagrees with the 'p cnf' header");
    validate(ts);
    return ts;
}

TwoSatInstance parse_two_sat(const std::string& text) {
    std::istringstream in(text);
    return parse_two_sat(in);
}

std::optional<TwoSatInstance> preprocess_2sat(const TwoSatInstance& raw) {
    validate(raw);
    // Literal state per clause slot: keep, or already-forced false (slot
    // replaced by its partner when the clause is kept as a unit).
    std::vector<std::pair<Literal, Literal>> clauses = raw.clauses;
    bool changed = true;
    while (changed) {
        changed = false;
        // Distinct-clause presence count per variable.
        std::vector<int> presence(raw.n_v + 1, 0);
        for (const auto& [a, b] : clauses) {
            presence[a.var]++;
            if (b.var != a.var) presence[b.var]++;
        }
        int victim = 0;
        for (int v = 1; v <= raw.n_v && !victim; ++v)
            if (presence[v] == 1) victim = v;
        if (!victim) break;
        // Fix the variable so its pure-polarity occurrences become false:
        // true when it appears negated, false otherwise.
        bool value = false;
        for (const auto& [a, b] : clauses)
            if ((a.var == victim && a.negated) || (b.var == victim && b.negated)) value = true;
        std::vector<std::pair<Literal, Literal>> kept;
        for (const auto& [a, b] : clauses) {
            if (a.var != victim && b.var != victim) {
                kept.emplace_back(a, b);
                continue;
            }
            auto truth = [&](const Literal& l) { return value != l.negated; };
            if ((a.var == victim && truth(a)) || (b.var == victim && truth(b)))
                continue;  // constantly satisfied (mixed polarities): drop
            if (a.var == victim && b.var == victim) continue;  // both false: drop
            const Literal& rest = a.var == victim ? b : a;
            kept.emplace_back(rest, rest);  // unit clause, literal duplicated
        }
        clauses = std::move(kept);
        changed = true;
    }
    if (clauses.empty()) return std::nullopt;
    // Renumber surviving variables compactly, preserving ascending order.
    std::vector<char> present(raw.n_v + 1, 0);
    for (const auto& [a, b] : clauses) present[a.var] = present[b.var] = 1;
    std::vector<int> renum(raw.n_v + 1, 0);
    int next = 0;
    for (int v = 1; v <= raw.n_v; ++v)
        if (present[v]) renum[v] = ++next;
    TwoSatInstance out;
    out.n_v = next;
    out.clauses.reserve(clauses.size());
    for (const auto& [a, b] : clauses)
        out.clauses.emplace_back(Literal{renum[a.var], a.negated}, Literal{renum[b.var], b.negated});
    return out;
}

int count_satisfied(const TwoSatInstance& ts, const std::vector<bool>& assignment) {
    if (static_cast<int>(assignment.size()) != ts.n_v + 1)
        throw std::invalid_argument("count_satisfied: assignment must have n_v+1 entries (1-based)");
    int satisfied = 0;
    for (const auto& [a, b] : ts.clauses)
        if (assignment[a.var] != a.negated || assignment[b.var] != b.negated) ++satisfied;
    return satisfied;
}

std::pair<int, std::vector<bool>> min_satisfied_brute(const TwoSatInstance& ts) {
    validate(ts);
    if (ts.n_v > 25) throw std::invalid_argument("min_satisfied_brute: instance too large");
    int best = static_cast<int>(ts.clauses.size()) + 1;
    std::vector<bool> best_assign;
    for (unsigned long mask = 0; mask < (1ul << ts.n_v); ++mask) {
        std::vector<bool> assign(ts.n_v + 1, false);
        for (int v = 1; v <= ts.n_v; ++v) assign[v] = (mask >> (v - 1)) & 1;
        int sat = count_satisfied(ts, assign);
        if (sat < best) {
            best = sat;
            best_assign = assign;
        }
    }
    return {best, best_assign};
}

}  // namespace ggism

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ggism {

/// A variable (1-based) or its negation.
struct Literal {
    int var = 0;
    bool negated = false;
    bool operator==(const Literal&) const = default;
};

/// A 2-SAT instance whose measure is the number of satisfied clauses, to be
/// minimized. Unit clauses are stored with the literal duplicated.
struct TwoSatInstance {
    int n_v = 0;
    std::vector<std::pair<Literal, Literal>> clauses;
};

/// DIMACS-CNF restricted to clauses of one or two literals:
///   c comment
///   p cnf <variables> <clauses>
///   <lit> [<lit>] 0
TwoSatInstance parse_two_sat(std::istream& in);
TwoSatInstance parse_two_sat(const std::string& text);

/// Normal form for the reduction, iterated to a fixpoint: a variable present
/// in only one clause is fixed (true when its occurrences there are negated,
/// false otherwise, so its literals become false) and removed; clauses left
/// with no satisfiable literal are dropped; remaining variables are
/// renumbered compactly in order. nullopt when no clause survives.
std::optional<TwoSatInstance> preprocess_2sat(const TwoSatInstance& raw);

/// Number of clauses satisfied by `assignment` (index = variable, 1-based).
int count_satisfied(const TwoSatInstance& ts, const std::vector<bool>& assignment);

/// Exhaustive Min 2-SAT oracle: the minimum number of satisfied clauses over
/// all assignments, with a deterministic witness assignment.
std::pair<int, std::vector<bool>> min_satisfied_brute(const TwoSatInstance& ts);

}  // namespace ggism

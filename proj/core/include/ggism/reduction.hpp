#pragma once

#include "ggism/disutility.hpp"
#include "ggism/instance.hpp"
#include "ggism/rational.hpp"
#include "ggism/two_sat.hpp"
#include "ggism/weights.hpp"

#include <utility>
#include <vector>

namespace ggism {

/// A marriage instance whose stable matchings are in bijection with the truth
/// assignments of a Min 2-SAT instance: one rotation per variable, no
/// precedence, and a disutility/weight schedule under which the GGI value
/// counts unsatisfied clauses exactly.
struct ReductionOutput {
    Instance instance;          // n = 4 * n_c agents per side
    DisutilityFunction dfun;    // exact rational table, d(2j+2) = j+1+n_c^{-j}
    GgiWeights weights;         // 2*n_c positive entries, then zeros
    int n_v = 0;
    int n_c = 0;
    /// variable i (1-based) <-> rotation variable_rotation_map[i].
    std::vector<int> variable_rotation_map;
    /// Per clause (0-based), the two decisive agents as agent codes (men
    /// 1..n, women n+1..2n), in clause-literal order. A decisive agent sits
    /// at rank rk+ = 2j+1 exactly when its literal is false.
    std::vector<std::pair<int, int>> decisive_agents;
    Rational delta_u;  // GGI when every clause has both literals true
    Rational delta_l;  // = delta_u - n_c * (n_c + 1): every clause unsatisfied
};

/// Builds the instance for a preprocessed 2-SAT input (every variable in at
/// least two clauses, exactly two literals per clause, n_c >= 2). Runs a
/// structural self-check (rotation count, edgeless order, one rotation per
/// variable) and throws std::logic_error if the generated instance deviates.
ReductionOutput reduce(const TwoSatInstance& ts);

/// Decoder: the number of unsatisfied clauses of the assignment
/// behind a stable matching with the given exact GGI value, namely
/// floor((delta_u - ggi_value) / (n_c + 1)).
int unsat_count_from_ggi(const ReductionOutput& out, const Rational& ggi_value);

}  // namespace ggism

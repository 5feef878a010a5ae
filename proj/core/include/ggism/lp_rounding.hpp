#pragma once

#include "ggism/disutility.hpp"
#include "ggism/instance.hpp"
#include "ggism/lp.hpp"
#include "ggism/matching.hpp"
#include "ggism/rotations.hpp"
#include "ggism/weights.hpp"

#include <map>
#include <utility>
#include <vector>

namespace ggism {

/// The linear relaxation of the fair-marriage program: variables y per
/// rotation (in [0,1]), x per stable pair, d per agent, plus the auxiliaries
/// t_k / u_{i,k} that linearize the GGI objective. Keeps the index maps
/// needed to read a solution back out of the solver.
class Relaxation {
  public:
    Relaxation(const Instance& inst, const RotationPoset& poset, const DisutilityFunction& dfun,
               const GgiWeights& weights);

    const LinearProgram& lp() const { return lp_; }
    int n() const { return n_; }
    int num_rotations() const { return static_cast<int>(y_idx_.size()); }

    int y_index(int rotation) const { return y_idx_.at(rotation); }
    /// Stable pair (m, w) must belong to Gamma.
    int x_index(int man, int woman) const { return x_idx_.at({man, woman}); }
    /// Agent codes: men 1..n, women n+1..2n.
    int d_index(int agent) const { return d_idx_.at(agent - 1); }
    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

    /// Copy of the model with y pinned to the indicator of the closed set R;
    /// its optimum is the exact GGI of the corresponding stable matching.
    LinearProgram with_fixed_rotations(const ClosedSet& r) const;

  private:
    LinearProgram lp_;
    int n_;
    std::vector<int> y_idx_;
    std::map<std::pair<int, int>, int> x_idx_;
    std::vector<int> d_idx_;
    std::vector<std::pair<int, int>> pairs_;
};

/// Optimum of the relaxation. Values are exact rationals regardless of the
/// solve mode (doubles being dyadic rationals, the conversion is lossless).
struct FractionalSolution {
    std::vector<Rational> y_hat;                   // per rotation id
    std::map<std::pair<int, int>, Rational> x_hat; // per stable pair
    std::vector<Rational> d_hat;                   // agent code a -> d_hat[a-1]
    Rational objective;
};

/// Builds the relaxation for an instance; the poset is constructed
/// internally. Use the Relaxation constructor directly to share a poset.
Relaxation build_relaxation(const Instance& inst, const DisutilityFunction& dfun,
                            const GgiWeights& weights);

/// Solves the relaxation (floating point by default; exact rational simplex
/// when exact = true) and maps the solver values back to y/x/d form.
FractionalSolution solve_lp(const Relaxation& rel, bool exact = false);

/// The rotations rounded up: { rho : y_hat(rho) >= 1/2 }, where values within
/// 1e-9 below 1/2 are snapped up so float noise cannot flip the inclusive
/// threshold. The result is closed whenever y_hat respects the precedence
/// constraints.
ClosedSet rounded_set(const RotationPoset& p, const std::vector<Rational>& y_hat);

/// Rounding step of the approximation: eliminate exactly the rotations with
/// y_hat >= 1/2 and return the resulting stable matching.
Matching round_solution(const RotationPoset& p, const Instance& inst,
                        const FractionalSolution& f);

struct ApproxResult {
    Matching matching;     // the rounded stable matching
    Rational value;        // its true GGI under the given weights
    Rational lp_bound;     // LP optimum: a lower bound on the best GGI
    ClosedSet closed_set;  // rotations eliminated to reach `matching`
    FractionalSolution fractional;
};

/// Full 2-approximation pipeline: build the relaxation, solve, round.
/// Guarantees value <= 2 * lp_bound <= 2 * OPT.
ApproxResult approx_solve(const Instance& inst, const DisutilityFunction& dfun,
                          const GgiWeights& weights, bool exact = false);

}  // namespace ggism

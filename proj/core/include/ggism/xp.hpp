#pragma once

#include "ggism/disutility.hpp"
#include "ggism/instance.hpp"
#include "ggism/matching.hpp"
#include "ggism/rotations.hpp"
#include "ggism/weights.hpp"

#include <optional>
#include <set>
#include <vector>

namespace ggism {

/// One entry of a sorted dissatisfaction profile: `agent` (agent codes: men
/// 1..n, women n+1..2n) is matched to `partner` (a plain 1..n id on the
/// opposite side) at dissatisfaction dis = d(rank(agent, partner)).
struct Triple {
    Rational dis;
    int agent = 0;
    int partner = 0;

    bool operator==(const Triple&) const = default;
    /// Orders by dissatisfaction descending (profile order), then by ids.
    bool operator<(const Triple& o) const {
        if (dis != o.dis) return dis > o.dis;
        if (agent != o.agent) return agent < o.agent;
        return partner < o.partner;
    }
};

/// A prefix of some stable matching's profile sorted by nonincreasing
/// dissatisfaction: agents pairwise distinct, dis entries nonincreasing.
using TripleVector = std::vector<Triple>;

/// Rotation sets a profile prefix pins down: in_set must be eliminated
/// (closed under ancestors), out_set must not be (closed under descendants),
/// and the two are disjoint.
struct RotationConstraints {
    ClosedSet in_set;
    std::vector<int> out_set;  // sorted ascending
};

/// Immutable tables shared by all expansions on one instance: the poset,
/// per-rotation ancestor/descendant closures, and the per-rotation extreme
/// dissatisfactions d_max^w (a woman of the rotation before elimination) and
/// d_max^m (a man after elimination) used by the pruning thresholds.
class XpContext {
  public:
    XpContext(const Instance& inst, const RotationPoset& poset, const DisutilityFunction& dfun);

    const Instance& inst() const { return *inst_; }
    const RotationPoset& poset() const { return *poset_; }
    const DisutilityFunction& dfun() const { return *dfun_; }
    int n() const { return inst_->n(); }

    const std::vector<int>& anc_incl(int rho) const { return anc_incl_[rho]; }
    const std::vector<int>& desc_incl(int rho) const { return desc_incl_[rho]; }
    const Rational& dmax_w(int rho) const { return dmax_w_[rho]; }
    const Rational& dmax_m(int rho) const { return dmax_m_[rho]; }

    /// Dissatisfaction of an agent (by code) matched with `partner`.
    Rational dis_of(int agent, int partner) const;

  private:
    const Instance* inst_;
    const RotationPoset* poset_;
    const DisutilityFunction* dfun_;
    std::vector<std::vector<int>> anc_incl_, desc_incl_;
    std::vector<Rational> dmax_w_, dmax_m_;
};

/// The constraint fold of a profile prefix v: used agents removed, get/break
/// rotations of each fixed pair folded into in/out with their closures, and
/// the d_min(v) thresholds applied. nullopt when the fold is contradictory
/// (no stable matching is compatible with v).
struct PrefixState {
    RotationConstraints constraints;
    std::vector<int> remaining;        // agent codes not used by v, sorted
    std::optional<Rational> d_min;     // dis of v's last entry; nullopt for v = ()
};
std::optional<PrefixState> build_prefix_state(const TripleVector& v, const XpContext& ctx);

/// All triples (d, w, m) a woman in `remaining` can contribute at profile
/// position k in a stable matching obeying c. Walks upward from the matching
/// of c.in_set, breaking the current position-k pairs until one of them is
/// unbreakable within c.
std::set<Triple> next_women(const RotationConstraints& c, int k, const std::vector<int>& remaining,
                            const XpContext& ctx);

/// Mirror image for men, walking downward from the matching that eliminates
/// everything outside c.out_set.
std::set<Triple> next_men(const RotationConstraints& c, int k, const std::vector<int>& remaining,
                          const XpContext& ctx);

/// Expansion step: folds v (k-1 entries) into a PrefixState and returns
/// next_women plus next_men, or the empty set when v is contradictory.
std::set<Triple> next_triples(const TripleVector& v, int k, const XpContext& ctx);

/// All K-prefixes of sorted stable-matching profiles, each realized by at
/// least one stable matching, without duplicates; sorted lexicographically.
/// `threads` > 1 fans the per-prefix expansions out level by level; results
/// are identical to the sequential run.
std::vector<TripleVector> enumerate_topk(const Instance& inst, const DisutilityFunction& dfun,
                                         int K, int threads = 1);

struct XpResult {
    Matching matching;  // witness: the matching of the optimal prefix's in_set
    Rational value;     // its GGI, the exact optimum
};

/// Exact GGI minimizer, polynomial for fixed K = number of positive weights.
/// Explores prefixes level by level, merging prefixes that pin down the same
/// (agents used, d_min, in/out rotations) state and keeping per state the
/// cheapest weighted partial sum, which is all a continuation depends on.
XpResult xp_solve(const Instance& inst, const DisutilityFunction& dfun, const GgiWeights& weights,
                  int threads = 1);

}  // namespace ggism

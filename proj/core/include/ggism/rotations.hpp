#pragma once

#include "ggism/disutility.hpp"
#include "ggism/gale_shapley.hpp"
#include "ggism/instance.hpp"
#include "ggism/matching.hpp"
#include "ggism/rational.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ggism {

/// A cyclic sequence of (man, woman) pairs exposed in some shortlists:
/// w_k is the head of m_k's list and w_{k+1 mod r} is his second entry.
/// Eliminating the rotation moves every m_k to w_{k+1}, producing the next
/// stable matching down the lattice. Pair order is canonical: the cycle is
/// rotated so the smallest man index comes first, making rotation identity
/// independent of where a cycle walk happened to start.
struct Rotation {
    int id = -1;
    std::vector<std::pair<int, int>> pairs;

    int size() const { return static_cast<int>(pairs.size()); }
    bool same_cycle(const Rotation& other) const { return pairs == other.pairs; }
};

/// A set of rotation ids, kept sorted ascending. Closedness (every
/// predecessor of a member is a member) is validated by the operations that
/// require it, not by the container.
using ClosedSet = std::vector<int>;

/// Per-rotation, per-agent disutility deltas: eliminating rho changes agent
/// a's disutility by -omega(a, rho). Men's weights are always <= 0 (they get
/// worse), women's always >= 0; zero for agents not in the rotation.
struct RotationWeights {
    // [rotation id][agent index 1..n]
    std::vector<std::vector<Rational>> men;
    std::vector<std::vector<Rational>> women;
};

/// All rotations of an instance, their precedence partial order, and the
/// rho_get/rho_break maps over the stable-pair set Gamma. Closed subsets of
/// the order are in one-to-one correspondence with the stable matchings.
class RotationPoset {
  public:
    int num_rotations() const { return static_cast<int>(rotations_.size()); }
    const Rotation& rotation(int id) const { return rotations_.at(id); }
    const std::vector<Rotation>& rotations() const { return rotations_; }

    /// Strict precedence: a must be eliminated before b.
    bool precedes(int a, int b) const { return precedes_[a][b] != 0; }
    /// Transitive reduction of the precedence relation.
    const std::vector<std::pair<int, int>>& immediate_edges() const { return immediate_edges_; }
    /// Ids of immediate predecessors of id.
    std::vector<int> immediate_predecessors(int id) const;

    /// The stable pairs (those appearing in at least one stable matching),
    /// sorted lexicographically.
    const std::vector<std::pair<int, int>>& stable_pairs() const { return gamma_; }

    /// Rotation whose elimination creates the pair (man, woman); absent iff
    /// the pair belongs to the man-optimal matching.
    std::optional<int> get_rotation(int man, int woman) const;
    /// Rotation whose elimination breaks the pair; absent iff the pair
    /// belongs to the woman-optimal matching.
    std::optional<int> break_rotation(int man, int woman) const;
    /// Id of the rotation with this canonical pair cycle, if any.
    std::optional<int> id_of_cycle(const std::vector<std::pair<int, int>>& pairs) const;

    const Matching& man_optimal_matching() const { return *man_opt_; }
    const Matching& woman_optimal_matching() const { return *woman_opt_; }
    /// The fully reduced shortlists the poset was built from.
    const Shortlists& initial_shortlists() const { return shortlists_; }

    bool is_closed(const ClosedSet& set) const;
    /// All predecessors of id (ancestors), sorted; optionally including id.
    ClosedSet ancestors(int id, bool inclusive) const;
    /// All successors of id (descendants), sorted; optionally including id.
    ClosedSet descendants(int id, bool inclusive) const;

    /// Graphviz digraph of the transitive reduction.
    std::string to_dot() const;
    /// Rotations, edges and get/break maps as a JSON document.
    std::string to_json() const;

  private:
    friend RotationPoset build_poset(const Instance& inst);

    std::vector<Rotation> rotations_;
    std::vector<std::vector<char>> precedes_;
    std::vector<std::pair<int, int>> immediate_edges_;
    std::vector<std::pair<int, int>> gamma_;
    std::map<std::pair<int, int>, int> get_map_, break_map_;
    std::map<std::vector<std::pair<int, int>>, int> id_of_;
    std::optional<Matching> man_opt_, woman_opt_;
    Shortlists shortlists_;
};

/// All rotations exposed in the given shortlists: every maximal head/second
/// cycle. Empty exactly when the head matching is the woman-optimal one.
std::vector<Rotation> find_exposed(const Shortlists& s);

/// Eliminates an exposed rotation: each woman w_k strikes every man below
/// m_{k-1} from her list (mirrored in the men's lists), so each m_k's head
/// advances to w_{k+1}. Throws std::invalid_argument if rho is not exposed.
Shortlists eliminate(const Shortlists& s, const Rotation& rho);
void eliminate_in_place(Shortlists& s, const Rotation& rho);

/// Discovers all rotations by greedy exhaustive elimination from the
/// man-optimal shortlists, then derives precedence with a blocking probe per
/// rotation (forbid it, eliminate everything else exposable; what never
/// becomes exposed is exactly its strict descendant set). Rotation ids are
/// assigned in discovery order, which is a linear extension of the poset.
RotationPoset build_poset(const Instance& inst);

/// The stable matching corresponding to a closed set, reconstructed from the
/// get/break maps (x = 1 on a stable pair iff its creating rotation is in R
/// and its breaking rotation is not). Throws if R is not closed.
Matching matching_of_closed_set(const RotationPoset& p, const Instance& inst, const ClosedSet& R);

/// Same matching obtained the long way: sequentially eliminating the members
/// of R from the initial shortlists. Kept public as an independent route so
/// tests can confirm the two constructions agree.
Matching matching_by_elimination(const RotationPoset& p, const Instance& inst, const ClosedSet& R);

/// Streams every closed set exactly once (depth-first over ids in topological
/// order, exclude-before-include) with its stable matching. The callback may
/// return false to stop early. The man-optimal matching (empty set) comes
/// first, the woman-optimal (full set) last.
void enumerate_stable(const RotationPoset& p, const Instance& inst,
                      const std::function<bool(const ClosedSet&, const Matching&)>& visit);

/// Convenience collector for the full enumeration.
std::vector<std::pair<ClosedSet, Matching>> enumerate_stable(const RotationPoset& p,
                                                             const Instance& inst);

/// omega tables: for rotation rho = (m_0,w_0),...,(m_{r-1},w_{r-1}),
///   omega_men[rho][m_k]   = d(rk(m_k,w_k)) - d(rk(m_k,w_{k+1}))  (<= 0)
///   omega_women[rho][w_k] = d(rk(w_k,m_k)) - d(rk(w_k,m_{k-1}))  (>= 0)
/// so that for any closed set R, the disutility of agent a in the
/// corresponding matching is d(a, man-optimal) - sum_{rho in R} omega(a, rho).
RotationWeights rotation_weights(const RotationPoset& p, const Instance& inst,
                                 const DisutilityFunction& dfun);

}  // namespace ggism

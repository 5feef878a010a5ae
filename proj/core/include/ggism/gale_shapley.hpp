#pragma once

#include "ggism/instance.hpp"
#include "ggism/matching.hpp"

#include <vector>

namespace ggism {

/// Preference lists reduced by the extended Gale-Shapley deletions. Heads of
/// the men's lists give the man-optimal matching; the last man on each
/// woman's list is her man-optimal partner. Symmetric: w is on m's list iff
/// m is on w's list; order always follows the original preferences.
struct Shortlists {
    std::vector<std::vector<int>> men;    // men[i]: woman indices, best first (slot 0 empty)
    std::vector<std::vector<int>> women;  // women[j]: man indices, best first

    bool operator==(const Shortlists&) const = default;

    int n() const { return static_cast<int>(men.size()) - 1; }
    /// Matching each man with the head of his shortlist.
    Matching head_matching() const;
};

/// Proposal scheduling for the free-men pool. The reduced shortlists do not
/// depend on this; having two lets tests demonstrate that.
enum class ProposalOrder { fifo, lifo };

/// Man-proposing extended Gale-Shapley with eager deletions: when a woman
/// accepts a proposer, every worse man is struck from her list (and she from
/// theirs). Returns the man-optimal stable matching and the reduced
/// shortlists that seed rotation discovery. O(n^2) proposals.
std::pair<Matching, Shortlists> man_optimal(const Instance& inst,
                                            ProposalOrder order = ProposalOrder::fifo);

/// Gale-Shapley with the roles of men and women reversed.
Matching woman_optimal(const Instance& inst, ProposalOrder order = ProposalOrder::fifo);

}  // namespace ggism

#pragma once

#include "ggism/disutility.hpp"
#include "ggism/instance.hpp"
#include "ggism/rational.hpp"
#include "ggism/weights.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ggism {

/// A perfect man-woman assignment. Stability is a checkable property, not an
/// invariant of the type.
class Matching {
  public:
    /// partner_of_man maps man -> woman, either as n entries (men 1..n in
    /// order) or n+1 entries with slot 0 ignored; must be a permutation.
    explicit Matching(std::vector<int> partner_of_man);

    int n() const { return n_; }
    int wife_of(int man) const { return wife_[man]; }
    int husband_of(int woman) const { return husband_[woman]; }

    bool operator==(const Matching& other) const { return wife_ == other.wife_; }

    /// Pairs (man, woman) with men ascending.
    std::vector<std::pair<int, int>> pairs() const;

  private:
    int n_;
    std::vector<int> wife_, husband_;  // inverse permutations, 1-based
};

/// Disutility vector layout: positions 1..n are men m_1..m_n, n+1..2n are
/// women w_1..w_n, so N = 2n components.
using DisutilityVector = std::vector<Rational>;

/// True iff no man-woman pair prefers each other to their assigned partners.
bool is_stable(const Instance& inst, const Matching& m);

/// The first blocking pair (man-major scan order), if any. Used both for
/// diagnostics and as an independent second stability implementation.
std::optional<std::pair<int, int>> find_blocking_pair(const Instance& inst, const Matching& m);

/// (d(m_1,x),...,d(m_n,x),d(w_1,x),...,d(w_n,x)).
DisutilityVector disutility_vector(const Instance& inst, const DisutilityFunction& dfun,
                                   const Matching& m);

/// GGI_lambda(v) = sum_i lambda_i * v-sorted-nonincreasing_i.
/// Requires |v| = |lambda|.
Rational ggi(const GgiWeights& weights, const DisutilityVector& v);

/// Partial evaluation: sum of the k largest components weighted by the first k
/// weights. Used by the exact enumeration where only K weights are non-zero.
Rational ggi_topk(const GgiWeights& weights, std::vector<Rational> top, int k);

enum class Criterion { utilitarian, egalitarian, sex_equal, balanced, ggi };

/// Evaluates a matching under the chosen aggregate of agent disutilities:
/// utilitarian = sum, egalitarian = max, sex_equal = |men sum - women sum|,
/// balanced = max(men sum, women sum), ggi = GGI with the given weights
/// (required iff criterion == ggi).
Rational evaluate(Criterion criterion, const Instance& inst, const DisutilityFunction& dfun,
                  const Matching& m, const GgiWeights* weights = nullptr);

/// JSON {"pairs":[[m,w],...]} with men ascending.
std::string matching_to_json(const Matching& m);
/// Parses the same shape; validates a permutation of the expected size.
Matching matching_from_json(const std::string& text, int n);

}  // namespace ggism

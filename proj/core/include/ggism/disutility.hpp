#pragma once

#include "ggism/rational.hpp"

#include <vector>

namespace ggism {

/// Strictly increasing map from partner rank (1-based) to dissatisfaction.
/// Three kinds: identity d(i)=i, squared d(i)=(i-1)^2, and an explicit table
/// of exact rationals. Tables are typically provisioned for ranks 1..2n so the
/// same function serves both square instances and reduction instances whose
/// agents only ever match within the first 2n_c+2 ranks.
class DisutilityFunction {
  public:
    enum class Kind { identity, squared, table };

    static DisutilityFunction identity();
    static DisutilityFunction squared();
    /// values[k] is d(k+1); must be nonnegative and strictly increasing.
    static DisutilityFunction table(std::vector<Rational> values);

    Kind kind() const { return kind_; }

    /// d(rank); throws std::out_of_range for table lookups past the table end.
    Rational operator()(int rank) const;

    /// Largest valid rank (INT_MAX for the closed-form kinds).
    int domain_size() const;

    const std::vector<Rational>& table_values() const { return table_; }

  private:
    explicit DisutilityFunction(Kind kind) : kind_(kind) {}
    Kind kind_;
    std::vector<Rational> table_;
};

}  // namespace ggism

#pragma once

#include "ggism/rational.hpp"

#include <vector>

namespace ggism {

/// A nonincreasing, nonnegative GGI weight vector lambda of length N (one
/// weight per sorted-disutility position). K = number of leading non-zero
/// weights is cached: it parametrizes the exact enumeration algorithm.
class GgiWeights {
  public:
    /// Validates lambda_1 >= ... >= lambda_N >= 0.
    explicit GgiWeights(std::vector<Rational> lambda);

    int size() const { return static_cast<int>(lambda_.size()); }
    /// lambda_i, 1-based.
    const Rational& operator[](int i) const { return lambda_[i - 1]; }
    const std::vector<Rational>& values() const { return lambda_; }

    /// K = max{i : lambda_i > 0}; 0 for the all-zero vector.
    int num_positive() const { return k_; }

  private:
    std::vector<Rational> lambda_;
    int k_;
};

/// Classical Gini weights lambda_i = (2(N-i)+1)/N^2; strictly decreasing and
/// summing to 1. N must be even and >= 2 (N = 2n agents).
GgiWeights gini_weights(int N);

/// lambda = (1,...,1,0,...,0) with k ones: the sum of the k largest
/// disutilities. k = 1 gives the egalitarian (max) criterion, k = N the
/// utilitarian sum.
GgiWeights head_weights(int N, int k);

}  // namespace ggism

#include "ggism/weights.hpp"

#include <stdexcept>
#include <utility>

namespace ggism {

GgiWeights::GgiWeights(std::vector<Rational> lambda) : lambda_(std::move(lambda)) {
    if (lambda_.empty()) throw std::invalid_argument("weight vector must be nonempty");
    if (lambda_.back() < 0) throw std::invalid_argument("weights must be nonnegative");
    for (std::size_t i = 1; i < lambda_.size(); ++i)
        if (lambda_[i] > lambda_[i - 1])
            throw std::invalid_argument("weights must be nonincreasing (position " +
                                        std::to_string(i + 1) + ")");
    k_ = 0;
    for (std::size_t i = 0; i < lambda_.size(); ++i)
        if (lambda_[i] > 0) k_ = static_cast<int>(i) + 1;
}

GgiWeights gini_weights(int N) {
    if (N < 2 || N % 2 != 0)
        throw std::invalid_argument("gini_weights needs an even N >= 2, got " + std::to_string(N));
    std::vector<Rational> lambda;
    lambda.reserve(N);
    BigInt nsq = BigInt(N) * N;
    for (int i = 1; i <= N; ++i) lambda.emplace_back(BigInt(2 * (N - i) + 1), nsq);
    return GgiWeights(std::move(lambda));
}

GgiWeights head_weights(int N, int k) {
    if (N < 1 || k < 1 || k > N) throw std::invalid_argument("head_weights needs 1 <= k <= N");
    std::vector<Rational> lambda(N, Rational(0));
    for (int i = 0; i < k; ++i) lambda[i] = 1;
    return GgiWeights(std::move(lambda));
}

}  // namespace ggism

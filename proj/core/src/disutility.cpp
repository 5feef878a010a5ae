#include "ggism/disutility.hpp"

#include <limits>
#include <stdexcept>
#include <utility>

namespace ggism {

DisutilityFunction DisutilityFunction::identity() { return DisutilityFunction(Kind::identity); }

DisutilityFunction DisutilityFunction::squared() { return DisutilityFunction(Kind::squared); }

DisutilityFunction DisutilityFunction::table(std::vector<Rational> values) {
    if (values.empty()) throw std::invalid_argument("disutility table must be nonempty");
    if (values.front() < 0) throw std::invalid_argument("disutility values must be nonnegative");
    for (std::size_t k = 1; k < values.size(); ++k)
        if (values[k] <= values[k - 1])
            throw std::invalid_argument("disutility table must be strictly increasing at rank " +
                                        std::to_string(k + 1));
    DisutilityFunction f(Kind::table);
    f.table_ = std::move(values);
    return f;
}

Rational DisutilityFunction::operator()(int rank) const {
    if (rank < 1) throw std::out_of_range("rank must be positive");
    switch (kind_) {
        case Kind::identity:
            return Rational(rank);
        case Kind::squared:
            return Rational(BigInt(rank - 1) * (rank - 1));
        case Kind::table:
            if (rank > static_cast<int>(table_.size()))
                throw std::out_of_range("rank " + std::to_string(rank) +
                                        " beyond disutility table of size " +
                                        std::to_string(table_.size()));
            return table_[rank - 1];
    }
    throw std::logic_error("unreachable");
}

int DisutilityFunction::domain_size() const {
    return kind_ == Kind::table ? static_cast<int>(table_.size())
                                : std::numeric_limits<int>::max();
}

}  // namespace ggism

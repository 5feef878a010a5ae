#include "ggism/matching.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>

namespace ggism {

Matching::Matching(std::vector<int> partner_of_man) {
    if (partner_of_man.empty()) throw std::invalid_argument("empty matching");
    if (partner_of_man.front() == 0)
        n_ = static_cast<int>(partner_of_man.size()) - 1;
    else {
        n_ = static_cast<int>(partner_of_man.size());
        partner_of_man.insert(partner_of_man.begin(), 0);
    }
    wife_ = std::move(partner_of_man);
    husband_.assign(n_ + 1, 0);
    for (int m = 1; m <= n_; ++m) {
        int w = wife_[m];
        if (w < 1 || w > n_)
            throw std::invalid_argument("matching: partner index out of range for man " +
                                        std::to_string(m));
        if (husband_[w] != 0)
            throw std::invalid_argument("matching: woman " + std::to_string(w) + " matched twice");
        husband_[w] = m;
    }
}

std::vector<std::pair<int, int>> Matching::pairs() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(n_);
    for (int m = 1; m <= n_; ++m) out.emplace_back(m, wife_[m]);
    return out;
}

std::optional<std::pair<int, int>> find_blocking_pair(const Instance& inst, const Matching& m) {
    for (int i = 1; i <= inst.n(); ++i) {
        // Scan the women man i strictly prefers to his wife, best first.
        int wife_rank = inst.man_rank(i, m.wife_of(i));
        for (int k = 1; k < wife_rank; ++k) {
            int j = inst.man_pref(i, k);
            if (inst.woman_prefers(j, i, m.husband_of(j))) return std::make_pair(i, j);
        }
    }
    return std::nullopt;
}

bool is_stable(const Instance& inst, const Matching& m) {
    return !find_blocking_pair(inst, m).has_value();
}

DisutilityVector disutility_vector(const Instance& inst, const DisutilityFunction& dfun,
                                   const Matching& m) {
    int n = inst.n();
    DisutilityVector v(2 * n);
    for (int i = 1; i <= n; ++i) v[i - 1] = dfun(inst.man_rank(i, m.wife_of(i)));
    for (int j = 1; j <= n; ++j) v[n + j - 1] = dfun(inst.woman_rank(j, m.husband_of(j)));
    return v;
}

Rational ggi(const GgiWeights& weights, const DisutilityVector& v) {
    if (static_cast<int>(v.size()) != weights.size())
        throw std::invalid_argument("ggi: vector length " + std::to_string(v.size()) +
                                    " != weight length " + std::to_string(weights.size()));
    DisutilityVector sorted = v;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    Rational total = 0;
    // Weights are nonincreasing, so once past K non-zero entries the tail is 0.
    for (int i = 1; i <= weights.num_positive(); ++i) total += weights[i] * sorted[i - 1];
    return total;
}

Rational ggi_topk(const GgiWeights& weights, std::vector<Rational> top, int k) {
    if (static_cast<int>(top.size()) < k)
        throw std::invalid_argument("ggi_topk: fewer than k components");
    std::sort(top.begin(), top.end(), std::greater<>());
    Rational total = 0;
    for (int i = 1; i <= k && i <= weights.size(); ++i) total += weights[i] * top[i - 1];
    return total;
}

Rational evaluate(Criterion criterion, const Instance& inst, const DisutilityFunction& dfun,
                  const Matching& m, const GgiWeights* weights) {
    DisutilityVector v = disutility_vector(inst, dfun, m);
    int n = inst.n();
    switch (criterion) {
        case Criterion::utilitarian: {
            Rational sum = 0;
            for (const auto& d : v) sum += d;
            return sum;
        }
        case Criterion::egalitarian:
            return *std::max_element(v.begin(), v.end());
        case Criterion::sex_equal: {
            Rational men = 0, women = 0;
            for (int i = 0; i < n; ++i) men += v[i];
            for (int i = n; i < 2 * n; ++i) women += v[i];
            return abs(men - women);
        }
        case Criterion::balanced: {
            Rational men = 0, women = 0;
            for (int i = 0; i < n; ++i) men += v[i];
            for (int i = n; i < 2 * n; ++i) women += v[i];
            return std::max(men, women);
        }
        case Criterion::ggi:
            if (!weights) throw std::invalid_argument("ggi criterion needs a weight vector");
            return ggi(*weights, v);
    }
    throw std::logic_error("unreachable");
}

std::string matching_to_json(const Matching& m) {
    nlohmann::json pairs = nlohmann::json::array();
    for (auto [man, woman] : m.pairs()) pairs.push_back({man, woman});
    return nlohmann::json{{"pairs", pairs}}.dump();
}

Matching matching_from_json(const std::string& text, int n) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("invalid matching JSON: ") + e.what());
    }
    if (!doc.contains("pairs")) throw std::invalid_argument("matching JSON must have 'pairs'");
    std::vector<int> wife(n + 1, 0);
    for (const auto& p : doc.at("pairs")) {
        if (!p.is_array() || p.size() != 2)
            throw std::invalid_argument("matching JSON: each pair must be [man, woman]");
        int man = p[0].get<int>(), woman = p[1].get<int>();
        if (man < 1 || man > n)
            throw std::invalid_argument("matching JSON: man index out of range");
        if (wife[man] != 0) throw std::invalid_argument("matching JSON: duplicate man");
        wife[man] = woman;
    }
    for (int m = 1; m <= n; ++m)
        if (wife[m] == 0) throw std::invalid_argument("matching JSON: man missing");
    return Matching(std::move(wife));
}

}  // namespace ggism

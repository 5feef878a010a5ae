#include "ggism/reduction.hpp"

#include "ggism/rotations.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

namespace ggism {

ReductionOutput reduce(const TwoSatInstance& ts) {
    const int n_v = ts.n_v;
    const int n_c = static_cast<int>(ts.clauses.size());
    if (n_c < 2) throw std::invalid_argument("reduce: at least two clauses required");
    std::vector<int> presence(n_v + 1, 0);
    for (const auto& [a, b] : ts.clauses) {
        if (a.var < 1 || a.var > n_v || b.var < 1 || b.var > n_v)
            throw std::invalid_argument("reduce: clause references an unknown variable");
        presence[a.var]++;
        if (b.var != a.var) presence[b.var]++;
    }
    for (int v = 1; v <= n_v; ++v)
        if (presence[v] < 2)
            throw std::invalid_argument("reduce: variable " + std::to_string(v) +
                                        " in fewer than two clauses; input not preprocessed");

    const int n = 4 * n_c;

    // One man-woman pair per literal occurrence. Per variable, the
    // occurrences (clause ascending, second occurrence in a doubled clause
    // last) form the cycle its rotation walks through. Fictitious pairs take
    // indices 1..2n_c (clause j: 2j-1 unprimed, 2j primed), occurrence pairs
    // take 2n_c+1..4n_c ordered by (variable, clause, slot); a pair's man and
    // woman share one index.
    std::vector<std::vector<std::pair<int, int>>> var_occs(n_v + 1);  // (clause, slot)
    for (int j = 1; j <= n_c; ++j) {
        const auto& [a, b] = ts.clauses[j - 1];
        var_occs[a.var].push_back({j, 0});
        var_occs[b.var].push_back({j, a.var == b.var ? 1 : 0});
    }
    std::map<std::tuple<int, int, int>, int> occ_index;
    int next_index = 2 * n_c;
    for (int v = 1; v <= n_v; ++v)
        for (auto [j, o] : var_occs[v]) occ_index[{v, j, o}] = ++next_index;
    if (next_index != n) throw std::logic_error("reduce: occurrence indexing out of step");

    // Decisive agents: the man of the pair for a positive literal, the woman
    // for a negated one. Exactly these get the 2j fictitious entries pushed
    // ahead of their two stable matches, parking them at ranks 2j+1 / 2j+2.
    std::vector<int> man_decisive(n + 1, 0), woman_decisive(n + 1, 0);  // clause j or 0
    std::vector<std::pair<int, int>> decisive;
    decisive.reserve(n_c);
    for (int j = 1; j <= n_c; ++j) {
        const auto& [a, b] = ts.clauses[j - 1];
        const int ia = occ_index[{a.var, j, 0}];
        const int ib = occ_index[{b.var, j, a.var == b.var ? 1 : 0}];
        (a.negated ? woman_decisive : man_decisive)[ia] = j;
        (b.negated ? woman_decisive : man_decisive)[ib] = j;
        decisive.push_back({a.negated ? n + ia : ia, b.negated ? n + ib : ib});
    }

    std::vector<std::vector<int>> men(n + 1), women(n + 1);  // row 0 stays empty
    for (int f = 1; f <= 2 * n_c; ++f) {
        men[f] = {f};  // the aligned fictitious partner is the first choice
        women[f] = {f};
    }
    for (int v = 1; v <= n_v; ++v) {
        const auto& cyc = var_occs[v];
        const int r = static_cast<int>(cyc.size());
        for (int k = 0; k < r; ++k) {
            auto index_at = [&](int pos) {
                auto [j, o] = cyc[((pos % r) + r) % r];
                return occ_index[{v, j, o}];
            };
            const int idx = index_at(k);
            auto& mlist = men[idx];
            if (int j = man_decisive[idx])
                for (int f = 1; f <= 2 * j; ++f) mlist.push_back(f);
            mlist.push_back(idx);              // his better match w_{ij_k}
            mlist.push_back(index_at(k + 1));  // his worse match w_{ij_{k+1}}
            auto& wlist = women[idx];
            if (int j = woman_decisive[idx])
                for (int f = 1; f <= 2 * j; ++f) wlist.push_back(f);
            wlist.push_back(index_at(k - 1));  // her better match m_{ij_{k-1}}
            wlist.push_back(idx);              // her worse match m_{ij_k}
        }
    }
    // Complete every list with the remaining partners in ascending order.
    for (auto* side : {&men, &women})
        for (int i = 1; i <= n; ++i) {
            std::vector<char> used(n + 1, 0);
            for (int x : (*side)[i]) used[x] = 1;
            for (int x = 1; x <= n; ++x)
                if (!used[x]) (*side)[i].push_back(x);
        }
    Instance inst(std::move(men), std::move(women));

    // Disutility schedule: d(1) = 0, d(2) = 1, d(2j+1) = j+1 and
    // d(2j+2) = j+1+n_c^{-j} for j = 1..n_c; past 2n_c+2 the values play no
    // role and continue by unit steps.
    std::vector<Rational> d(n);
    d[0] = 0;
    d[1] = 1;
    BigInt ncj = 1;  // n_c^j
    for (int j = 1; j <= n_c; ++j) {
        ncj *= n_c;
        d[2 * j] = Rational(j + 1);
        d[2 * j + 1] = Rational(j + 1) + Rational(BigInt(1), ncj);
    }
    for (int i = 2 * n_c + 3; i <= n; ++i) d[i - 1] = d[2 * n_c + 1] + (i - (2 * n_c + 2));
    DisutilityFunction dfun = DisutilityFunction::table(std::move(d));

    // Weights n_c^{n_c+1}, n_c^{n_c}, n_c^{n_c}, ..., n_c^2, n_c^2, n_c,
    // then zeros: position 1, the pairs (2k, 2k+1), and position 2n_c.
    std::vector<Rational> w(2 * n, Rational(0));
    BigInt pw = n_c;  // n_c^{n_c+1-k} while filling
    for (int e = 0; e < n_c; ++e) pw *= n_c;
    w[0] = Rational(pw);
    for (int k = 1; k <= n_c - 1; ++k) {
        pw /= n_c;
        w[2 * k - 1] = w[2 * k] = Rational(pw);
    }
    w[2 * n_c - 1] = Rational(n_c);
    GgiWeights weights(std::move(w));

    // GGI when all clauses have both literals true (all decisive at rk-):
    // clause j contributes (n_c^{j+1} + n_c^j) * d(2j+2).
    Rational delta_u(0);
    ncj = 1;
    for (int j = 1; j <= n_c; ++j) {
        ncj *= n_c;
        delta_u += Rational(ncj + ncj * n_c) * (Rational(j + 1) + Rational(BigInt(1), ncj));
    }
    Rational delta_l = delta_u - Rational(n_c) * (n_c + 1);

    // Self-check the advertised structure before handing the instance out.
    RotationPoset poset = build_poset(inst);
    if (poset.num_rotations() != n_v)
        throw std::logic_error("reduce: generated instance has " +
                               std::to_string(poset.num_rotations()) + " rotations, expected " +
                               std::to_string(n_v));
    if (!poset.immediate_edges().empty())
        throw std::logic_error("reduce: generated rotation order is not edgeless");
    std::vector<int> var_map(n_v + 1, -1);
    for (int v = 1; v <= n_v; ++v) {
        std::vector<std::pair<int, int>> expected;
        for (auto [j, o] : var_occs[v]) {
            int idx = occ_index[{v, j, o}];
            expected.push_back({idx, idx});
        }
        auto id = poset.id_of_cycle(expected);
        if (!id) throw std::logic_error("reduce: rotation for variable " + std::to_string(v) +
                                        " not found in the generated instance");
        var_map[v] = *id;
    }

    return ReductionOutput{std::move(inst),    std::move(dfun), std::move(weights), n_v, n_c,
                           std::move(var_map), std::move(decisive), std::move(delta_u),
                           std::move(delta_l)};
}

int unsat_count_from_ggi(const ReductionOutput& out, const Rational& ggi_value) {
    if (ggi_value > out.delta_u)
        throw std::invalid_argument("unsat_count_from_ggi: GGI value exceeds delta_u");
    Rational q = (out.delta_u - ggi_value) / Rational(out.n_c + 1);
    BigInt fl = numerator(q) / denominator(q);  // q >= 0, so truncation is floor
    return fl.convert_to<int>();
}

}  // namespace ggism

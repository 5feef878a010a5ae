#include "ggism/lp_rounding.hpp"

#include "ggism/gale_shapley.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ggism {

namespace {

std::string pair_name(const char* prefix, int a, int b) {
    return std::string(prefix) + std::to_string(a) + "_" + std::to_string(b);
}

}  // namespace

Relaxation::Relaxation(const Instance& inst, const RotationPoset& poset,
                       const DisutilityFunction& dfun, const GgiWeights& weights)
    : n_(inst.n()) {
    const int n = n_;
    const int N = 2 * n;
    if (weights.size() != N)
        throw std::invalid_argument("relaxation: weights must have one entry per agent");
    const int P = poset.num_rotations();
    const Matching& xm = poset.man_optimal_matching();
    const Matching& xw = poset.woman_optimal_matching();
    pairs_ = poset.stable_pairs();

    y_idx_.reserve(P);
    for (int rho = 0; rho < P; ++rho)
        y_idx_.push_back(lp_.add_variable("y" + std::to_string(rho), Rational(0), Rational(1)));
    for (const auto& [m, w] : pairs_)
        x_idx_[{m, w}] = lp_.add_variable(pair_name("x_", m, w));
    d_idx_.reserve(N);
    for (int a = 1; a <= N; ++a) d_idx_.push_back(lp_.add_variable("d" + std::to_string(a)));

    // x linked to y: a man-optimal pair survives until its break rotation is
    // eliminated; any other stable pair exists from its get rotation until
    // its break rotation (woman-optimal pairs are never broken).
    for (const auto& [m, w] : pairs_) {
        std::vector<std::pair<int, Rational>> terms{{x_idx_[{m, w}], Rational(1)}};
        auto get = poset.get_rotation(m, w);
        auto brk = poset.break_rotation(m, w);
        Rational rhs(0);
        if (xm.wife_of(m) == w) {
            if (brk) terms.push_back({y_idx_[*brk], Rational(1)});
            rhs = 1;
        } else if (xw.wife_of(m) == w) {
            terms.push_back({y_idx_[*get], Rational(-1)});
        } else {
            terms.push_back({y_idx_[*get], Rational(-1)});
            terms.push_back({y_idx_[*brk], Rational(1)});
        }
        lp_.add_constraint(std::move(terms), LinearProgram::Sense::eq, rhs,
                           pair_name("link_x_", m, w));
    }

    // d linked to y through the rotation deltas: d_a = d(a, x^m) - sum_rho
    // y(rho) * omega_a(rho), written with d_a on the left.
    const RotationWeights rw = rotation_weights(poset, inst, dfun);
    const DisutilityVector base = disutility_vector(inst, dfun, xm);
    for (int a = 1; a <= N; ++a) {
        std::vector<std::pair<int, Rational>> terms{{d_idx_[a - 1], Rational(1)}};
        for (int rho = 0; rho < P; ++rho) {
            const Rational& omega = a <= n ? rw.men[rho][a] : rw.women[rho][a - n];
            if (omega != 0) terms.push_back({y_idx_[rho], omega});
        }
        lp_.add_constraint(std::move(terms), LinearProgram::Sense::eq, base[a - 1],
                           "link_d" + std::to_string(a));
    }

    // Precedence: y may only decrease along the order. Immediate edges
    // suffice; the rest follows by transitivity.
    for (const auto& [before, after] : poset.immediate_edges())
        lp_.add_constraint({{y_idx_[after], Rational(1)}, {y_idx_[before], Rational(-1)}},
                           LinearProgram::Sense::le, Rational(0),
                           pair_name("prec_", before, after));

    // GGI linearization: for each index k where the weight strictly drops,
    // auxiliaries t_k (free) and u_{a,k} >= max(0, d_a - t_k) make
    //   sum_k (lambda_k - lambda_{k+1}) * (k * t_k + sum_a u_{a,k})
    // equal the GGI of d at the optimum.
    std::vector<std::pair<int, Rational>> objective;
    for (int k = 1; k <= N; ++k) {
        Rational step = weights[k] - (k < N ? weights[k + 1] : Rational(0));
        if (step == 0) continue;
        int t = lp_.add_variable("t" + std::to_string(k), std::nullopt);
        objective.push_back({t, step * k});
        for (int a = 1; a <= N; ++a) {
            int u = lp_.add_variable(pair_name("u_", a, k));
            objective.push_back({u, step});
            lp_.add_constraint(
                {{u, Rational(1)}, {d_idx_[a - 1], Rational(-1)}, {t, Rational(1)}},
                LinearProgram::Sense::ge, Rational(0), pair_name("cut_", a, k));
        }
    }
    lp_.set_objective(std::move(objective));
}

LinearProgram Relaxation::with_fixed_rotations(const ClosedSet& r) const {
    LinearProgram fixed = lp_;
    for (int rho = 0; rho < num_rotations(); ++rho) {
        bool in = std::binary_search(r.begin(), r.end(), rho);
        fixed.add_constraint({{y_idx_[rho], Rational(1)}}, LinearProgram::Sense::eq,
                             Rational(in ? 1 : 0), "fix_y" + std::to_string(rho));
    }
    return fixed;
}

Relaxation build_relaxation(const Instance& inst, const DisutilityFunction& dfun,
                            const GgiWeights& weights) {
    RotationPoset poset = build_poset(inst);
    return Relaxation(inst, poset, dfun, weights);
}

FractionalSolution solve_lp(const Relaxation& rel, bool exact) {
    FractionalSolution f;
    std::vector<Rational> values;
    if (exact) {
        LpSolution<Rational> sol = solve_lp_exact(rel.lp());
        values = std::move(sol.values);
        f.objective = std::move(sol.objective);
    } else {
        LpSolution<double> sol = solve_lp_float(rel.lp());
        values.reserve(sol.values.size());
        for (double v : sol.values) values.push_back(rational_from_double(v));
        f.objective = rational_from_double(sol.objective);
    }
    f.y_hat.reserve(rel.num_rotations());
    for (int rho = 0; rho < rel.num_rotations(); ++rho)
        f.y_hat.push_back(values[rel.y_index(rho)]);
    for (const auto& [m, w] : rel.pairs()) f.x_hat[{m, w}] = values[rel.x_index(m, w)];
    f.d_hat.reserve(2 * rel.n());
    for (int a = 1; a <= 2 * rel.n(); ++a) f.d_hat.push_back(values[rel.d_index(a)]);
    return f;
}

ClosedSet rounded_set(const RotationPoset& p, const std::vector<Rational>& y_hat) {
    if (static_cast<int>(y_hat.size()) != p.num_rotations())
        throw std::invalid_argument("rounded_set: one y value per rotation expected");
    // Snap float noise upward so the >= 1/2 threshold stays inclusive.
    const Rational threshold = Rational(1, 2) - Rational(1, 1000000000);
    ClosedSet r;
    for (int rho = 0; rho < p.num_rotations(); ++rho)
        if (y_hat[rho] >= threshold) r.push_back(rho);
    if (!p.is_closed(r))
        throw std::logic_error("rounded_set: precedence constraints violated by y_hat");
    return r;
}

Matching round_solution(const RotationPoset& p, const Instance& inst,
                        const FractionalSolution& f) {
    return matching_of_closed_set(p, inst, rounded_set(p, f.y_hat));
}

ApproxResult approx_solve(const Instance& inst, const DisutilityFunction& dfun,
                          const GgiWeights& weights, bool exact) {
    RotationPoset poset = build_poset(inst);
    Relaxation rel(inst, poset, dfun, weights);
    FractionalSolution f = solve_lp(rel, exact);
    ClosedSet r = rounded_set(poset, f.y_hat);
    Matching rounded = matching_of_closed_set(poset, inst, r);
    Rational value = ggi(weights, disutility_vector(inst, dfun, rounded));
    return ApproxResult{std::move(rounded), std::move(value), f.objective, std::move(r),
                        std::move(f)};
}

}  // namespace ggism

#include "ggism/xp.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <iterator>
#include <map>
#include <stdexcept>
#include <thread>
#include <utility>

namespace ggism {

namespace {

bool contains(const std::vector<int>& sorted, int x) {
    return std::binary_search(sorted.begin(), sorted.end(), x);
}

void merge_into(std::vector<int>& dst, const std::vector<int>& add) {
    std::vector<int> out;
    out.reserve(dst.size() + add.size());
    std::set_union(dst.begin(), dst.end(), add.begin(), add.end(), std::back_inserter(out));
    dst = std::move(out);
}

void remove_from(std::vector<int>& dst, const std::vector<int>& sub) {
    std::vector<int> out;
    out.reserve(dst.size());
    std::set_difference(dst.begin(), dst.end(), sub.begin(), sub.end(), std::back_inserter(out));
    dst = std::move(out);
}

bool intersects(const std::vector<int>& a, const std::vector<int>& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j)
            ++i;
        else if (*j < *i)
            ++j;
        else
            return true;
    }
    return false;
}

std::vector<int> complement_of(int universe, const std::vector<int>& sub) {
    std::vector<int> out;
    out.reserve(universe - sub.size());
    for (int x = 0; x < universe; ++x)
        if (!contains(sub, x)) out.push_back(x);
    return out;
}

/// The (man, woman) pair a triple fixes.
std::pair<int, int> pair_of(const Triple& t, int n) {
    if (t.agent <= n) return {t.agent, t.partner};
    return {t.partner, t.agent - n};
}

Rational kth_largest(const DisutilityVector& d, int k) {
    std::vector<Rational> copy(d);
    std::nth_element(copy.begin(), copy.begin() + (k - 1), copy.end(), std::greater<>());
    return copy[k - 1];
}

/// Runs fn(i) for i in [0, count) over `threads` workers; exceptions are
/// rethrown in the calling thread.
void parallel_for(int count, int threads, const std::function<void(int, int)>& fn) {
    threads = std::max(1, std::min(threads, count));
    if (threads <= 1) {
        fn(0, 1);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            try {
                fn(t, threads);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

XpContext::XpContext(const Instance& inst, const RotationPoset& poset,
                     const DisutilityFunction& dfun)
    : inst_(&inst), poset_(&poset), dfun_(&dfun) {
    const int P = poset.num_rotations();
    anc_incl_.reserve(P);
    desc_incl_.reserve(P);
    dmax_w_.reserve(P);
    dmax_m_.reserve(P);
    for (int rho = 0; rho < P; ++rho) {
        anc_incl_.push_back(poset.ancestors(rho, true));
        desc_incl_.push_back(poset.descendants(rho, true));
        const auto& pairs = poset.rotation(rho).pairs;
        const int r = static_cast<int>(pairs.size());
        Rational max_w(-1), max_m(-1);
        for (int k = 0; k < r; ++k) {
            auto [m, w] = pairs[k];
            int w_next = pairs[(k + 1) % r].second;
            max_w = std::max(max_w, dfun(inst.woman_rank(w, m)));
            max_m = std::max(max_m, dfun(inst.man_rank(m, w_next)));
        }
        dmax_w_.push_back(std::move(max_w));
        dmax_m_.push_back(std::move(max_m));
    }
}

Rational XpContext::dis_of(int agent, int partner) const {
    if (agent <= n()) return (*dfun_)(inst_->man_rank(agent, partner));
    return (*dfun_)(inst_->woman_rank(agent - n(), partner));
}

std::optional<PrefixState> build_prefix_state(const TripleVector& v, const XpContext& ctx) {
    const int n = ctx.n();
    const int P = ctx.poset().num_rotations();
    PrefixState st;
    auto& in = st.constraints.in_set;
    auto& out = st.constraints.out_set;
    std::vector<char> used(2 * n + 1, 0);
    for (const Triple& t : v) {
        if (t.agent < 1 || t.agent > 2 * n)
            throw std::invalid_argument("build_prefix_state: agent code out of range");
        if (used[t.agent]) throw std::invalid_argument("build_prefix_state: repeated agent");
        used[t.agent] = 1;
        auto [m, w] = pair_of(t, n);
        if (auto get = ctx.poset().get_rotation(m, w)) merge_into(in, ctx.anc_incl(*get));
        if (auto brk = ctx.poset().break_rotation(m, w)) merge_into(out, ctx.desc_incl(*brk));
    }
    if (!v.empty()) {
        st.d_min = v.back().dis;
        // Any rotation still available whose elimination is needed to pull a
        // woman below d_min is mandatory; any rotation not already mandatory
        // that would push a man above d_min is forbidden.
        for (int rho = 0; rho < P; ++rho)
            if (!contains(out, rho) && ctx.dmax_w(rho) > *st.d_min) merge_into(in, ctx.anc_incl(rho));
        for (int rho = 0; rho < P; ++rho)
            if (!contains(in, rho) && ctx.dmax_m(rho) > *st.d_min)
                merge_into(out, ctx.desc_incl(rho));
    }
    if (intersects(in, out)) return std::nullopt;
    st.remaining.reserve(2 * n - v.size());
    for (int a = 1; a <= 2 * n; ++a)
        if (!used[a]) st.remaining.push_back(a);
    return st;
}

std::set<Triple> next_women(const RotationConstraints& c, int k, const std::vector<int>& remaining,
                            const XpContext& ctx) {
    std::set<Triple> T;
    if (intersects(c.in_set, c.out_set)) return T;
    const auto& poset = ctx.poset();
    const auto& inst = ctx.inst();
    const int n = ctx.n();
    const std::vector<int> avail = complement_of(poset.num_rotations(), c.out_set);
    const Matching x_avail = matching_of_closed_set(poset, inst, avail);
    ClosedSet r = c.in_set;
    Matching x = matching_of_closed_set(poset, inst, r);
    // Each pass either returns or strictly grows r, so 2n+2 passes cannot be
    // reached; the guard turns a broken invariant into a loud failure.
    for (int iter = 0; iter <= 2 * n + 1; ++iter) {
        const DisutilityVector d = disutility_vector(inst, ctx.dfun(), x);
        const Rational level = kth_largest(d, k);
        bool any = false, flag = false;
        for (int a : remaining) {
            if (a <= n || d[a - 1] != level) continue;
            any = true;
            const int w = a - n;
            const int m = x.husband_of(w);
            T.insert(Triple{d[a - 1], a, m});
            if (x_avail.wife_of(m) == w) {
                // This pair survives every matching allowed by c: the woman
                // can sink no lower, so the walk is complete.
                flag = true;
            } else {
                auto brk = poset.break_rotation(m, w);
                if (!brk) throw std::logic_error("next_women: unbreakable pair not in x_avail");
                merge_into(r, ctx.anc_incl(*brk));
            }
        }
        if (!any || flag) return T;
        x = matching_of_closed_set(poset, inst, r);
    }
    throw std::logic_error("next_women: walk failed to terminate");
}

std::set<Triple> next_men(const RotationConstraints& c, int k, const std::vector<int>& remaining,
                          const XpContext& ctx) {
    std::set<Triple> T;
    if (intersects(c.in_set, c.out_set)) return T;
    const auto& poset = ctx.poset();
    const auto& inst = ctx.inst();
    const int n = ctx.n();
    const Matching x_in = matching_of_closed_set(poset, inst, c.in_set);
    std::vector<int> r = complement_of(poset.num_rotations(), c.out_set);
    Matching x = matching_of_closed_set(poset, inst, r);
    for (int iter = 0; iter <= 2 * n + 1; ++iter) {
        const DisutilityVector d = disutility_vector(inst, ctx.dfun(), x);
        const Rational level = kth_largest(d, k);
        bool any = false, flag = false;
        for (int a : remaining) {
            if (a > n || d[a - 1] != level) continue;
            any = true;
            const int m = a;
            const int w = x.wife_of(m);
            T.insert(Triple{d[a - 1], a, w});
            if (x_in.wife_of(m) == w) {
                flag = true;
            } else {
                auto get = poset.get_rotation(m, w);
                if (!get) throw std::logic_error("next_men: ungettable pair not in x_in");
                remove_from(r, ctx.desc_incl(*get));
            }
        }
        if (!any || flag) return T;
        x = matching_of_closed_set(poset, inst, r);
    }
    throw std::logic_error("next_men: walk failed to terminate");
}

std::set<Triple> next_triples(const TripleVector& v, int k, const XpContext& ctx) {
    if (static_cast<int>(v.size()) != k - 1)
        throw std::invalid_argument("next_triples: v must have k-1 entries");
    auto st = build_prefix_state(v, ctx);
    if (!st) return {};
    std::set<Triple> T = next_women(st->constraints, k, st->remaining, ctx);
    std::set<Triple> M = next_men(st->constraints, k, st->remaining, ctx);
    T.insert(M.begin(), M.end());
    return T;
}

std::vector<TripleVector> enumerate_topk(const Instance& inst, const DisutilityFunction& dfun,
                                         int K, int threads) {
    const int n = inst.n();
    if (K < 1 || K > 2 * n) throw std::invalid_argument("enumerate_topk: K must be in [1, 2n]");
    const RotationPoset poset = build_poset(inst);
    const XpContext ctx(inst, poset, dfun);

    std::vector<TripleVector> level{TripleVector{}};
    for (int k = 1; k <= K; ++k) {
        std::vector<std::set<TripleVector>> partial(std::max(1, std::min(threads, static_cast<int>(level.size()))));
        parallel_for(static_cast<int>(level.size()), static_cast<int>(partial.size()),
                     [&](int tid, int stride) {
                         for (std::size_t i = tid; i < level.size(); i += stride) {
                             for (const Triple& t : next_triples(level[i], k, ctx)) {
                                 TripleVector child = level[i];
                                 child.push_back(t);
                                 partial[tid].insert(std::move(child));
                             }
                         }
                     });
        std::set<TripleVector> merged;
        for (auto& p : partial) merged.insert(p.begin(), p.end());
        level.assign(merged.begin(), merged.end());
    }
    return level;
}

XpResult xp_solve(const Instance& inst, const DisutilityFunction& dfun, const GgiWeights& weights,
                  int threads) {
    const int n = inst.n();
    if (weights.size() != 2 * n)
        throw std::invalid_argument("xp_solve: weights must have one entry per agent");
    const RotationPoset poset = build_poset(inst);
    const int K = weights.num_positive();
    if (K == 0) return XpResult{poset.man_optimal_matching(), Rational(0)};
    const XpContext ctx(inst, poset, dfun);
    const int P = poset.num_rotations();

    // Prefixes pinning down the same (used agents, d_min, in/out rotations)
    // admit exactly the same continuations, so per state only the cheapest
    // weighted partial sum must survive; a representative prefix is kept for
    // witness reconstruction, with a lexicographic tie-break for determinism.
    struct Key {
        Rational d_min;
        std::vector<int> used, in, out;
        bool operator<(const Key& o) const {
            if (d_min != o.d_min) return d_min < o.d_min;
            if (used != o.used) return used < o.used;
            if (in != o.in) return in < o.in;
            return out < o.out;
        }
    };
    struct Node {
        Rational partial;
        TripleVector rep;
    };
    auto better = [](const Node& a, const Node& b) {
        if (a.partial != b.partial) return a.partial < b.partial;
        return a.rep < b.rep;
    };
    using Level = std::map<Key, Node>;
    auto upsert = [&](Level& lv, Key key, Node node) {
        auto [it, inserted] = lv.try_emplace(std::move(key), node);
        if (!inserted && better(node, it->second)) it->second = std::move(node);
    };

    Level cur;
    cur.emplace(Key{Rational(0), {}, {}, {}}, Node{Rational(0), {}});
    for (int k = 1; k <= K; ++k) {
        std::vector<const std::pair<const Key, Node>*> items;
        items.reserve(cur.size());
        for (const auto& kv : cur) items.push_back(&kv);
        std::vector<Level> partial(std::max(1, std::min(threads, static_cast<int>(items.size()))));
        parallel_for(static_cast<int>(items.size()), static_cast<int>(partial.size()),
                     [&](int tid, int stride) {
            for (std::size_t i = tid; i < items.size(); i += stride) {
                const Key& key = items[i]->first;
                const Node& node = items[i]->second;
                const RotationConstraints c{key.in, key.out};
                std::vector<int> remaining;
                remaining.reserve(2 * n - key.used.size());
                for (int a = 1; a <= 2 * n; ++a)
                    if (!contains(key.used, a)) remaining.push_back(a);
                std::set<Triple> T = next_women(c, k, remaining, ctx);
                std::set<Triple> M = next_men(c, k, remaining, ctx);
                T.insert(M.begin(), M.end());
                for (const Triple& t : T) {
                    std::vector<int> in = key.in, out = key.out;
                    auto [m, w] = pair_of(t, n);
                    if (auto get = poset.get_rotation(m, w)) merge_into(in, ctx.anc_incl(*get));
                    if (auto brk = poset.break_rotation(m, w)) merge_into(out, ctx.desc_incl(*brk));
                    for (int rho = 0; rho < P; ++rho)
                        if (!contains(out, rho) && ctx.dmax_w(rho) > t.dis)
                            merge_into(in, ctx.anc_incl(rho));
                    for (int rho = 0; rho < P; ++rho)
                        if (!contains(in, rho) && ctx.dmax_m(rho) > t.dis)
                            merge_into(out, ctx.desc_incl(rho));
                    if (intersects(in, out)) continue;
                    std::vector<int> used = key.used;
                    used.insert(std::upper_bound(used.begin(), used.end(), t.agent), t.agent);
                    Node child{node.partial + weights[k] * t.dis, node.rep};
                    child.rep.push_back(t);
                    upsert(partial[tid], Key{t.dis, std::move(used), std::move(in), std::move(out)},
                           std::move(child));
                }
            }
        });
        Level next = std::move(partial[0]);
        for (std::size_t p = 1; p < partial.size(); ++p)
            for (auto& [key, node] : partial[p]) upsert(next, key, std::move(node));
        cur = std::move(next);
        if (cur.empty()) throw std::logic_error("xp_solve: level became empty");
    }

    const Node* best = nullptr;
    for (const auto& [key, node] : cur)
        if (!best || better(node, *best)) best = &node;
    auto st = build_prefix_state(best->rep, ctx);
    if (!st) throw std::logic_error("xp_solve: optimal prefix is contradictory");
    Matching witness = matching_of_closed_set(poset, inst, st->constraints.in_set);
    Rational value = ggi(weights, disutility_vector(inst, dfun, witness));
    if (value != best->partial)
        throw std::logic_error("xp_solve: witness value disagrees with the explored optimum");
    return XpResult{std::move(witness), std::move(value)};
}

}  // namespace ggism

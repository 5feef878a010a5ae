#include "ggism/rotations.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ggism {

namespace {

// Rotate the cycle so the smallest man index leads; the cyclic order itself
// is preserved, only the starting point changes.
void canonicalize(Rotation& rho) {
    auto lead = std::min_element(rho.pairs.begin(), rho.pairs.end());
    std::rotate(rho.pairs.begin(), lead, rho.pairs.end());
}

bool is_exposed_in(const Shortlists& s, const Rotation& rho) {
    int r = rho.size();
    if (r < 2) return false;
    for (int k = 0; k < r; ++k) {
        auto [m, w] = rho.pairs[k];
        auto [m_next, w_next] = rho.pairs[(k + 1) % r];
        const auto& ml = s.men[m];
        if (ml.size() < 2 || ml[0] != w || ml[1] != w_next) return false;
        if (s.women[w_next].back() != m_next) return false;
    }
    return true;
}

}  // namespace

std::vector<Rotation> find_exposed(const Shortlists& s) {
    int n = s.n();
    std::vector<Rotation> out;
    // Rotations are the cycles of the partial function
    //   next(m) = current partner of the second woman on m's list,
    // where a woman's current partner is the last man on her list.
    std::vector<char> state(n + 1, 0);  // 0 unvisited, 1 on current walk, 2 finished
    for (int start = 1; start <= n; ++start) {
        if (state[start] != 0) continue;
        std::vector<int> path;
        int m = start;
        while (m != 0 && state[m] == 0) {
            state[m] = 1;
            path.push_back(m);
            if (s.men[m].size() < 2) {
                m = 0;  // exhausted list: no rotation passes through here
            } else {
                m = s.women[s.men[m][1]].back();
            }
        }
        if (m != 0 && state[m] == 1) {
            // The walk ran into itself: the tail from m onward is a cycle.
            auto cycle_start = std::find(path.begin(), path.end(), m);
            Rotation rho;
            for (auto it = cycle_start; it != path.end(); ++it)
                rho.pairs.emplace_back(*it, s.men[*it].front());
            canonicalize(rho);
            out.push_back(std::move(rho));
        }
        for (int v : path) state[v] = 2;
    }
    std::sort(out.begin(), out.end(),
              [](const Rotation& a, const Rotation& b) { return a.pairs < b.pairs; });
    return out;
}

void eliminate_in_place(Shortlists& s, const Rotation& rho) {
    if (!is_exposed_in(s, rho))
        throw std::invalid_argument("rotation is not exposed in the shortlists");
    int r = rho.size();
    for (int k = 0; k < r; ++k) {
        int w = rho.pairs[k].second;
        int m_new = rho.pairs[(k - 1 + r) % r].first;
        // w's list ends at her current partner, whom she likes less than
        // m_new; strike everyone below m_new, mirroring into the men's lists.
        auto& wl = s.women[w];
        auto pos = std::find(wl.begin(), wl.end(), m_new);
        for (auto it = pos + 1; it != wl.end(); ++it) {
            auto& ml = s.men[*it];
            ml.erase(std::find(ml.begin(), ml.end(), w));
        }
        wl.erase(pos + 1, wl.end());
    }
}

Shortlists eliminate(const Shortlists& s, const Rotation& rho) {
    Shortlists out = s;
    eliminate_in_place(out, rho);
    return out;
}

RotationPoset build_poset(const Instance& inst) {
    RotationPoset p;
    auto [xm, s0] = man_optimal(inst);
    p.man_opt_ = xm;
    p.shortlists_ = s0;

    // Discovery pass: any maximal elimination sequence from the man-optimal
    // shortlists eliminates every rotation of the instance exactly once and
    // ends at the woman-optimal matching. Ids follow this order.
    Shortlists s = s0;
    for (;;) {
        auto exposed = find_exposed(s);
        if (exposed.empty()) break;
        Rotation rho = std::move(exposed.front());
        rho.id = static_cast<int>(p.rotations_.size());
        p.id_of_[rho.pairs] = rho.id;
        eliminate_in_place(s, rho);
        p.rotations_.push_back(std::move(rho));
    }
    p.woman_opt_ = s.head_matching();

    int P = p.num_rotations();
    p.precedes_.assign(P, std::vector<char>(P, 0));

    // Blocking probe: with pi forbidden, a rotation stays unexposed forever
    // exactly when every route to it passes through pi, i.e. when it is a
    // strict descendant of pi.
    for (int pi = 0; pi < P; ++pi) {
        Shortlists t = s0;
        std::vector<char> eliminated(P, 0);
        for (;;) {
            auto exposed = find_exposed(t);
            const Rotation* pick = nullptr;
            for (const auto& e : exposed)
                if (p.id_of_.at(e.pairs) != pi) {
                    pick = &e;
                    break;
                }
            if (!pick) break;
            eliminated[p.id_of_.at(pick->pairs)] = 1;
            eliminate_in_place(t, *pick);
        }
        for (int rho = 0; rho < P; ++rho)
            if (rho != pi && !eliminated[rho]) p.precedes_[pi][rho] = 1;
    }

    // Transitive reduction: keep a<b only when no c sits strictly between.
    for (int a = 0; a < P; ++a)
        for (int b = 0; b < P; ++b) {
            if (!p.precedes_[a][b]) continue;
            bool direct = true;
            for (int c = 0; c < P && direct; ++c)
                if (p.precedes_[a][c] && p.precedes_[c][b]) direct = false;
            if (direct) p.immediate_edges_.emplace_back(a, b);
        }

    // Stable pairs and the get/break maps. A rotation breaks its own pairs
    // (m_k, w_k) and creates the shifted pairs (m_k, w_{k+1}).
    std::set<std::pair<int, int>> gamma;
    for (int m = 1; m <= inst.n(); ++m) gamma.insert({m, xm.wife_of(m)});
    for (const auto& rho : p.rotations_) {
        int r = rho.size();
        for (int k = 0; k < r; ++k) {
            auto [mk, wk] = rho.pairs[k];
            int w_next = rho.pairs[(k + 1) % r].second;
            p.break_map_[{mk, wk}] = rho.id;
            p.get_map_[{mk, w_next}] = rho.id;
            gamma.insert({mk, w_next});
        }
    }
    p.gamma_.assign(gamma.begin(), gamma.end());
    return p;
}

std::vector<int> RotationPoset::immediate_predecessors(int id) const {
    std::vector<int> out;
    for (auto [a, b] : immediate_edges_)
        if (b == id) out.push_back(a);
    return out;
}

std::optional<int> RotationPoset::get_rotation(int man, int woman) const {
    auto it = get_map_.find({man, woman});
    if (it == get_map_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> RotationPoset::break_rotation(int man, int woman) const {
    auto it = break_map_.find({man, woman});
    if (it == break_map_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> RotationPoset::id_of_cycle(const std::vector<std::pair<int, int>>& pairs) const {
    auto it = id_of_.find(pairs);
    if (it == id_of_.end()) return std::nullopt;
    return it->second;
}

bool RotationPoset::is_closed(const ClosedSet& set) const {
    std::vector<char> in(num_rotations(), 0);
    for (int id : set) {
        if (id < 0 || id >= num_rotations()) return false;
        in[id] = 1;
    }
    for (int id : set)
        for (int a = 0; a < num_rotations(); ++a)
            if (precedes_[a][id] && !in[a]) return false;
    return true;
}

ClosedSet RotationPoset::ancestors(int id, bool inclusive) const {
    ClosedSet out;
    for (int a = 0; a < num_rotations(); ++a)
        if ((a == id && inclusive) || precedes_[a][id]) out.push_back(a);
    return out;
}

ClosedSet RotationPoset::descendants(int id, bool inclusive) const {
    ClosedSet out;
    for (int b = 0; b < num_rotations(); ++b)
        if ((b == id && inclusive) || precedes_[id][b]) out.push_back(b);
    return out;
}

std::string RotationPoset::to_dot() const {
    std::ostringstream out;
    out << "digraph rotations {\n";
    for (const auto& rho : rotations_) {
        out << "  r" << rho.id << " [label=\"ρ" << rho.id + 1 << ": ";
        for (int k = 0; k < rho.size(); ++k) {
            if (k > 0) out << ",";
            out << "(" << rho.pairs[k].first << "," << rho.pairs[k].second << ")";
        }
        out << "\"];\n";
    }
    for (auto [a, b] : immediate_edges_) out << "  r" << a << " -> r" << b << ";\n";
    out << "}\n";
    return out.str();
}

std::string RotationPoset::to_json() const {
    nlohmann::json doc;
    doc["rotations"] = nlohmann::json::array();
    for (const auto& rho : rotations_) {
        nlohmann::json pairs = nlohmann::json::array();
        for (auto [m, w] : rho.pairs) pairs.push_back({m, w});
        doc["rotations"].push_back({{"id", rho.id}, {"pairs", pairs}});
    }
    doc["immediate_edges"] = nlohmann::json::array();
    for (auto [a, b] : immediate_edges_) doc["immediate_edges"].push_back({a, b});
    doc["get"] = nlohmann::json::array();
    for (const auto& [pair, id] : get_map_)
        doc["get"].push_back({{"man", pair.first}, {"woman", pair.second}, {"rotation", id}});
    doc["break"] = nlohmann::json::array();
    for (const auto& [pair, id] : break_map_)
        doc["break"].push_back({{"man", pair.first}, {"woman", pair.second}, {"rotation", id}});
    return doc.dump(2);
}

Matching matching_of_closed_set(const RotationPoset& p, const Instance& inst, const ClosedSet& R) {
    if (!p.is_closed(R)) throw std::invalid_argument("rotation set is not closed");
    std::vector<char> y(p.num_rotations(), 0);
    for (int id : R) y[id] = 1;
    auto yval = [&](std::optional<int> id) { return id && y[*id] ? 1 : 0; };
    const Matching& xm = p.man_optimal_matching();
    const Matching& xw = p.woman_optimal_matching();
    std::vector<int> wife(inst.n() + 1, 0);
    for (auto [m, w] : p.stable_pairs()) {
        int x;
        if (xm.wife_of(m) == w)
            x = 1 - yval(p.break_rotation(m, w));
        else if (xw.wife_of(m) == w)
            x = yval(p.get_rotation(m, w));
        else
            x = yval(p.get_rotation(m, w)) - yval(p.break_rotation(m, w));
        if (x == 1) {
            if (wife[m] != 0)
                throw std::logic_error("closed-set reconstruction matched a man twice");
            wife[m] = w;
        }
    }
    return Matching(std::move(wife));
}

Matching matching_by_elimination(const RotationPoset& p, const Instance& inst, const ClosedSet& R) {
    if (!p.is_closed(R)) throw std::invalid_argument("rotation set is not closed");
    (void)inst;
    std::vector<char> want(p.num_rotations(), 0);
    for (int id : R) want[id] = 1;
    Shortlists s = p.initial_shortlists();
    int remaining = static_cast<int>(R.size());
    while (remaining > 0) {
        auto exposed = find_exposed(s);
        const Rotation* pick = nullptr;
        int pick_id = -1;
        for (const auto& e : exposed) {
            auto id = p.id_of_cycle(e.pairs);
            if (id && want[*id]) {
                pick = &e;
                pick_id = *id;
                break;
            }
        }
        if (!pick) throw std::logic_error("closed set not realizable by elimination");
        eliminate_in_place(s, *pick);
        want[pick_id] = 0;
        --remaining;
    }
    return s.head_matching();
}

void enumerate_stable(const RotationPoset& p, const Instance& inst,
                      const std::function<bool(const ClosedSet&, const Matching&)>& visit) {
    int P = p.num_rotations();
    std::vector<std::vector<int>> preds(P);
    for (int b = 0; b < P; ++b)
        for (int a = 0; a < P; ++a)
            if (p.precedes(a, b)) preds[b].push_back(a);
    std::vector<char> in(P, 0);
    ClosedSet chosen;
    bool stop = false;
    // Ids form a linear extension, so deciding membership in id order can
    // never orphan a predecessor; every leaf is a distinct closed set.
    std::function<void(int)> dfs = [&](int i) {
        if (stop) return;
        if (i == P) {
            if (!visit(chosen, matching_of_closed_set(p, inst, chosen))) stop = true;
            return;
        }
        dfs(i + 1);  // without rotation i
        if (stop) return;
        for (int a : preds[i])
            if (!in[a]) return;  // a predecessor is missing: cannot include i
        in[i] = 1;
        chosen.push_back(i);
        dfs(i + 1);  // with rotation i
        chosen.pop_back();
        in[i] = 0;
    };
    dfs(0);
}

std::vector<std::pair<ClosedSet, Matching>> enumerate_stable(const RotationPoset& p,
                                                             const Instance& inst) {
    std::vector<std::pair<ClosedSet, Matching>> out;
    enumerate_stable(p, inst, [&](const ClosedSet& R, const Matching& m) {
        out.emplace_back(R, m);
        return true;
    });
    return out;
}

RotationWeights rotation_weights(const RotationPoset& p, const Instance& inst,
                                 const DisutilityFunction& dfun) {
    int n = inst.n();
    int P = p.num_rotations();
    RotationWeights w;
    w.men.assign(P, std::vector<Rational>(n + 1, Rational(0)));
    w.women.assign(P, std::vector<Rational>(n + 1, Rational(0)));
    for (const auto& rho : p.rotations()) {
        int r = rho.size();
        for (int k = 0; k < r; ++k) {
            auto [mk, wk] = rho.pairs[k];
            int w_next = rho.pairs[(k + 1) % r].second;
            int m_prev = rho.pairs[(k - 1 + r) % r].first;
            w.men[rho.id][mk] = dfun(inst.man_rank(mk, wk)) - dfun(inst.man_rank(mk, w_next));
            w.women[rho.id][wk] =
                dfun(inst.woman_rank(wk, mk)) - dfun(inst.woman_rank(wk, m_prev));
        }
    }
    return w;
}

}  // namespace ggism

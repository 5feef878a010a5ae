#include "ggism/gale_shapley.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace ggism {

Matching Shortlists::head_matching() const {
    std::vector<int> wife(men.size(), 0);
    for (std::size_t i = 1; i < men.size(); ++i) {
        if (men[i].empty()) throw std::logic_error("empty shortlist");
        wife[i] = men[i].front();
    }
    return Matching(std::move(wife));
}

std::pair<Matching, Shortlists> man_optimal(const Instance& inst, ProposalOrder order) {
    int n = inst.n();
    Shortlists s;
    s.men.assign(n + 1, {});
    s.women.assign(n + 1, {});
    for (int i = 1; i <= n; ++i) {
        auto& row = s.men[i];
        for (int k = 1; k <= n; ++k) row.push_back(inst.man_pref(i, k));
    }
    for (int j = 1; j <= n; ++j) {
        auto& row = s.women[j];
        for (int k = 1; k <= n; ++k) row.push_back(inst.woman_pref(j, k));
    }

    std::vector<int> fiance(n + 1, 0);  // woman -> currently held man
    std::deque<int> free_men;
    for (int i = 1; i <= n; ++i) free_men.push_back(i);

    while (!free_men.empty()) {
        int m;
        if (order == ProposalOrder::fifo) {
            m = free_men.front();
            free_men.pop_front();
        } else {
            m = free_men.back();
            free_men.pop_back();
        }
        // m proposes to the head of his shortlist. Because deletions are
        // eager, the head always accepts: any woman who would refuse him has
        // already been struck from his list.
        int w = s.men[m].front();
        int prev = fiance[w];
        fiance[w] = m;
        // Strike every man worse than m from w's list, and w from theirs.
        auto& wl = s.women[w];
        auto pos = std::find(wl.begin(), wl.end(), m);
        for (auto it = pos + 1; it != wl.end(); ++it) {
            auto& ml = s.men[*it];
            ml.erase(std::find(ml.begin(), ml.end(), w));
        }
        wl.erase(pos + 1, wl.end());
        // The displaced fiance (always worse than m, hence just struck) re-enters.
        if (prev != 0) free_men.push_back(prev);
    }

    return {s.head_matching(), std::move(s)};
}

Matching woman_optimal(const Instance& inst, ProposalOrder order) {
    // Swap roles, solve, and invert the resulting woman->man assignment.
    std::vector<std::vector<int>> men_rows, women_rows;
    int n = inst.n();
    for (int j = 1; j <= n; ++j) {
        std::vector<int> row;
        for (int k = 1; k <= n; ++k) row.push_back(inst.woman_pref(j, k));
        men_rows.push_back(std::move(row));
    }
    for (int i = 1; i <= n; ++i) {
        std::vector<int> row;
        for (int k = 1; k <= n; ++k) row.push_back(inst.man_pref(i, k));
        women_rows.push_back(std::move(row));
    }
    Instance swapped(std::move(men_rows), std::move(women_rows));
    Matching by_woman = man_optimal(swapped, order).first;
    std::vector<int> wife(n + 1, 0);
    for (int j = 1; j <= n; ++j) wife[by_woman.wife_of(j)] = j;
    return Matching(std::move(wife));
}

}  // namespace ggism

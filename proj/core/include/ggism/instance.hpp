#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace ggism {

/// Raised on malformed instance files; the message names the offending line.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A complete stable-marriage instance: n men and n women, each with a strict
/// preference list over the whole opposite side. Agent indices are 1-based in
/// all public interfaces; internal storage is 1-based too (index 0 unused) so
/// code reads like the usual notation (m_4, w_7, ...).
class Instance {
  public:
    /// Builds from 1-based preference lists: men_prefs[i] is man i's list of
    /// woman indices, best first (i in 1..n); likewise women_prefs.
    /// Both outer vectors must have size n+1 with slot 0 ignored, or size n
    /// (then treated as rows 1..n). Validates that every row is a permutation.
    Instance(std::vector<std::vector<int>> men_prefs, std::vector<std::vector<int>> women_prefs);

    int n() const { return n_; }

    /// Woman at position k (1-based) in man i's list.
    int man_pref(int i, int k) const { return men_prefs_[i][k]; }
    /// Man at position k in woman j's list.
    int woman_pref(int j, int k) const { return women_prefs_[j][k]; }

    /// Rank of woman j in man i's list (1 = best).
    int man_rank(int i, int j) const { return men_rank_[i][j]; }
    /// Rank of man i in woman j's list.
    int woman_rank(int j, int i) const { return women_rank_[j][i]; }

    /// True iff man i prefers woman j1 to woman j2.
    bool man_prefers(int i, int j1, int j2) const { return men_rank_[i][j1] < men_rank_[i][j2]; }
    bool woman_prefers(int j, int i1, int i2) const {
        return women_rank_[j][i1] < women_rank_[j][i2];
    }

    const std::vector<int>& man_list(int i) const { return men_prefs_[i]; }
    const std::vector<int>& woman_list(int j) const { return women_prefs_[j]; }

  private:
    int n_;
    // prefs[i][k] = partner at rank k; rank[i][j] = rank of j in i's list.
    std::vector<std::vector<int>> men_prefs_, women_prefs_;
    std::vector<std::vector<int>> men_rank_, women_rank_;
};

/// Parses the plain-text instance format:
///   line 1: n
///   lines 2..n+1: man i's preference list (n woman indices, best first)
///   lines n+2..2n+1: woman j's preference list
/// '#' starts a comment line; blank lines are skipped. If the text starts
/// with '{' it is parsed as the JSON mirror {"n":..,"men":[[..]],"women":[[..]]}.
Instance parse_instance(std::istream& in);
Instance parse_instance(const std::string& text);

/// Reads and parses a file; ParseError on I/O failure.
Instance load_instance(const std::string& path);

/// Writes the plain-text format (round-trips through parse_instance).
std::string format_instance(const Instance& inst);

}  // namespace ggism

#include "ggism/instance.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <utility>

namespace ggism {

namespace {

// Pads a caller-supplied pref table to 1-based layout and sanity-checks shape.
std::vector<std::vector<int>> normalize(std::vector<std::vector<int>> rows, std::size_t n,
                                        const char* side) {
    if (rows.size() == n) rows.insert(rows.begin(), std::vector<int>{});
    if (rows.size() != n + 1)
        throw std::invalid_argument(std::string(side) + " preference table has wrong row count");
    for (std::size_t i = 1; i <= n; ++i) {
        if (rows[i].size() == n) rows[i].insert(rows[i].begin(), 0);
        if (rows[i].size() != n + 1)
            throw std::invalid_argument(std::string(side) + " list " + std::to_string(i) +
                                        " has wrong length");
    }
    return rows;
}

// rank[i][j] = position of j in prefs[i]; throws if a row is not a permutation.
std::vector<std::vector<int>> build_ranks(const std::vector<std::vector<int>>& prefs, int n,
                                          const char* side) {
    std::vector<std::vector<int>> rank(n + 1, std::vector<int>(n + 1, 0));
    for (int i = 1; i <= n; ++i) {
        for (int k = 1; k <= n; ++k) {
            int j = prefs[i][k];
            if (j < 1 || j > n)
                throw std::invalid_argument(std::string(side) + " list " + std::to_string(i) +
                                            ": index " + std::to_string(j) + " out of range");
            if (rank[i][j] != 0)
                throw std::invalid_argument(std::string(side) + " list " + std::to_string(i) +
                                            ": duplicate index " + std::to_string(j));
            rank[i][j] = k;
        }
    }
    return rank;
}

}  // namespace

Instance::Instance(std::vector<std::vector<int>> men_prefs,
                   std::vector<std::vector<int>> women_prefs) {
    if (men_prefs.empty()) throw std::invalid_argument("empty preference table");
    // 1-based layout leaves slot 0 as an empty row; plain layout starts at row 0.
    std::size_t n = men_prefs.front().empty() ? men_prefs.size() - 1 : men_prefs.size();
    n_ = static_cast<int>(n);
    if (n_ < 1) throw std::invalid_argument("instance needs at least one agent per side");
    men_prefs_ = normalize(std::move(men_prefs), n, "man");
    women_prefs_ = normalize(std::move(women_prefs), n, "woman");
    men_rank_ = build_ranks(men_prefs_, n_, "man");
    women_rank_ = build_ranks(women_prefs_, n_, "woman");
}

namespace {

Instance parse_json_instance(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON instance: ") + e.what());
    }
    if (!doc.contains("n") || !doc.contains("men") || !doc.contains("women"))
        throw ParseError("JSON instance must have fields n, men, women");
    int n = doc.at("n").get<int>();
    auto men = doc.at("men").get<std::vector<std::vector<int>>>();
    auto women = doc.at("women").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(men.size()) != n || static_cast<int>(women.size()) != n)
        throw ParseError("JSON instance: men/women arrays must each have n rows");
    try {
        return Instance(std::move(men), std::move(women));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

}  // namespace

Instance parse_instance(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

Instance parse_instance(const std::string& text) {
    // JSON mirror: detect by first non-space character.
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        if (c == '{') return parse_json_instance(text);
        break;
    }

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int n = -1;
    std::vector<std::vector<int>> men, women;

    auto parse_row = [&](const std::string& content) {
        std::istringstream row(content);
        std::vector<int> out;
        int v;
        while (row >> v) out.push_back(v);
        std::string rest;
        if (row.clear(), row >> rest)
            throw ParseError("line " + std::to_string(line_no) + ": expected integers");
        return out;
    };

    while (std::getline(in, line)) {
        ++line_no;
        // Strip comments and whitespace-only lines.
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

        std::vector<int> row;
        try {
            row = parse_row(line);
        } catch (const ParseError&) {
            throw ParseError("line " + std::to_string(line_no) + ": expected integers, got '" +
                             line + "'");
        }
        if (n < 0) {
            if (row.size() != 1 || row[0] < 1)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected a single positive integer n");
            n = row[0];
            continue;
        }
        if (static_cast<int>(row.size()) != n)
            throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(n) +
                             " indices, got " + std::to_string(row.size()));
        if (static_cast<int>(men.size()) < n)
            men.push_back(std::move(row));
        else if (static_cast<int>(women.size()) < n)
            women.push_back(std::move(row));
        else
            throw ParseError("line " + std::to_string(line_no) + ": extra data after " +
                             std::to_string(2 * n) + " preference lists");
    }
    if (n < 0) throw ParseError("empty instance file");
    if (static_cast<int>(women.size()) < n)
        throw ParseError("expected " + std::to_string(2 * n) + " preference lists, got " +
                         std::to_string(men.size() + women.size()));
    try {
        return Instance(std::move(men), std::move(women));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file: " + path);
    return parse_instance(in);
}

std::string format_instance(const Instance& inst) {
    std::ostringstream out;
    out << inst.n() << "\n";
    for (int i = 1; i <= inst.n(); ++i) {
        for (int k = 1; k <= inst.n(); ++k) out << (k > 1 ? " " : "") << inst.man_pref(i, k);
        out << "\n";
    }
    for (int j = 1; j <= inst.n(); ++j) {
        for (int k = 1; k <= inst.n(); ++k) out << (k > 1 ? " " : "") << inst.woman_pref(j, k);
        out << "\n";
    }
    return out.str();
}

}  // namespace ggism

#include "ggism/lp.hpp"

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <type_traits>
#include <utility>

namespace ggism {

int LinearProgram::add_variable(std::string name, std::optional<Rational> lower,
                                std::optional<Rational> upper) {
    if (lower && upper && *upper < *lower)
        throw std::invalid_argument("variable '" + name + "': upper bound below lower bound");
    variables_.push_back(Variable{std::move(name), std::move(lower), std::move(upper)});
    return static_cast<int>(variables_.size()) - 1;
}

void LinearProgram::add_constraint(std::vector<std::pair<int, Rational>> terms, Sense sense,
                                   Rational rhs, std::string name) {
    for (const auto& [v, c] : terms)
        if (v < 0 || v >= num_variables())
            throw std::invalid_argument("constraint '" + name + "': unknown variable index");
    constraints_.push_back(Constraint{std::move(terms), sense, std::move(rhs), std::move(name)});
}

void LinearProgram::set_objective(std::vector<std::pair<int, Rational>> terms) {
    for (const auto& [v, c] : terms)
        if (v < 0 || v >= num_variables())
            throw std::invalid_argument("objective: unknown variable index");
    objective_ = std::move(terms);
}

std::string LinearProgram::to_text() const {
    std::ostringstream out;
    auto write_terms = [&](const std::vector<std::pair<int, Rational>>& terms) {
        bool first = true;
        for (const auto& [v, c] : terms) {
            if (c == 0) continue;
            if (c < 0)
                out << (first ? "- " : " - ");
            else if (!first)
                out << " + ";
            Rational mag = c < 0 ? Rational(-c) : c;
            if (mag != 1) out << format_rational(mag) << ' ';
            out << variables_[v].name;
            first = false;
        }
        if (first) out << '0';
    };
    out << "Minimize\n obj: ";
    write_terms(objective_);
    out << "\nSubject To\n";
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
        const auto& c = constraints_[i];
        out << ' ' << (c.name.empty() ? "c" + std::to_string(i) : c.name) << ": ";
        write_terms(c.terms);
        switch (c.sense) {
            case Sense::le: out << " <= "; break;
            case Sense::ge: out << " >= "; break;
            case Sense::eq: out << " = "; break;
        }
        out << format_rational(c.rhs) << '\n';
    }
    out << "Bounds\n";
    for (const auto& v : variables_) {
        if (v.lower && v.upper)
            out << ' ' << format_rational(*v.lower) << " <= " << v.name
                << " <= " << format_rational(*v.upper) << '\n';
        else if (v.lower && *v.lower != 0)
            out << ' ' << v.name << " >= " << format_rational(*v.lower) << '\n';
        else if (!v.lower)
            out << ' ' << v.name << (v.upper ? " <= " + format_rational(*v.upper) : " free")
                << '\n';
        else if (v.upper)
            out << ' ' << v.name << " <= " << format_rational(*v.upper) << '\n';
    }
    out << "End\n";
    return out.str();
}

namespace {

template <typename T>
T scalar_of(const Rational& r) {
    if constexpr (std::is_same_v<T, double>)
        return to_double(r);
    else
        return r;
}

/// Dense two-phase primal simplex working on a full tableau. T is double
/// (tolerance 1e-9, Dantzig pricing, Bland fallback) or Rational (exact,
/// Bland's rule throughout, guaranteed finite).
template <typename T>
class SimplexTableau {
  public:
    SimplexTableau(int cols, int art_start, T tol)
        : cols_(cols), art_start_(art_start), tol_(std::move(tol)) {
        use_bland_ = std::is_same_v<T, Rational>;
    }

    void add_row(std::vector<T> row, int basic_col) {
        rows_.push_back(std::move(row));
        basis_.push_back(basic_col);
    }

    int num_rows() const { return static_cast<int>(rows_.size()); }
    int basis(int i) const { return basis_[i]; }
    const T& value(int i) const { return rows_[i][cols_]; }
    const T& coeff(int i, int j) const { return rows_[i][j]; }

    /// Installs the reduced-cost row for objective coefficients c (length
    /// cols_) given the current basis, then runs pivots to optimality.
    /// Returns the optimal objective value.
    T optimize(const std::vector<T>& c) {
        cost_.assign(cols_ + 1, T(0));
        for (int j = 0; j < cols_; ++j) cost_[j] = c[j];
        for (int i = 0; i < num_rows(); ++i) {
            const T& cb = c[basis_[i]];
            if (cb == 0) continue;
            for (int j = 0; j <= cols_; ++j) cost_[j] -= cb * rows_[i][j];
        }
        while (step()) {
        }
        return -cost_[cols_];
    }

    /// Pivots basic artificial variables out of the basis; rows where that is
    /// impossible are redundant and get dropped.
    void drive_out_artificials() {
        for (int i = num_rows() - 1; i >= 0; --i) {
            if (basis_[i] < art_start_) continue;
            int pc = -1;
            for (int j = 0; j < art_start_; ++j)
                if (rows_[i][j] > tol_ || rows_[i][j] < -tol_) {
                    pc = j;
                    break;
                }
            if (pc >= 0) {
                pivot(i, pc);
            } else {
                rows_.erase(rows_.begin() + i);
                basis_.erase(basis_.begin() + i);
            }
        }
    }

  private:
    bool step() {
        if (++iterations_ > 200000) throw LpFailure("simplex iteration limit exceeded");
        int pc = -1;
        if (use_bland_) {
            for (int j = 0; j < art_start_; ++j)
                if (cost_[j] < -tol_) {
                    pc = j;
                    break;
                }
        } else {
            T best = -tol_;
            for (int j = 0; j < art_start_; ++j)
                if (cost_[j] < best) {
                    best = cost_[j];
                    pc = j;
                }
        }
        if (pc < 0) return false;  // optimal

        int pr = -1;
        T best_ratio{};
        for (int i = 0; i < num_rows(); ++i) {
            if (!(rows_[i][pc] > tol_)) continue;
            T ratio = rows_[i][cols_] / rows_[i][pc];
            if (pr < 0 || ratio < best_ratio - tol_) {
                pr = i;
                best_ratio = std::move(ratio);
            } else if (ratio <= best_ratio + tol_ && basis_[i] < basis_[pr]) {
                pr = i;  // tie-break on smallest basis index (anticycling)
            }
        }
        if (pr < 0) throw LpFailure("linear program is unbounded");

        if (best_ratio <= tol_) {
            // Degenerate pivot: after too many in a row, fall back to Bland's
            // rule for guaranteed termination.
            if (++degenerate_run_ > 64) use_bland_ = true;
        } else {
            degenerate_run_ = 0;
            if (!std::is_same_v<T, Rational>) use_bland_ = false;
        }
        pivot(pr, pc);
        return true;
    }

    void pivot(int pr, int pc) {
        std::vector<T>& prow = rows_[pr];
        const T inv = prow[pc];
        for (int j = 0; j <= cols_; ++j) prow[j] /= inv;
        prow[pc] = T(1);
        for (int i = 0; i < num_rows(); ++i) {
            if (i == pr) continue;
            const T f = rows_[i][pc];
            if (f == 0) continue;
            for (int j = 0; j <= cols_; ++j) rows_[i][j] -= f * prow[j];
            rows_[i][pc] = T(0);
        }
        if (!cost_.empty() && cost_[pc] != 0) {
            const T f = cost_[pc];
            for (int j = 0; j <= cols_; ++j) cost_[j] -= f * prow[j];
            cost_[pc] = T(0);
        }
        basis_[pr] = pc;
    }

    int cols_;
    int art_start_;
    T tol_;
    bool use_bland_;
    long iterations_ = 0;
    int degenerate_run_ = 0;
    std::vector<std::vector<T>> rows_;  // each of length cols_ + 1 (rhs last)
    std::vector<int> basis_;
    std::vector<T> cost_;
};

template <typename T>
LpSolution<T> solve_impl(const LinearProgram& lp, T tol) {
    using Sense = LinearProgram::Sense;

    // Column layout: every variable is shifted/split so all structural
    // columns are nonnegative. Finite lower bound L: x = L + x'; no lower
    // bound: x = x+ - x-. Finite upper bounds become extra <= rows.
    struct ColInfo {
        int pos = -1, neg = -1;
        T shift{};
    };
    std::vector<ColInfo> cols(lp.num_variables());
    int next_col = 0;
    for (int v = 0; v < lp.num_variables(); ++v) {
        const auto& var = lp.variable(v);
        if (var.lower) {
            cols[v].shift = scalar_of<T>(*var.lower);
            cols[v].pos = next_col++;
        } else {
            cols[v].pos = next_col++;
            cols[v].neg = next_col++;
        }
    }
    const int n_struct = next_col;

    // Assemble rows in structural columns with nonnegative right-hand sides.
    struct Row {
        std::vector<T> a;
        Sense sense;
        T rhs;
    };
    std::vector<Row> rows;
    auto add_row = [&](const std::vector<std::pair<int, Rational>>& terms, Sense sense,
                       const Rational& rhs) {
        Row row{std::vector<T>(n_struct, T(0)), sense, scalar_of<T>(rhs)};
        for (const auto& [v, c] : terms) {
            const T coeff = scalar_of<T>(c);
            row.a[cols[v].pos] += coeff;
            if (cols[v].neg >= 0) row.a[cols[v].neg] -= coeff;
            row.rhs -= coeff * cols[v].shift;
        }
        if (row.rhs < 0) {
            for (T& x : row.a) x = -x;
            row.rhs = -row.rhs;
            if (row.sense == Sense::le)
                row.sense = Sense::ge;
            else if (row.sense == Sense::ge)
                row.sense = Sense::le;
        }
        rows.push_back(std::move(row));
    };
    for (int ci = 0; ci < lp.num_constraints(); ++ci) {
        const auto& c = lp.constraint(ci);
        add_row(c.terms, c.sense, c.rhs);
    }
    for (int v = 0; v < lp.num_variables(); ++v)
        if (lp.variable(v).upper)
            add_row({{v, Rational(1)}}, Sense::le, *lp.variable(v).upper);

    // Slack/surplus columns for inequalities, artificial columns for >= and =.
    int n_slack = 0, n_art = 0;
    for (const Row& r : rows) {
        if (r.sense != Sense::eq) ++n_slack;
        if (r.sense != Sense::le) ++n_art;
    }
    const int art_start = n_struct + n_slack;
    const int total_cols = art_start + n_art;

    SimplexTableau<T> tab(total_cols, art_start, tol);
    {
        int slack = n_struct, art = art_start;
        for (const Row& r : rows) {
            std::vector<T> full(total_cols + 1, T(0));
            std::copy(r.a.begin(), r.a.end(), full.begin());
            full[total_cols] = r.rhs;
            int basic;
            if (r.sense == Sense::le) {
                full[slack] = T(1);
                basic = slack++;
            } else {
                if (r.sense == Sense::ge) full[slack++] = T(-1);
                full[art] = T(1);
                basic = art++;
            }
            tab.add_row(std::move(full), basic);
        }
    }

    if (n_art > 0) {
        std::vector<T> phase1(total_cols, T(0));
        for (int j = art_start; j < total_cols; ++j) phase1[j] = T(1);
        T infeas = tab.optimize(phase1);
        if (infeas > tol) throw LpFailure("linear program is infeasible");
        tab.drive_out_artificials();
    }

    std::vector<T> phase2(total_cols, T(0));
    for (const auto& [v, c] : lp.objective()) {
        const T coeff = scalar_of<T>(c);
        phase2[cols[v].pos] += coeff;
        if (cols[v].neg >= 0) phase2[cols[v].neg] -= coeff;
    }
    tab.optimize(phase2);

    std::vector<T> col_value(total_cols, T(0));
    for (int i = 0; i < tab.num_rows(); ++i) col_value[tab.basis(i)] = tab.value(i);

    LpSolution<T> sol;
    sol.values.resize(lp.num_variables(), T(0));
    for (int v = 0; v < lp.num_variables(); ++v) {
        T x = cols[v].shift + col_value[cols[v].pos];
        if (cols[v].neg >= 0) x -= col_value[cols[v].neg];
        sol.values[v] = std::move(x);
    }
    sol.objective = T(0);
    for (const auto& [v, c] : lp.objective()) sol.objective += scalar_of<T>(c) * sol.values[v];
    return sol;
}

}  // namespace

LpSolution<Rational> solve_lp_exact(const LinearProgram& lp) {
    return solve_impl<Rational>(lp, Rational(0));
}

LpSolution<double> solve_lp_float(const LinearProgram& lp) {
    return solve_impl<double>(lp, 1e-9);
}

}  // namespace ggism

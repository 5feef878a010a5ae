#pragma once

#include "ggism/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ggism {

/// Solver failure that is not a modeling error: numerical stall, iteration
/// cap, or an unbounded/infeasible model (which for our generated programs
/// indicates a construction bug).
struct LpFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A finite linear program in minimization form. Coefficients are exact
/// rationals so one model can be solved either in floating point or exactly.
class LinearProgram {
  public:
    enum class Sense { le, ge, eq };

    struct Variable {
        std::string name;
        std::optional<Rational> lower;  // nullopt = unbounded below
        std::optional<Rational> upper;  // nullopt = unbounded above
    };
    struct Constraint {
        std::vector<std::pair<int, Rational>> terms;  // (variable, coefficient)
        Sense sense;
        Rational rhs;
        std::string name;
    };

    /// Adds a variable and returns its index. Default bounds: x >= 0.
    int add_variable(std::string name, std::optional<Rational> lower = Rational(0),
                     std::optional<Rational> upper = std::nullopt);
    void add_constraint(std::vector<std::pair<int, Rational>> terms, Sense sense, Rational rhs,
                        std::string name = "");
    /// Objective to minimize; variables absent from terms have coefficient 0.
    void set_objective(std::vector<std::pair<int, Rational>> terms);

    int num_variables() const { return static_cast<int>(variables_.size()); }
    int num_constraints() const { return static_cast<int>(constraints_.size()); }
    const Variable& variable(int v) const { return variables_.at(v); }
    const Constraint& constraint(int c) const { return constraints_.at(c); }
    const std::vector<std::pair<int, Rational>>& objective() const { return objective_; }

    /// CPLEX-LP-style text dump for debugging.
    std::string to_text() const;

  private:
    std::vector<Variable> variables_;
    std::vector<Constraint> constraints_;
    std::vector<std::pair<int, Rational>> objective_;
};

template <typename T>
struct LpSolution {
    std::vector<T> values;  // one entry per LP variable
    T objective;
};

/// Two-phase dense primal simplex in exact rational arithmetic with Bland's
/// rule (no tolerances, guaranteed termination). Meant for small models.
LpSolution<Rational> solve_lp_exact(const LinearProgram& lp);

/// The same algorithm in double precision: 1e-9 feasibility/optimality
/// tolerance, Dantzig pricing with a Bland fallback against cycling.
LpSolution<double> solve_lp_float(const LinearProgram& lp);

}  // namespace ggism

#ifndef HOLOSCHED_LP_HPP
#define HOLOSCHED_LP_HPP

#include <limits>
#include <vector>

namespace holosched::lp {

/// Constraint residuals of an Optimal solution stay within this bound after
/// row equilibration. Problem data spans bits to Gbps, so all tolerances are
/// applied to rows rescaled to unit max-abs.
inline constexpr double kFeasTol = 1e-7;
/// Pivots smaller than this are treated as zero.
inline constexpr double kPivotTol = 1e-10;
/// Reduced-cost optimality threshold.
inline constexpr double kCostTol = 1e-9;

enum class Relation { LessEq, Equal, GreaterEq };

struct Constraint {
    std::vector<double> coeffs;
    Relation rel = Relation::LessEq;
    double rhs = 0.0;
};

struct Bounds {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
};

/// minimize c.x  subject to the constraint rows and per-variable bounds.
/// An empty `bounds` vector means [0, +inf) for every variable.
struct LinearProgram {
    std::vector<double> objective;
    std::vector<Constraint> constraints;
    std::vector<Bounds> bounds;

    std::size_t num_vars() const { return objective.size(); }
};

enum class SolveStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    SolveStatus status = SolveStatus::Infeasible;
    std::vector<double> x;
    double objective_value = 0.0;
};

const char* to_string(SolveStatus status) noexcept;

/// Dense two-phase primal simplex with Bland's anti-cycling rule. Optimal
/// results are basic feasible points and the pivot sequence is a pure
/// function of the input, so identical programs yield bit-identical
/// solutions.
LpSolution solve(const LinearProgram& program);

} // namespace holosched::lp

#endif

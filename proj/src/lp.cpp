#include "holosched/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "holosched/error.hpp"

namespace holosched::lp {

const char* to_string(SolveStatus status) noexcept {
    switch (status) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
    }
    return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Row {
    std::vector<double> a;
    Relation rel;
    double rhs;
};

// Dense simplex tableau over columns [structural | slack/surplus | artificial].
class Tableau {
public:
    Tableau(std::vector<Row> rows, const std::vector<double>& objective) {
        n_struct_ = objective.size();

        std::size_t n_slack = 0;
        std::size_t n_art = 0;
        for (const auto& row : rows) {
            if (row.rel != Relation::Equal) ++n_slack;
            if (row.rel != Relation::LessEq) ++n_art;
        }
        art_begin_ = n_struct_ + n_slack;
        cols_ = art_begin_ + n_art;

        std::size_t slack = n_struct_;
        std::size_t art = art_begin_;
        for (const auto& row : rows) {
            std::vector<double> t(cols_, 0.0);
            std::copy(row.a.begin(), row.a.end(), t.begin());
            std::size_t basic;
            switch (row.rel) {
                case Relation::LessEq:
                    t[slack] = 1.0;
                    basic = slack++;
                    break;
                case Relation::GreaterEq:
                    t[slack++] = -1.0;
                    t[art] = 1.0;
                    basic = art++;
                    break;
                case Relation::Equal:
                default:
                    t[art] = 1.0;
                    basic = art++;
                    break;
            }
            body_.push_back(std::move(t));
            rhs_.push_back(row.rhs);
            basis_.push_back(basic);
        }

        // Phase-2 reduced costs start canonical: the initial basis carries
        // zero objective coefficients.
        cost2_.assign(cols_, 0.0);
        std::copy(objective.begin(), objective.end(), cost2_.begin());
        z2_ = 0.0;

        // Phase-1 costs: one per artificial, then canonicalized against the
        // rows whose artificial starts basic.
        cost1_.assign(cols_, 0.0);
        for (std::size_t j = art_begin_; j < cols_; ++j) cost1_[j] = 1.0;
        z1_ = 0.0;
        for (std::size_t i = 0; i < body_.size(); ++i) {
            if (basis_[i] >= art_begin_) {
                for (std::size_t j = 0; j < cols_; ++j) cost1_[j] -= body_[i][j];
                z1_ += rhs_[i];
            }
        }
    }

    SolveStatus run_phase(int phase) {
        std::vector<double>& cost = phase == 1 ? cost1_ : cost2_;
        const std::size_t max_iters = 50000 + 200 * (body_.size() + cols_);

        for (std::size_t iter = 0; iter < max_iters; ++iter) {
            // Bland's rule: lowest-index column with a negative reduced cost.
            // Artificials never re-enter.
            bool improving = false;
            bool only_tiny_pivots = false;
            std::size_t pivot_col = 0;
            std::size_t pivot_row = 0;
            bool found_pivot = false;

            for (std::size_t j = 0; j < art_begin_ && !found_pivot; ++j) {
                if (cost[j] >= -kCostTol) continue;
                improving = true;

                double best_ratio = kInf;
                std::size_t best_row = 0;
                std::size_t best_basic = 0;
                bool any_row = false;
                bool any_positive = false;
                for (std::size_t i = 0; i < body_.size(); ++i) {
                    const double a = body_[i][j];
                    if (a > 0.0) any_positive = true;
                    if (a <= kPivotTol) continue;
                    const double ratio = rhs_[i] / a;
                    // Ties resolved by smallest basic variable index (Bland).
                    if (ratio < best_ratio - 1e-12 ||
                        (ratio < best_ratio + 1e-12 && (!any_row || basis_[i] < best_basic))) {
                        best_ratio = ratio;
                        best_row = i;
                        best_basic = basis_[i];
                        any_row = true;
                    }
                }

                if (any_row) {
                    pivot_col = j;
                    pivot_row = best_row;
                    found_pivot = true;
                } else if (!any_positive) {
                    if (phase == 1)
                        fail(errc::degenerate_pivot, "phase-1 objective unbounded");
                    return SolveStatus::Unbounded;
                } else {
                    // Only pivots below kPivotTol: skip this column and let a
                    // later candidate take over.
                    only_tiny_pivots = true;
                }
            }

            if (!improving) return SolveStatus::Optimal;
            if (!found_pivot) {
                if (only_tiny_pivots)
                    fail(errc::degenerate_pivot,
                         "no pivot above " + std::to_string(kPivotTol) +
                             " in any improving column");
                return SolveStatus::Optimal;
            }

            pivot(pivot_row, pivot_col);
        }
        fail(errc::degenerate_pivot, "iteration limit exceeded");
    }

    double phase1_objective() const { return z1_; }

    // Pivot basic artificials out where possible and delete rows that turned
    // out redundant, so phase 2 cannot lift an artificial off zero.
    void eliminate_artificials() {
        std::vector<std::size_t> redundant;
        for (std::size_t i = 0; i < body_.size(); ++i) {
            if (basis_[i] < art_begin_) continue;
            bool pivoted = false;
            for (std::size_t j = 0; j < art_begin_; ++j) {
                if (std::abs(body_[i][j]) > kPivotTol) {
                    pivot(i, j);
                    pivoted = true;
                    break;
                }
            }
            if (!pivoted) redundant.push_back(i);
        }
        for (auto it = redundant.rbegin(); it != redundant.rend(); ++it) {
            body_.erase(body_.begin() + static_cast<std::ptrdiff_t>(*it));
            rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(*it));
            basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(*it));
        }
    }

    std::vector<double> structural_values() const {
        std::vector<double> y(n_struct_, 0.0);
        for (std::size_t i = 0; i < body_.size(); ++i)
            if (basis_[i] < n_struct_) y[basis_[i]] = std::max(0.0, rhs_[i]);
        return y;
    }

private:
    void pivot(std::size_t row, std::size_t col) {
        const double p = body_[row][col];
        for (double& v : body_[row]) v /= p;
        rhs_[row] /= p;
        body_[row][col] = 1.0; // exact after normalization

        for (std::size_t i = 0; i < body_.size(); ++i) {
            if (i == row) continue;
            const double f = body_[i][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < cols_; ++j) body_[i][j] -= f * body_[row][j];
            body_[i][col] = 0.0;
            rhs_[i] -= f * rhs_[row];
        }

        auto update_cost = [&](std::vector<double>& cost, double& z) {
            const double f = cost[col];
            if (f == 0.0) return;
            for (std::size_t j = 0; j < cols_; ++j) cost[j] -= f * body_[row][j];
            cost[col] = 0.0;
            z += f * rhs_[row];
        };
        update_cost(cost1_, z1_);
        update_cost(cost2_, z2_);

        basis_[row] = col;
    }

    std::size_t n_struct_ = 0;
    std::size_t art_begin_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::vector<double>> body_;
    std::vector<double> rhs_;
    std::vector<std::size_t> basis_;
    std::vector<double> cost1_, cost2_;
    double z1_ = 0.0, z2_ = 0.0;
};

void check_dimensions(const LinearProgram& program) {
    const std::size_t n = program.num_vars();
    for (std::size_t i = 0; i < program.constraints.size(); ++i) {
        if (program.constraints[i].coeffs.size() != n)
            fail(errc::dimension_mismatch,
                 "constraint " + std::to_string(i) + " has arity " +
                     std::to_string(program.constraints[i].coeffs.size()) + ", objective has " +
                     std::to_string(n));
    }
    if (!program.bounds.empty() && program.bounds.size() != n)
        fail(errc::dimension_mismatch, "bounds size " + std::to_string(program.bounds.size()) +
                                           " does not match " + std::to_string(n) + " variables");
    for (std::size_t j = 0; j < program.bounds.size(); ++j) {
        const Bounds& b = program.bounds[j];
        if (!std::isfinite(b.lo))
            fail(errc::invariant_violation,
                 "bounds[" + std::to_string(j) + "].lo must be finite");
        if (b.hi < b.lo)
            fail(errc::invariant_violation, "bounds[" + std::to_string(j) + "]: hi < lo");
    }
}

void recheck_feasibility(const LinearProgram& program, const std::vector<double>& x) {
    double x_norm = 0.0;
    for (double v : x) x_norm = std::max(x_norm, std::abs(v));
    for (std::size_t i = 0; i < program.constraints.size(); ++i) {
        const Constraint& c = program.constraints[i];
        double lhs = 0.0;
        double a_norm = 0.0;
        for (std::size_t j = 0; j < c.coeffs.size(); ++j) {
            lhs += c.coeffs[j] * x[j];
            a_norm = std::max(a_norm, std::abs(c.coeffs[j]));
        }
        const double limit = kFeasTol * (1.0 + std::abs(c.rhs) + a_norm * x_norm);
        const double viol = lhs - c.rhs;
        const bool ok = (c.rel == Relation::LessEq && viol <= limit) ||
                        (c.rel == Relation::GreaterEq && viol >= -limit) ||
                        (c.rel == Relation::Equal && std::abs(viol) <= limit);
        if (!ok)
            fail(errc::invariant_violation,
                 "optimal solution violates constraint " + std::to_string(i) + " by " +
                     std::to_string(viol));
    }
}

} // namespace

LpSolution solve(const LinearProgram& program) {
    check_dimensions(program);
    const std::size_t n = program.num_vars();

    if (n == 0) {
        for (const auto& c : program.constraints) {
            const bool ok = (c.rel == Relation::LessEq && 0.0 <= c.rhs + kFeasTol) ||
                            (c.rel == Relation::GreaterEq && 0.0 >= c.rhs - kFeasTol) ||
                            (c.rel == Relation::Equal && std::abs(c.rhs) <= kFeasTol);
            if (!ok) return {SolveStatus::Infeasible, {}, 0.0};
        }
        return {SolveStatus::Optimal, {}, 0.0};
    }

    std::vector<Bounds> bounds = program.bounds;
    if (bounds.empty()) bounds.assign(n, Bounds{});

    // Shift x = lo + y so every variable becomes y >= 0, turn finite upper
    // bounds into rows, equilibrate each row to unit max-abs, and force
    // nonnegative right-hand sides.
    std::vector<Row> rows;
    rows.reserve(program.constraints.size() + n);
    for (const auto& c : program.constraints) {
        double rhs = c.rhs;
        for (std::size_t j = 0; j < n; ++j) rhs -= c.coeffs[j] * bounds[j].lo;
        rows.push_back({c.coeffs, c.rel, rhs});
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(bounds[j].hi)) continue;
        std::vector<double> a(n, 0.0);
        a[j] = 1.0;
        rows.push_back({std::move(a), Relation::LessEq, bounds[j].hi - bounds[j].lo});
    }

    std::vector<Row> scaled;
    scaled.reserve(rows.size());
    for (auto& row : rows) {
        double s = 0.0;
        for (double v : row.a) s = std::max(s, std::abs(v));
        if (s == 0.0) {
            const bool ok = (row.rel == Relation::LessEq && 0.0 <= row.rhs + kFeasTol) ||
                            (row.rel == Relation::GreaterEq && 0.0 >= row.rhs - kFeasTol) ||
                            (row.rel == Relation::Equal && std::abs(row.rhs) <= kFeasTol);
            if (!ok) return {SolveStatus::Infeasible, {}, 0.0};
            continue; // vacuous row
        }
        for (double& v : row.a) v /= s;
        row.rhs /= s;
        if (row.rhs < 0.0) {
            for (double& v : row.a) v = -v;
            row.rhs = -row.rhs;
            if (row.rel == Relation::LessEq)
                row.rel = Relation::GreaterEq;
            else if (row.rel == Relation::GreaterEq)
                row.rel = Relation::LessEq;
        }
        scaled.push_back(std::move(row));
    }

    Tableau tableau(std::move(scaled), program.objective);

    tableau.run_phase(1);
    if (tableau.phase1_objective() > kFeasTol) return {SolveStatus::Infeasible, {}, 0.0};
    tableau.eliminate_artificials();

    if (tableau.run_phase(2) == SolveStatus::Unbounded)
        return {SolveStatus::Unbounded, {}, 0.0};

    std::vector<double> y = tableau.structural_values();
    LpSolution solution;
    solution.status = SolveStatus::Optimal;
    solution.x.resize(n);
    for (std::size_t j = 0; j < n; ++j)
        solution.x[j] = std::clamp(bounds[j].lo + y[j], bounds[j].lo, bounds[j].hi);
    solution.objective_value = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        solution.objective_value += program.objective[j] * solution.x[j];

    recheck_feasibility(program, solution.x);
    return solution;
}

} // namespace holosched::lp

#include "doctest.h"

#include <cmath>

#include "holosched/error.hpp"
#include "holosched/lp.hpp"
#include "holosched/oracle.hpp"
#include "holosched/rng.hpp"

using namespace holosched;

namespace {

lp::LinearProgram program(std::vector<double> c, std::vector<lp::Constraint> rows,
                          std::vector<lp::Bounds> bounds = {}) {
    lp::LinearProgram p;
    p.objective = std::move(c);
    p.constraints = std::move(rows);
    p.bounds = std::move(bounds);
    return p;
}

} // namespace

TEST_CASE("covering constraint pins the optimum") {
    const auto sol = lp::solve(program({1.0, 1.0}, {{{1.0, 1.0}, lp::Relation::GreaterEq, 1.0}}));
    REQUIRE(sol.status == lp::SolveStatus::Optimal);
    CHECK(sol.objective_value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sol.x[0] + sol.x[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("equality and upper-bound rows") {
    const auto eq = lp::solve(program({1.0}, {{{1.0}, lp::Relation::Equal, 3.0}}));
    REQUIRE(eq.status == lp::SolveStatus::Optimal);
    CHECK(eq.x[0] == doctest::Approx(3.0).epsilon(1e-9));

    const auto le = lp::solve(program({-1.0}, {{{1.0}, lp::Relation::LessEq, 0.0}}));
    REQUIRE(le.status == lp::SolveStatus::Optimal);
    CHECK(le.objective_value == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("variable bounds replace constraint rows") {
    const auto sol = lp::solve(program({-1.0}, {}, {{0.0, 2.0}}));
    REQUIRE(sol.status == lp::SolveStatus::Optimal);
    CHECK(sol.x[0] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(sol.objective_value == doctest::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("infeasible and unbounded programs are flagged") {
    const auto inf = lp::solve(program({0.0}, {{{1.0}, lp::Relation::GreaterEq, 2.0},
                                               {{1.0}, lp::Relation::LessEq, 1.0}}));
    CHECK(inf.status == lp::SolveStatus::Infeasible);

    const auto unb = lp::solve(program({-1.0}, {}));
    CHECK(unb.status == lp::SolveStatus::Unbounded);
}

TEST_CASE("objective scales linearly without moving the vertex") {
    auto base = program({2.0, 3.0}, {{{1.0, 2.0}, lp::Relation::GreaterEq, 4.0},
                                     {{3.0, 1.0}, lp::Relation::GreaterEq, 3.0}});
    const auto ref = lp::solve(base);
    REQUIRE(ref.status == lp::SolveStatus::Optimal);

    for (double alpha : {0.5, 10.0, 1e6}) {
        auto scaled = base;
        for (auto& c : scaled.objective) c *= alpha;
        const auto sol = lp::solve(scaled);
        REQUIRE(sol.status == lp::SolveStatus::Optimal);
        CHECK(sol.objective_value ==
              doctest::Approx(alpha * ref.objective_value).epsilon(1e-9));
        for (std::size_t i = 0; i < ref.x.size(); ++i)
            CHECK(sol.x[i] == doctest::Approx(ref.x[i]).epsilon(1e-9));
    }
}

TEST_CASE("badly scaled rows still satisfy the feasibility recheck") {
    // Coefficients spanning nine orders, like bits over Gbps links.
    const auto sol = lp::solve(program(
        {1e-9, 1.0},
        {{{1e9, 1e-3}, lp::Relation::GreaterEq, 2e9}, {{1.0, 1.0}, lp::Relation::LessEq, 3.0}}));
    REQUIRE(sol.status == lp::SolveStatus::Optimal);
    CHECK(sol.x[0] == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(sol.objective_value == doctest::Approx(2e-9).epsilon(1e-6));
}

TEST_CASE("dimension mismatches raise") {
    CHECK_THROWS_AS(lp::solve(program({1.0, 1.0}, {{{1.0}, lp::Relation::LessEq, 1.0}})), error);
    CHECK_THROWS_AS(lp::solve(program({1.0}, {}, {{2.0, 1.0}})), error);
}

TEST_CASE("degenerate covering stack terminates via Bland") {
    // Many redundant rows through the same vertex; classic cycling bait.
    const auto sol = lp::solve(program({1.0, 1.0, 1.0},
                                       {{{1.0, 1.0, 0.0}, lp::Relation::GreaterEq, 1.0},
                                        {{1.0, 0.0, 1.0}, lp::Relation::GreaterEq, 1.0},
                                        {{0.0, 1.0, 1.0}, lp::Relation::GreaterEq, 1.0},
                                        {{1.0, 1.0, 1.0}, lp::Relation::GreaterEq, 1.5}}));
    REQUIRE(sol.status == lp::SolveStatus::Optimal);
    CHECK(sol.objective_value == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("random boxes agree with vertex enumeration") {
    Rng rng(7, 0);
    int checked = 0;
    for (int i = 0; i < 25; ++i) {
        const auto prog = oracle::random_box_lp(rng, 2 + i % 4, 1 + i % 5);
        const auto sol = lp::solve(prog);
        REQUIRE(sol.status == lp::SolveStatus::Optimal);
        const auto best = oracle::vertex_optimum(prog);
        REQUIRE(best.has_value());
        CHECK(std::abs(sol.objective_value - *best) /
                  std::max(1.0, std::abs(*best)) <= 1e-6);
        ++checked;
    }
    CHECK(checked == 25);
}

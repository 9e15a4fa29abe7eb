#include "doctest.h"

#include <cmath>

#include "holosched/error.hpp"
#include "holosched/metrics.hpp"

using namespace holosched;

namespace {

model::LatencyReport report_with(std::vector<double> totals) {
    model::LatencyReport rep;
    int id = 0;
    for (double t : totals) {
        model::UserLatency lat;
        lat.total_s = t;
        rep.per_user[id++] = lat;
    }
    return rep;
}

} // namespace

TEST_CASE("resemblance halves at the reference latency") {
    CHECK(metrics::resemblance(0.0) == doctest::Approx(1.0));
    CHECK(metrics::resemblance(0.5) == doctest::Approx(0.5));
    CHECK(metrics::resemblance(0.364, 0.5) ==
          doctest::Approx(0.5787037037037037).epsilon(1e-14));
    CHECK_THROWS_AS(metrics::resemblance(-0.1), error);
    CHECK_THROWS_AS(metrics::resemblance(0.1, 0.0), error);
}

TEST_CASE("resemblance strictly decreases in latency") {
    double prev = metrics::resemblance(0.0);
    for (int i = 1; i <= 1000; ++i) {
        const double r = metrics::resemblance(i * 2e-3);
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("curve interpolates every knot exactly") {
    const metrics::LikabilityCurve curve;
    for (const auto& k : metrics::default_knots())
        CHECK(curve(k.r) == doctest::Approx(k.score).epsilon(1e-12));
    CHECK(curve(0.75) == doctest::Approx(-0.30).epsilon(1e-12));
}

TEST_CASE("curve clamps out-of-range resemblance") {
    const metrics::LikabilityCurve curve;
    CHECK(curve(-0.5) == doctest::Approx(curve(0.0)));
    CHECK(curve(1.5) == doctest::Approx(curve(1.0)));
}

TEST_CASE("interpolation stays monotone between monotone knots") {
    const metrics::LikabilityCurve curve;
    // Knots rise on [0, 0.35] and fall on [0.60, 0.75]; Fritsch-Carlson
    // limiting must not overshoot in between.
    double prev = curve(0.0);
    for (int i = 1; i <= 100; ++i) {
        const double v = curve(0.35 * i / 100.0);
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
    prev = curve(0.60);
    for (int i = 1; i <= 100; ++i) {
        const double v = curve(0.60 + 0.15 * i / 100.0);
        CHECK(v <= prev + 1e-12);
        prev = v;
    }
}

TEST_CASE("composed likability is non-monotone in latency") {
    const metrics::LikabilityCurve curve;
    // r(a) = 0.75 sits in the valley, r(b) = 0.60 on its shoulder.
    const double a = 0.5 * (1.0 / 0.75 - 1.0);
    const double b = 0.5 * (1.0 / 0.60 - 1.0);
    REQUIRE(a < b);
    CHECK(metrics::likability(a, curve) == doctest::Approx(-0.30).epsilon(1e-12));
    CHECK(metrics::likability(b, curve) == doctest::Approx(0.20).epsilon(1e-12));
    CHECK(metrics::likability(a, curve) < metrics::likability(b, curve));
}

TEST_CASE("knot validation") {
    using metrics::Knot;
    CHECK_THROWS_AS(metrics::LikabilityCurve({Knot{0.0, 0.0}}), error);
    CHECK_THROWS_AS(metrics::LikabilityCurve({Knot{0.1, 0.0}, Knot{1.0, 1.0}}), error);
    CHECK_THROWS_AS(metrics::LikabilityCurve({Knot{0.0, 0.0}, Knot{0.9, 1.0}}), error);
    CHECK_THROWS_AS(
        metrics::LikabilityCurve({Knot{0.0, 0.0}, Knot{0.5, 0.2}, Knot{0.5, 0.3}, Knot{1.0, 1.0}}),
        error);
}

TEST_CASE("aggregate pools users across runs") {
    const metrics::LikabilityCurve curve;
    const std::vector<model::LatencyReport> reports = {report_with({0.2, 0.4}),
                                                       report_with({0.3, 0.5})};
    const auto res = metrics::aggregate(reports, curve);
    CHECK(res.n_runs == 2);
    CHECK(res.mean_latency_ms == doctest::Approx(350.0).epsilon(1e-12));
    CHECK(res.std_latency_ms == doctest::Approx(111.8033988749895).epsilon(1e-12));

    double acc = 0.0;
    for (double t : {0.2, 0.4, 0.3, 0.5}) acc += metrics::likability(t, curve);
    CHECK(res.mean_likability == doctest::Approx(acc / 4.0).epsilon(1e-12));

    CHECK_THROWS_AS(metrics::aggregate({}, curve), error);
    CHECK_THROWS_AS(metrics::aggregate({model::LatencyReport{}}, curve), error);
}

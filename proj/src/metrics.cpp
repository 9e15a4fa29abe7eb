#include "holosched/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>
#include <utility>

#include "holosched/error.hpp"

namespace holosched::metrics {

double resemblance(double latency_s, double l_ref_s) {
    if (latency_s < 0.0)
        fail(errc::validation, "latency must be nonnegative, got " + std::to_string(latency_s));
    if (l_ref_s <= 0.0)
        fail(errc::validation, "l_ref must be positive, got " + std::to_string(l_ref_s));
    return 1.0 / (1.0 + latency_s / l_ref_s);
}

std::vector<Knot> default_knots() {
    return {{0.0, 0.0},  {0.35, 0.45}, {0.60, 0.20},
            {0.75, -0.30}, {0.87, 0.10}, {1.0, 1.0}};
}

LikabilityCurve::LikabilityCurve(std::vector<Knot> knots) : knots_(std::move(knots)) {
    if (knots_.size() < 2) fail(errc::validation, "likability curve needs at least two knots");
    if (std::abs(knots_.front().r) > 1e-12 || std::abs(knots_.back().r - 1.0) > 1e-12)
        fail(errc::validation, "likability knots must span r in [0, 1]");
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        if (knots_[i].r <= knots_[i - 1].r)
            fail(errc::validation,
                 "likability knots must be strictly increasing in r, knot " + std::to_string(i) +
                     " is not");
    }

    const std::size_t n = knots_.size();
    std::vector<double> secant(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        secant[i] = (knots_[i + 1].score - knots_[i].score) / (knots_[i + 1].r - knots_[i].r);

    slopes_.assign(n, 0.0);
    slopes_.front() = secant.front();
    slopes_.back() = secant.back();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (secant[i - 1] * secant[i] <= 0.0)
            slopes_[i] = 0.0; // local extremum at the knot
        else
            slopes_[i] = 0.5 * (secant[i - 1] + secant[i]);
    }
    // Fritsch-Carlson cap keeps each segment free of overshoot.
    for (std::size_t i = 0; i < n; ++i) {
        const double left = i > 0 ? std::abs(secant[i - 1]) : std::abs(secant[i]);
        const double right = i + 1 < n ? std::abs(secant[i]) : std::abs(secant[i - 1]);
        const double cap = 3.0 * std::min(left, right);
        slopes_[i] = std::clamp(slopes_[i], -cap, cap);
    }
}

double LikabilityCurve::operator()(double r) const {
    r = std::clamp(r, 0.0, 1.0);
    std::size_t hi = 1;
    while (hi + 1 < knots_.size() && knots_[hi].r < r) ++hi;
    const std::size_t lo = hi - 1;

    const double h = knots_[hi].r - knots_[lo].r;
    const double t = (r - knots_[lo].r) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * knots_[lo].score + h10 * h * slopes_[lo] + h01 * knots_[hi].score +
           h11 * h * slopes_[hi];
}

double likability(double latency_s, const LikabilityCurve& curve, double l_ref_s) {
    return curve(resemblance(latency_s, l_ref_s));
}

namespace {

std::pair<double, double> mean_std(const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size());
    return {mean, std::sqrt(std::max(0.0, var))};
}

} // namespace

PolicyResult aggregate(const std::vector<model::LatencyReport>& reports,
                       const LikabilityCurve& curve, double l_ref_s) {
    if (reports.empty()) fail(errc::validation, "aggregate needs at least one report");

    std::vector<double> latency_ms;
    std::vector<double> scores;
    for (const auto& report : reports) {
        for (const auto& [_, lat] : report.per_user) {
            latency_ms.push_back(lat.total_s * 1e3);
            scores.push_back(likability(lat.total_s, curve, l_ref_s));
        }
    }
    if (latency_ms.empty()) fail(errc::validation, "aggregate saw reports with no users");

    PolicyResult out;
    std::tie(out.mean_latency_ms, out.std_latency_ms) = mean_std(latency_ms);
    std::tie(out.mean_likability, out.std_likability) = mean_std(scores);
    out.n_runs = static_cast<int>(reports.size());
    return out;
}

} // namespace holosched::metrics

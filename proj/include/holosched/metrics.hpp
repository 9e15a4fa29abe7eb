#ifndef HOLOSCHED_METRICS_HPP
#define HOLOSCHED_METRICS_HPP

#include <string>
#include <vector>

#include "holosched/model.hpp"

namespace holosched::metrics {

// Reference latency at which perceived resemblance drops to one half.
inline constexpr double kDefaultLRefS = 0.5;

// Maps end-to-end latency to a resemblance score in (0, 1]:
// r = 1 / (1 + latency / l_ref). Lower latency, higher resemblance.
double resemblance(double latency_s, double l_ref_s = kDefaultLRefS);

struct Knot {
    double r;     // resemblance in [0, 1]
    double score; // likability at that resemblance
};

// Knots tracing an uncanny-valley response: likability climbs with
// resemblance, dips negative near-but-not-at realism, then recovers.
std::vector<Knot> default_knots();

// Piecewise-cubic Hermite interpolant through the knots. Slopes follow
// Fritsch-Carlson limiting, so the curve never overshoots between knots and
// keeps the single valley the knots describe.
class LikabilityCurve {
public:
    explicit LikabilityCurve(std::vector<Knot> knots = default_knots());

    // Evaluates at resemblance r; r is clamped to [0, 1].
    double operator()(double r) const;

    const std::vector<Knot>& knots() const { return knots_; }

private:
    std::vector<Knot> knots_;
    std::vector<double> slopes_;
};

// Convenience composition: curve(resemblance(latency)).
double likability(double latency_s, const LikabilityCurve& curve,
                  double l_ref_s = kDefaultLRefS);

struct PolicyResult {
    std::string policy;
    double mean_latency_ms = 0.0;
    double std_latency_ms = 0.0;
    double mean_likability = 0.0;
    double std_likability = 0.0;
    int n_runs = 0;
};

// Pools every user's total latency across the given runs and summarizes it
// as mean/population-std of latency (ms) and of likability. The policy name
// is left for the caller to fill in.
PolicyResult aggregate(const std::vector<model::LatencyReport>& reports,
                       const LikabilityCurve& curve, double l_ref_s = kDefaultLRefS);

} // namespace holosched::metrics

#endif

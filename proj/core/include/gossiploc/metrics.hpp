#pragma once

#include <cstdint>

#include "gossiploc/gossip.hpp"

namespace gossiploc {

/// Sum over edges of ||A_ij (p_hat_j - p_hat_i)||^2 for the stacked
/// estimate vector. Zero exactly when every bearing constraint holds.
double total_bearing_error(const Framework& fw, const Vec& estimates);

/// Same, using the scenario's cached edge weights.
double total_bearing_error(const Scenario& scen, const Vec& estimates);

/// Euclidean norm of the stacked follower deviation from the truth.
double follower_error(const Scenario& scen, const Vec& estimates);

struct ErrorSummary {
    double bearing_error = 0.0;
    double follower_error = 0.0;
    double ratio = 0.0;  // follower_error / initial follower_error
};

ErrorSummary error_summary(const Scenario& scen, const Vec& estimates);

/// Least-squares slope of ln(bearing_error) vs slot over the post-burn-in
/// records with positive error. Needs at least 10 usable records.
double fit_exponential_rate(const Trace& trace, long burn_in);

struct EpsilonTimeEstimate {
    double epsilon = 0.0;
    long empirical_k = 0;
    double bound_k = 0.0;
    int trials = 0;
    double exceedance_at_bound = 0.0;
};

/// Runs `trials` independently seeded simulations from the scenario's
/// initial estimates and finds the smallest slot k at which the fraction
/// of trials with error ratio >= epsilon drops to <= epsilon. Also reports
/// that fraction at k = ceil(bound_k). Throws BoundNotReached when no
/// k <= max_slots qualifies.
EpsilonTimeEstimate empirical_epsilon_time(const Scenario& scen, double alpha, double epsilon,
                                           int trials, long max_slots, std::uint64_t base_seed);

}  // namespace gossiploc

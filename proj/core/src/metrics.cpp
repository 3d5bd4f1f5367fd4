#include "gossiploc/metrics.hpp"

#include <cmath>

#include "gossiploc/spectral.hpp"

namespace gossiploc {

namespace {

double bearing_error_over_edges(const Framework& fw, const std::vector<Mat>* cached_weights,
                                const Vec& estimates) {
    const int d = fw.dim;
    if (estimates.size() != static_cast<Eigen::Index>(d) * fw.node_count()) {
        throw DimensionMismatch("estimate vector length does not match the framework");
    }
    double total = 0.0;
    for (int k = 0; k < fw.edge_count(); ++k) {
        const Edge& e = fw.edges[k];
        const Mat a_ij =
            cached_weights
                ? (*cached_weights)[k]
                : projection_matrix(bearing_vector(fw.positions[e.a], fw.positions[e.b]));
        const Vec diff = estimates.segment(static_cast<Eigen::Index>(e.b) * d, d) -
                         estimates.segment(static_cast<Eigen::Index>(e.a) * d, d);
        total += (a_ij * diff).squaredNorm();
    }
    return total;
}

}  // namespace

double total_bearing_error(const Framework& fw, const Vec& estimates) {
    return bearing_error_over_edges(fw, nullptr, estimates);
}

double total_bearing_error(const Scenario& scen, const Vec& estimates) {
    return bearing_error_over_edges(scen.fw, &scen.edge_weights, estimates);
}

double follower_error(const Scenario& scen, const Vec& estimates) {
    const int d = scen.fw.dim;
    if (estimates.size() != scen.true_positions.size()) {
        throw DimensionMismatch("estimate vector length does not match the scenario");
    }
    double sq = 0.0;
    for (int node : scen.follower_ids) {
        const Eigen::Index off = static_cast<Eigen::Index>(node) * d;
        sq += (estimates.segment(off, d) - scen.true_positions.segment(off, d)).squaredNorm();
    }
    return std::sqrt(sq);
}

ErrorSummary error_summary(const Scenario& scen, const Vec& estimates) {
    ErrorSummary s;
    s.bearing_error = total_bearing_error(scen, estimates);
    s.follower_error = follower_error(scen, estimates);
    const double initial = follower_error(scen, scen.initial_estimates);
    s.ratio = initial > 0.0 ? s.follower_error / initial : 0.0;
    return s;
}

double fit_exponential_rate(const Trace& trace, long burn_in) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const TraceRecord& rec : trace.records) {
        if (rec.slot >= burn_in && rec.bearing_error > 0.0) {
            xs.push_back(static_cast<double>(rec.slot));
            ys.push_back(std::log(rec.bearing_error));
        }
    }
    if (xs.size() < 10) {
        throw InsufficientData("need at least 10 positive-error records after burn-in");
    }
    const double n = static_cast<double>(xs.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= n;
    mean_y /= n;
    double cov = 0.0, var = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        cov += (xs[i] - mean_x) * (ys[i] - mean_y);
        var += (xs[i] - mean_x) * (xs[i] - mean_x);
    }
    if (var == 0.0) {
        throw InsufficientData("all records share one slot index");
    }
    return cov / var;
}

EpsilonTimeEstimate empirical_epsilon_time(const Scenario& scen, double alpha, double epsilon,
                                           int trials, long max_slots, std::uint64_t base_seed) {
    if (epsilon <= 0.0 || epsilon >= 1.0) {
        throw InvalidParams("epsilon must lie in (0, 1)");
    }
    if (trials < 100) {
        throw InvalidParams("need at least 100 trials");
    }
    if (max_slots < 0) {
        throw InvalidParams("max_slots must be non-negative");
    }

    Eigen::SelfAdjointEigenSolver<Mat> gram_solver(expected_gram_matrix(scen, alpha),
                                                   Eigen::EigenvaluesOnly);
    const double rho = gram_solver.eigenvalues().cwiseAbs().maxCoeff();
    const double bound = epsilon_time_bound(rho, epsilon);

    const double initial = follower_error(scen, scen.initial_estimates);
    std::vector<long> exceed_count(static_cast<std::size_t>(max_slots) + 1, 0);
    for (int t = 0; t < trials; ++t) {
        GossipState state = init_state(scen, base_seed + static_cast<std::uint64_t>(t));
        for (long k = 0; k <= max_slots; ++k) {
            const double ratio = initial > 0.0 ? follower_error(scen, state.estimates) / initial : 0.0;
            if (ratio >= epsilon) {
                ++exceed_count[static_cast<std::size_t>(k)];
            }
            if (k < max_slots) {
                const SlotEvent ev = sample_event(state);
                apply_event(state, ev, alpha);
            }
        }
    }

    long empirical_k = -1;
    for (long k = 0; k <= max_slots; ++k) {
        if (static_cast<double>(exceed_count[static_cast<std::size_t>(k)]) <=
            epsilon * static_cast<double>(trials)) {
            empirical_k = k;
            break;
        }
    }
    const long bound_slot = std::isfinite(bound) ? static_cast<long>(std::ceil(bound)) : -1;
    if (empirical_k < 0 || bound_slot < 0 || bound_slot > max_slots) {
        throw BoundNotReached("no qualifying slot within the search horizon");
    }

    EpsilonTimeEstimate est;
    est.epsilon = epsilon;
    est.empirical_k = empirical_k;
    est.bound_k = bound;
    est.trials = trials;
    est.exceedance_at_bound =
        static_cast<double>(exceed_count[static_cast<std::size_t>(bound_slot)]) /
        static_cast<double>(trials);
    return est;
}

}  // namespace gossiploc

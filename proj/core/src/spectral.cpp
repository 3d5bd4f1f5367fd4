#include "gossiploc/spectral.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "gossiploc/gossip.hpp"

namespace gossiploc {

ExpectedLaplacian expected_laplacian(const Framework& fw, const ProbabilityModel& prob,
                                     const std::vector<int>& beacon_ids) {
    const int n = fw.node_count();
    const int d = fw.dim;
    if (prob.selection.rows() != n || prob.selection.cols() != n) {
        throw DimensionMismatch("probability model size does not match framework");
    }

    ExpectedLaplacian lap;
    lap.dim = d;
    lap.n_beacons = static_cast<int>(beacon_ids.size());
    lap.node_order = beacon_ids;
    std::vector<bool> is_beacon(n, false);
    for (int b : beacon_ids) {
        if (b < 0 || b >= n) {
            throw InvalidParams("beacon id outside the framework");
        }
        is_beacon[b] = true;
    }
    for (int i = 0; i < n; ++i) {
        if (!is_beacon[i]) {
            lap.node_order.push_back(i);
        }
    }
    std::vector<int> slot_of(n);
    for (int s = 0; s < n; ++s) {
        slot_of[lap.node_order[s]] = s;
    }

    lap.full = Mat::Zero(static_cast<Eigen::Index>(n) * d, static_cast<Eigen::Index>(n) * d);
    for (const Edge& e : fw.edges) {
        const Mat a_ij = projection_matrix(bearing_vector(fw.positions[e.a], fw.positions[e.b]));
        const Mat m_ij = (prob(e.a, e.b) + prob(e.b, e.a)) / n * a_ij;
        const Eigen::Index ra = static_cast<Eigen::Index>(slot_of[e.a]) * d;
        const Eigen::Index rb = static_cast<Eigen::Index>(slot_of[e.b]) * d;
        lap.full.block(ra, rb, d, d) -= m_ij;
        lap.full.block(rb, ra, d, d) -= m_ij;
        lap.full.block(ra, ra, d, d) += m_ij;
        lap.full.block(rb, rb, d, d) += m_ij;
    }
    return lap;
}

ExpectedLaplacian expected_laplacian(const Framework& fw, const ProbabilityModel& prob, int n_a) {
    if (n_a < 0 || n_a > fw.node_count()) {
        throw InvalidParams("beacon count outside [0, n]");
    }
    std::vector<int> beacons(n_a);
    std::iota(beacons.begin(), beacons.end(), 0);
    return expected_laplacian(fw, prob, beacons);
}

ExpectedLaplacian expected_laplacian(const Scenario& scen) {
    return expected_laplacian(scen.fw, scen.prob, scen.beacon_ids);
}

RigidityReport laplacian_rank_report(const ExpectedLaplacian& lap, const Framework& fw,
                                     double rel_tol) {
    const int d = fw.dim;
    const int n = fw.node_count();
    RigidityReport report;
    report.rigidity_matrix_rank = numerical_rank(lap.full, rel_tol);
    report.required_rank = d * n - d - 1;
    report.is_rigid = report.rigidity_matrix_rank == report.required_rank;
    report.null_space_dimension = d * n - report.rigidity_matrix_rank;
    return report;
}

Vec grounded_spectrum(const ExpectedLaplacian& lap) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(lap.ff(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

Vec localize_from_beacons(const ExpectedLaplacian& lap, const Vec& beacon_positions) {
    const Mat ff = lap.ff();
    if (beacon_positions.size() != lap.split()) {
        throw DimensionMismatch("beacon position vector has the wrong length");
    }
    Eigen::LDLT<Mat> ldlt(ff);
    const Vec pivots = ldlt.vectorD();
    const double max_pivot = pivots.cwiseAbs().maxCoeff();
    if (ldlt.info() != Eigen::Success || pivots.minCoeff() <= 1e-12 * max_pivot) {
        throw SingularGroundedLaplacian("grounded Laplacian is not positive definite");
    }
    const Vec rhs = -lap.fa() * beacon_positions;
    const Vec p_f = ldlt.solve(rhs);
    const double residual = (ff * p_f - rhs).norm();
    if (residual > 1e-8 * (rhs.norm() + 1.0)) {
        throw SingularGroundedLaplacian("beacon-anchored solve did not converge");
    }
    return p_f;
}

StepSizeBounds step_size_bounds(const ExpectedLaplacian& lap, const Framework& fw) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(lap.ff(), Eigen::EigenvaluesOnly);
    const Vec eigs = solver.eigenvalues();
    const double lambda_max = eigs(eigs.size() - 1);
    if (eigs(0) <= 1e-12 * std::abs(lambda_max) || lambda_max <= 0.0) {
        throw SingularGroundedLaplacian("grounded Laplacian is not positive definite");
    }

    std::vector<bool> is_beacon(fw.node_count(), false);
    for (int s = 0; s < lap.n_beacons; ++s) {
        is_beacon[lap.node_order[s]] = true;
    }

    // Per-event gain along the estimate-difference direction: a single
    // follower steps by alpha*||A||, but when both endpoints are followers
    // they step toward each other and the difference moves twice as fast.
    // The slot update stays a contraction only while alpha times this gain
    // stays below 2.
    double max_event_gain = 0.0;
    for (const Edge& e : fw.edges) {
        const Mat a_ij = projection_matrix(bearing_vector(fw.positions[e.a], fw.positions[e.b]));
        Eigen::SelfAdjointEigenSolver<Mat> edge_solver(a_ij, Eigen::EigenvaluesOnly);
        const double norm = edge_solver.eigenvalues().cwiseAbs().maxCoeff();
        const bool both_followers = !is_beacon[e.a] && !is_beacon[e.b];
        max_event_gain = std::max(max_event_gain, both_followers ? 2.0 * norm : norm);
    }

    StepSizeBounds bounds;
    bounds.lambda_max_Lff = lambda_max;
    bounds.mean_bound = 2.0 / lambda_max;
    bounds.second_moment_bound = std::min(bounds.mean_bound, 2.0 / max_event_gain);
    return bounds;
}

namespace {

/// Enumerates every (waker, partner) event with its probability (1/n)P_ij.
template <typename Fn>
void for_each_event(const Scenario& scen, Fn&& fn) {
    const int n = scen.fw.node_count();
    for (const Edge& e : scen.fw.edges) {
        for (auto [i, j] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
            const double p = scen.prob(i, j) / n;
            if (p > 0.0) {
                fn(SlotEvent{i, j, classify_event(scen, i, j)}, p);
            }
        }
    }
}

}  // namespace

Mat expected_update_matrix(const Scenario& scen, double alpha) {
    const Eigen::Index size = static_cast<Eigen::Index>(scen.fw.dim) * scen.n_followers();
    Mat expectation = Mat::Zero(size, size);
    double total_prob = 0.0;
    for_each_event(scen, [&](const SlotEvent& ev, double p) {
        expectation += p * build_update_matrix(scen, ev, alpha);
        total_prob += p;
    });
    // Selection mass not assigned to any edge leaves the state unchanged.
    expectation += (1.0 - total_prob) * Mat::Identity(size, size);
    return expectation;
}

Mat expected_gram_matrix(const Scenario& scen, double alpha) {
    const Eigen::Index size = static_cast<Eigen::Index>(scen.fw.dim) * scen.n_followers();
    Mat expectation = Mat::Zero(size, size);
    double total_prob = 0.0;
    for_each_event(scen, [&](const SlotEvent& ev, double p) {
        const Mat w = build_update_matrix(scen, ev, alpha);
        expectation += p * w.transpose() * w;
        total_prob += p;
    });
    expectation += (1.0 - total_prob) * Mat::Identity(size, size);
    return expectation;
}

double epsilon_time_bound(double rho_gram, double epsilon) {
    if (epsilon <= 0.0 || epsilon >= 1.0) {
        throw InvalidParams("epsilon must lie in (0, 1)");
    }
    if (rho_gram >= 1.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 3.0 * std::log(1.0 / epsilon) / std::log(1.0 / rho_gram);
}

double default_alpha(const StepSizeBounds& bounds) { return 0.9 * bounds.second_moment_bound; }

SpectralReport spectral_report(const Scenario& scen, double alpha,
                               const std::vector<double>& eps_list) {
    if (scen.n_beacons() < 2) {
        throw TooFewBeacons("spectral report needs at least two beacons");
    }
    const ExpectedLaplacian lap = expected_laplacian(scen);
    const StepSizeBounds bounds = step_size_bounds(lap, scen.fw);

    SpectralReport report;
    report.lambda_max_Lff = bounds.lambda_max_Lff;
    report.mean_bound = bounds.mean_bound;
    report.second_moment_bound = bounds.second_moment_bound;
    report.alpha_used = alpha;
    report.alpha_admissible = alpha > 0.0 && alpha < bounds.second_moment_bound;

    Eigen::SelfAdjointEigenSolver<Mat> ew_solver(expected_update_matrix(scen, alpha),
                                                 Eigen::EigenvaluesOnly);
    report.rho_EW = ew_solver.eigenvalues().cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<Mat> gram_solver(expected_gram_matrix(scen, alpha),
                                                   Eigen::EigenvaluesOnly);
    report.rho_EWtW = gram_solver.eigenvalues().cwiseAbs().maxCoeff();

    for (double eps : eps_list) {
        report.k_epsilon[eps] = epsilon_time_bound(report.rho_EWtW, eps);
    }
    return report;
}

}  // namespace gossiploc

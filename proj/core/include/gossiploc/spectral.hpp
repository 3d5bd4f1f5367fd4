#pragma once

#include <map>
#include <vector>

#include "gossiploc/network.hpp"

namespace gossiploc {

/// Expected matrix-weighted Laplacian in beacon-first node order.
///
/// `full` is the nd x nd symmetric PSD matrix whose off-diagonal block for
/// edge (i,j) is -(1/n)(A_ij P_ij + A_ji P_ji) and whose diagonal blocks
/// are the negated row sums. `node_order` maps block index -> global node
/// id, with the beacons occupying the first n_beacons slots.
struct ExpectedLaplacian {
    Mat full;
    std::vector<int> node_order;
    int n_beacons = 0;
    int dim = 0;

    Eigen::Index split() const { return static_cast<Eigen::Index>(dim) * n_beacons; }
    Mat aa() const { return full.topLeftCorner(split(), split()); }
    Mat af() const { return full.topRightCorner(split(), full.cols() - split()); }
    Mat fa() const { return full.bottomLeftCorner(full.rows() - split(), split()); }
    Mat ff() const { return full.bottomRightCorner(full.rows() - split(), full.cols() - split()); }
};

/// Assembles the expected Laplacian with the first n_a nodes as beacons.
ExpectedLaplacian expected_laplacian(const Framework& fw, const ProbabilityModel& prob, int n_a);

/// Same, with an arbitrary beacon set (nodes are permuted beacons-first).
ExpectedLaplacian expected_laplacian(const Framework& fw, const ProbabilityModel& prob,
                                     const std::vector<int>& beacon_ids);

/// Convenience: expected Laplacian of a scenario.
ExpectedLaplacian expected_laplacian(const Scenario& scen);

/// Rank report of the full expected Laplacian; matches the rigidity test
/// verdict because the Laplacian and the rigidity matrix share rank and
/// null space.
RigidityReport laplacian_rank_report(const ExpectedLaplacian& lap, const Framework& fw,
                                     double rel_tol = kDefaultRankTol);

/// Ascending eigenvalues of the grounded (follower-follower) block.
Vec grounded_spectrum(const ExpectedLaplacian& lap);

/// Recovers follower positions from beacon positions by solving
/// L_ff p_f = -L_fa p_a. Throws SingularGroundedLaplacian when L_ff is
/// not positive definite (non-rigid network or fewer than two beacons).
Vec localize_from_beacons(const ExpectedLaplacian& lap, const Vec& beacon_positions);

struct StepSizeBounds {
    double mean_bound = 0.0;           // 2 / lambda_max(L_ff)
    double second_moment_bound = 0.0;  // min(mean_bound, 2/max event gain)
    double lambda_max_Lff = 0.0;
};

StepSizeBounds step_size_bounds(const ExpectedLaplacian& lap, const Framework& fw);

/// E[W(k)] by brute-force enumeration of every (waker, partner) event.
/// Equals I - alpha * L_ff up to round-off.
Mat expected_update_matrix(const Scenario& scen, double alpha);

/// E[W(k)^T W(k)] by the same enumeration; symmetric PSD.
Mat expected_gram_matrix(const Scenario& scen, double alpha);

/// Slot-count bound for reaching ratio epsilon: 3 ln(1/eps) / ln(1/rho).
double epsilon_time_bound(double rho_gram, double epsilon);

struct SpectralReport {
    double lambda_max_Lff = 0.0;
    double mean_bound = 0.0;
    double second_moment_bound = 0.0;
    double alpha_used = 0.0;
    bool alpha_admissible = true;
    double rho_EW = 0.0;
    double rho_EWtW = 0.0;
    std::map<double, double> k_epsilon;
};

/// Full spectral summary for a scenario. An inadmissible alpha is flagged,
/// not rejected. Each epsilon must lie in (0,1).
SpectralReport spectral_report(const Scenario& scen, double alpha,
                               const std::vector<double>& eps_list);

/// 0.9 x second_moment_bound, the default step size.
double default_alpha(const StepSizeBounds& bounds);

}  // namespace gossiploc

#pragma once

#include <cstdint>
#include <vector>

#include "gossiploc/geometry.hpp"

namespace gossiploc {

/// Per-node neighbor selection distribution. Row i is supported on the
/// neighbors of i and sums to 1 for every non-isolated node.
struct ProbabilityModel {
    Mat selection;  // n x n

    double operator()(int i, int j) const { return selection(i, j); }
};

/// Uniform selection over neighbors: P_ij = 1/|N_i|.
/// Throws IsolatedNode if some node has no neighbors.
ProbabilityModel uniform_selection(const Framework& fw);

/// Edge (i,j) present iff ||p_i - p_j|| <= radius (inclusive).
Framework proximity_graph(const std::vector<Vec>& positions, double radius);

/// The 33x33 benchmark mesh: x,y on [-8:0.5:8], z = sin(r)/r (z = 1 at r = 0).
std::vector<Vec> gen_sinc_mesh();

/// Same surface on a reduced grid with the given half width and spacing.
std::vector<Vec> gen_sinc_mesh_scaled(double half_width, double spacing);

/// Sinc-mesh framework whose edges connect nodes within `radius` measured
/// on the ground plane (x, y only), so the neighbor pattern is a uniform
/// grid regardless of the surface height.
Framework sinc_mesh_framework(double half_width, double spacing, double radius);

/// Axis-aligned sampling box for the initial follower estimates.
struct Box {
    std::vector<std::pair<double, double>> ranges;  // one (lo, hi) per axis

    static Box standard(int dim);  // [-8,8] per axis, z capped at 2 in 3-D
};

/// An immutable simulation setup: framework, beacons, selection
/// probabilities, true positions, initial estimates, and the per-edge
/// projection weights computed once from the true positions.
struct Scenario {
    Framework fw;
    std::vector<int> beacon_ids;    // sorted global node indices
    std::vector<int> follower_ids;  // complement, global order
    ProbabilityModel prob;
    Vec true_positions;     // stacked dn
    Vec initial_estimates;  // stacked dn; beacon blocks equal true positions
    std::vector<Mat> edge_weights;  // A_k per canonical edge
    std::uint64_t seed = 0;

    int n_beacons() const { return static_cast<int>(beacon_ids.size()); }
    int n_followers() const { return static_cast<int>(follower_ids.size()); }
    bool is_beacon(int node) const;
    /// Position of `node` in the compacted follower ordering; -1 for beacons.
    int follower_index(int node) const;
    /// Content hash over dimension, positions, edges and beacons.
    std::uint64_t hash() const;
};

/// Builds a scenario: pins beacons to their true positions and samples the
/// follower initial estimates uniformly from `init_box` (deterministic in
/// `seed`). Throws TooFewBeacons if fewer than two beacons are given.
Scenario make_scenario(const Framework& fw, std::vector<int> beacon_ids,
                       ProbabilityModel prob, const Box& init_box, std::uint64_t seed);

/// The two four-node reference frameworks used throughout the tests: the
/// rigid one has five edges, the non-rigid one drops edge (1,2).
Framework quad_rigid_example();
Framework quad_nonrigid_example();

}  // namespace gossiploc

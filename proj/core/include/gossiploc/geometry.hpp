#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gossiploc/errors.hpp"

namespace gossiploc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Nodes two positions may coincide within before an edge is degenerate.
inline constexpr double kCoincidenceTol = 1e-12;

/// Singular values below rel_tol * sigma_max count as zero in rank tests.
inline constexpr double kDefaultRankTol = 1e-9;

/// Undirected edge stored with a < b (canonical orientation: low to high).
struct Edge {
    int a = 0;
    int b = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// A graph embedded in R^d: node positions plus a canonical edge list.
///
/// Edges are stored lexicographically sorted with a < b. Construction
/// rejects self-loops, duplicate edges, and coincident edge endpoints.
struct Framework {
    int dim = 0;
    std::vector<Vec> positions;
    std::vector<Edge> edges;

    int node_count() const { return static_cast<int>(positions.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }

    /// All positions stacked into one dn-vector (node-major).
    Vec stacked_positions() const;

    /// Validates and canonicalizes. Edge pairs may come in either order.
    static Framework make(int dim, std::vector<Vec> positions,
                          const std::vector<std::pair<int, int>>& edges);
};

/// Unit vector from p_j toward p_i: (p_i - p_j)/||p_i - p_j||.
Vec bearing_vector(const Vec& p_i, const Vec& p_j);

/// Orthogonal projection onto the complement of g: I - g g^T.
/// Throws NonUnitInput unless ||g|| is 1 within 1e-9.
Mat projection_matrix(const Vec& g);

/// Stacked bearing vectors, one d-block per canonical edge (length dm).
Vec bearing_function(const Framework& fw);

/// The dm x dn Jacobian of the bearing function with respect to positions.
/// Row block k is A_k/len_k at column a and -A_k/len_k at column b.
Mat bearing_rigidity_matrix(const Framework& fw);

struct RigidityReport {
    int rigidity_matrix_rank = 0;
    int required_rank = 0;  // dn - d - 1
    bool is_rigid = false;
    int null_space_dimension = 0;
};

/// Numerical rank test of the bearing rigidity matrix. The framework is
/// infinitesimally bearing rigid iff rank == dn - d - 1.
RigidityReport rigidity_test(const Framework& fw, double rel_tol = kDefaultRankTol);

/// Rank of a general matrix by SVD with a relative singular value cutoff.
int numerical_rank(const Mat& m, double rel_tol = kDefaultRankTol);

}  // namespace gossiploc

#include "gossiploc/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace gossiploc {

Vec Framework::stacked_positions() const {
    Vec p(static_cast<Eigen::Index>(dim) * node_count());
    for (int i = 0; i < node_count(); ++i) {
        p.segment(static_cast<Eigen::Index>(i) * dim, dim) = positions[i];
    }
    return p;
}

Framework Framework::make(int dim, std::vector<Vec> positions,
                          const std::vector<std::pair<int, int>>& edges) {
    if (dim < 2) {
        throw InvalidParams("framework dimension must be >= 2");
    }
    const int n = static_cast<int>(positions.size());
    for (const Vec& p : positions) {
        if (p.size() != dim) {
            throw DimensionMismatch("position dimension does not match framework dimension");
        }
        if (!p.allFinite()) {
            throw InvalidParams("position has non-finite entries");
        }
    }

    std::vector<Edge> canonical;
    canonical.reserve(edges.size());
    for (auto [i, j] : edges) {
        if (i < 0 || j < 0 || i >= n || j >= n) {
            throw InvalidParams("edge references a node outside the framework");
        }
        if (i == j) {
            throw InvalidParams("self-loop edge");
        }
        canonical.push_back({std::min(i, j), std::max(i, j)});
    }
    std::sort(canonical.begin(), canonical.end(),
              [](const Edge& x, const Edge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    if (std::adjacent_find(canonical.begin(), canonical.end()) != canonical.end()) {
        throw InvalidParams("duplicate edge");
    }
    for (const Edge& e : canonical) {
        if ((positions[e.a] - positions[e.b]).norm() <= kCoincidenceTol) {
            throw CoincidentNodes("edge endpoints coincide");
        }
    }

    Framework fw;
    fw.dim = dim;
    fw.positions = std::move(positions);
    fw.edges = std::move(canonical);
    return fw;
}

Vec bearing_vector(const Vec& p_i, const Vec& p_j) {
    if (p_i.size() != p_j.size()) {
        throw DimensionMismatch("bearing endpoints have different dimensions");
    }
    const Vec diff = p_i - p_j;
    const double len = diff.norm();
    if (len <= kCoincidenceTol) {
        throw CoincidentNodes("cannot form a bearing between coincident nodes");
    }
    return diff / len;
}

Mat projection_matrix(const Vec& g) {
    if (std::abs(g.norm() - 1.0) > 1e-9) {
        throw NonUnitInput("projection input is not a unit vector");
    }
    const auto d = g.size();
    return Mat::Identity(d, d) - g * g.transpose();
}

Vec bearing_function(const Framework& fw) {
    const int d = fw.dim;
    Vec f(static_cast<Eigen::Index>(d) * fw.edge_count());
    for (int k = 0; k < fw.edge_count(); ++k) {
        const Edge& e = fw.edges[k];
        f.segment(static_cast<Eigen::Index>(k) * d, d) =
            bearing_vector(fw.positions[e.a], fw.positions[e.b]);
    }
    return f;
}

Mat bearing_rigidity_matrix(const Framework& fw) {
    const int d = fw.dim;
    const int n = fw.node_count();
    const int m = fw.edge_count();
    Mat rb = Mat::Zero(static_cast<Eigen::Index>(d) * m, static_cast<Eigen::Index>(d) * n);
    for (int k = 0; k < m; ++k) {
        const Edge& e = fw.edges[k];
        const Vec diff = fw.positions[e.a] - fw.positions[e.b];
        const double len = diff.norm();
        const Mat block = projection_matrix(bearing_vector(fw.positions[e.a], fw.positions[e.b])) / len;
        rb.block(static_cast<Eigen::Index>(k) * d, static_cast<Eigen::Index>(e.a) * d, d, d) = block;
        rb.block(static_cast<Eigen::Index>(k) * d, static_cast<Eigen::Index>(e.b) * d, d, d) = -block;
    }
    return rb;
}

int numerical_rank(const Mat& m, double rel_tol) {
    if (m.size() == 0) {
        return 0;
    }
    Eigen::JacobiSVD<Mat> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) {
        return 0;
    }
    const double cutoff = rel_tol * sv(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) {
            ++rank;
        }
    }
    return rank;
}

RigidityReport rigidity_test(const Framework& fw, double rel_tol) {
    const int d = fw.dim;
    const int n = fw.node_count();
    const Mat rb = bearing_rigidity_matrix(fw);

    RigidityReport report;
    report.rigidity_matrix_rank = numerical_rank(rb, rel_tol);
    report.required_rank = d * n - d - 1;
    report.is_rigid = report.rigidity_matrix_rank == report.required_rank;
    report.null_space_dimension = d * n - report.rigidity_matrix_rank;
    return report;
}

}  // namespace gossiploc

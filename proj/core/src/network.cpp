#include "gossiploc/network.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>

namespace gossiploc {

ProbabilityModel uniform_selection(const Framework& fw) {
    const int n = fw.node_count();
    std::vector<int> degree(n, 0);
    for (const Edge& e : fw.edges) {
        ++degree[e.a];
        ++degree[e.b];
    }
    for (int i = 0; i < n; ++i) {
        if (degree[i] == 0) {
            throw IsolatedNode("node " + std::to_string(i) + " has no neighbors");
        }
    }
    ProbabilityModel pm;
    pm.selection = Mat::Zero(n, n);
    for (const Edge& e : fw.edges) {
        pm.selection(e.a, e.b) = 1.0 / degree[e.a];
        pm.selection(e.b, e.a) = 1.0 / degree[e.b];
    }
    return pm;
}

Framework proximity_graph(const std::vector<Vec>& positions, double radius) {
    if (radius <= 0.0) {
        throw InvalidParams("proximity radius must be positive");
    }
    const int n = static_cast<int>(positions.size());
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dist = (positions[i] - positions[j]).norm();
            if (dist <= kCoincidenceTol) {
                throw CoincidentNodes("two positions coincide");
            }
            if (dist <= radius) {
                edges.emplace_back(i, j);
            }
        }
    }
    const int dim = positions.empty() ? 2 : static_cast<int>(positions[0].size());
    return Framework::make(dim, positions, edges);
}

namespace {

double sinc_height(double x, double y) {
    const double r = std::sqrt(x * x + y * y);
    return r == 0.0 ? 1.0 : std::sin(r) / r;
}

}  // namespace

std::vector<Vec> gen_sinc_mesh_scaled(double half_width, double spacing) {
    if (half_width <= 0.0 || spacing <= 0.0 || spacing > half_width) {
        throw InvalidParams("need 0 < spacing <= half_width");
    }
    const int steps = static_cast<int>(std::lround(2.0 * half_width / spacing));
    std::vector<Vec> positions;
    positions.reserve(static_cast<std::size_t>(steps + 1) * (steps + 1));
    for (int ix = 0; ix <= steps; ++ix) {
        const double x = -half_width + ix * spacing;
        for (int iy = 0; iy <= steps; ++iy) {
            const double y = -half_width + iy * spacing;
            Vec p(3);
            p << x, y, sinc_height(x, y);
            positions.push_back(std::move(p));
        }
    }
    return positions;
}

std::vector<Vec> gen_sinc_mesh() { return gen_sinc_mesh_scaled(8.0, 0.5); }

Framework sinc_mesh_framework(double half_width, double spacing, double radius) {
    if (radius <= 0.0) {
        throw InvalidParams("proximity radius must be positive");
    }
    const std::vector<Vec> positions = gen_sinc_mesh_scaled(half_width, spacing);
    const int n = static_cast<int>(positions.size());
    std::vector<std::pair<int, int>> edges;
    // Neighbors are selected by ground-plane (x, y) separation so that the
    // surface height does not perturb the grid's neighbor pattern; at radius
    // sqrt(2)/2 every 4-neighbor and diagonal grid edge is present. The small
    // slack absorbs round-off in distances that hit the radius exactly.
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dist = (positions[i].head(2) - positions[j].head(2)).norm();
            if (dist <= radius + 1e-12) {
                edges.emplace_back(i, j);
            }
        }
    }
    return Framework::make(3, positions, edges);
}

Box Box::standard(int dim) {
    Box box;
    box.ranges.assign(dim, {-8.0, 8.0});
    if (dim >= 3) {
        box.ranges[2] = {-8.0, 2.0};
    }
    return box;
}

bool Scenario::is_beacon(int node) const {
    return std::binary_search(beacon_ids.begin(), beacon_ids.end(), node);
}

int Scenario::follower_index(int node) const {
    const auto it = std::lower_bound(follower_ids.begin(), follower_ids.end(), node);
    if (it == follower_ids.end() || *it != node) {
        return -1;
    }
    return static_cast<int>(it - follower_ids.begin());
}

std::uint64_t Scenario::hash() const {
    // FNV-1a over the geometric content; enough to tag traces.
    std::uint64_t h = 14695981039346656037ull;
    auto mix = [&h](std::uint64_t v) {
        for (int byte = 0; byte < 8; ++byte) {
            h ^= (v >> (8 * byte)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(static_cast<std::uint64_t>(fw.dim));
    for (const Vec& p : fw.positions) {
        for (Eigen::Index c = 0; c < p.size(); ++c) {
            std::uint64_t bits;
            const double v = p(c);
            std::memcpy(&bits, &v, sizeof bits);
            mix(bits);
        }
    }
    for (const Edge& e : fw.edges) {
        mix(static_cast<std::uint64_t>(e.a) << 32 | static_cast<std::uint32_t>(e.b));
    }
    for (int b : beacon_ids) {
        mix(static_cast<std::uint64_t>(b));
    }
    return h;
}

Scenario make_scenario(const Framework& fw, std::vector<int> beacon_ids,
                       ProbabilityModel prob, const Box& init_box, std::uint64_t seed) {
    std::sort(beacon_ids.begin(), beacon_ids.end());
    beacon_ids.erase(std::unique(beacon_ids.begin(), beacon_ids.end()), beacon_ids.end());
    if (static_cast<int>(beacon_ids.size()) < 2) {
        throw TooFewBeacons("a localizable scenario needs at least two beacons");
    }
    const int n = fw.node_count();
    for (int b : beacon_ids) {
        if (b < 0 || b >= n) {
            throw InvalidParams("beacon id outside the framework");
        }
    }
    if (static_cast<int>(beacon_ids.size()) >= n) {
        throw InvalidParams("at least one follower is required");
    }
    if (prob.selection.rows() != n || prob.selection.cols() != n) {
        throw DimensionMismatch("probability model size does not match framework");
    }
    if (static_cast<int>(init_box.ranges.size()) != fw.dim) {
        throw DimensionMismatch("init box dimension does not match framework");
    }

    Scenario scen;
    scen.fw = fw;
    scen.beacon_ids = std::move(beacon_ids);
    scen.prob = std::move(prob);
    scen.seed = seed;
    for (int i = 0; i < n; ++i) {
        if (!std::binary_search(scen.beacon_ids.begin(), scen.beacon_ids.end(), i)) {
            scen.follower_ids.push_back(i);
        }
    }

    scen.true_positions = fw.stacked_positions();
    scen.initial_estimates = scen.true_positions;
    std::mt19937_64 rng(seed);
    for (int node : scen.follower_ids) {
        for (int c = 0; c < fw.dim; ++c) {
            const auto [lo, hi] = init_box.ranges[c];
            std::uniform_real_distribution<double> dist(lo, hi);
            scen.initial_estimates(static_cast<Eigen::Index>(node) * fw.dim + c) = dist(rng);
        }
    }

    scen.edge_weights.reserve(fw.edges.size());
    for (const Edge& e : fw.edges) {
        scen.edge_weights.push_back(
            projection_matrix(bearing_vector(fw.positions[e.a], fw.positions[e.b])));
    }
    return scen;
}

Framework quad_rigid_example() {
    std::vector<Vec> pos(4, Vec(2));
    pos[0] << 1, 1;
    pos[1] << 0, 0;
    pos[2] << 0, 1;
    pos[3] << -1, 0;
    return Framework::make(2, pos, {{0, 1}, {1, 3}, {3, 2}, {2, 1}, {0, 2}});
}

Framework quad_nonrigid_example() {
    std::vector<Vec> pos(4, Vec(2));
    pos[0] << 1, 1;
    pos[1] << 0, 0;
    pos[2] << 0, 1;
    pos[3] << -1, 0;
    return Framework::make(2, pos, {{0, 1}, {1, 3}, {3, 2}, {0, 2}});
}

}  // namespace gossiploc

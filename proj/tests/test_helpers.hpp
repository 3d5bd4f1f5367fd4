#pragma once

#include <random>
#include <vector>

#include "gossiploc/network.hpp"

namespace gossiploc::testing {

/// Two beacons at (0,0) and (2,0), one follower at (1,1), edges to both
/// beacons. The grounded Laplacian works out to 0.5 * I.
inline Scenario three_node_scenario(std::uint64_t seed = 7) {
    std::vector<Vec> pos(3, Vec(2));
    pos[0] << 0, 0;
    pos[1] << 2, 0;
    pos[2] << 1, 1;
    const Framework fw = Framework::make(2, pos, {{0, 2}, {1, 2}});
    return make_scenario(fw, {0, 1}, uniform_selection(fw), Box::standard(2), seed);
}

inline Scenario quad_scenario(std::uint64_t seed = 7) {
    const Framework fw = quad_rigid_example();
    return make_scenario(fw, {0, 1}, uniform_selection(fw), Box::standard(2), seed);
}

inline Framework random_complete_framework(std::mt19937_64& rng, int n, int dim) {
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    std::vector<Vec> pos(n, Vec(dim));
    for (Vec& p : pos) {
        for (int c = 0; c < dim; ++c) {
            p(c) = coord(rng);
        }
    }
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            edges.emplace_back(i, j);
        }
    }
    return Framework::make(dim, pos, edges);
}

inline Framework random_path_framework(std::mt19937_64& rng, int n, int dim) {
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    std::vector<Vec> pos(n, Vec(dim));
    for (Vec& p : pos) {
        for (int c = 0; c < dim; ++c) {
            p(c) = coord(rng);
        }
    }
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) {
        edges.emplace_back(i, i + 1);
    }
    return Framework::make(dim, pos, edges);
}

}  // namespace gossiploc::testing

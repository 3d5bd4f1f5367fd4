#include <doctest.h>

#include <cmath>
#include <queue>

#include "gossiploc/network.hpp"
#include "test_helpers.hpp"

using namespace gossiploc;

namespace {

Vec vec2(double x, double y) {
    Vec v(2);
    v << x, y;
    return v;
}

bool has_edge(const Framework& fw, int i, int j) {
    const Edge key{std::min(i, j), std::max(i, j)};
    for (const Edge& e : fw.edges) {
        if (e == key) {
            return true;
        }
    }
    return false;
}

bool is_connected(const Framework& fw) {
    const int n = fw.node_count();
    std::vector<std::vector<int>> adj(n);
    for (const Edge& e : fw.edges) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    std::vector<bool> seen(n, false);
    std::queue<int> queue;
    queue.push(0);
    seen[0] = true;
    int count = 1;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop();
        for (int v : adj[u]) {
            if (!seen[v]) {
                seen[v] = true;
                ++count;
                queue.push(v);
            }
        }
    }
    return count == n;
}

}  // namespace

TEST_CASE("proximity_graph links nodes within the radius") {
    const Framework fw =
        proximity_graph({vec2(0, 0), vec2(0.5, 0), vec2(1.2, 0)}, 0.7);
    REQUIRE(fw.edge_count() == 2);
    CHECK(has_edge(fw, 0, 1));
    CHECK(has_edge(fw, 1, 2));
}

TEST_CASE("proximity_graph boundary is inclusive") {
    const Framework fw = proximity_graph({vec2(0, 0), vec2(0.7, 0)}, 0.7);
    CHECK(fw.edge_count() == 1);
}

TEST_CASE("proximity_graph rejects coincident positions") {
    CHECK_THROWS_AS(proximity_graph({vec2(0, 0), vec2(0, 0)}, 1.0), CoincidentNodes);
}

TEST_CASE("sinc mesh has 1089 nodes with the expected heights") {
    const auto positions = gen_sinc_mesh();
    REQUIRE(positions.size() == 1089);
    for (const Vec& p : positions) {
        if (p(0) == 0.0 && p(1) == 0.0) {
            CHECK(p(2) == doctest::Approx(1.0));
        }
        if (p(0) == 8.0 && p(1) == 0.0) {
            CHECK(p(2) == doctest::Approx(std::sin(8.0) / 8.0));
        }
    }
}

TEST_CASE("scaled sinc mesh grid counts") {
    CHECK(gen_sinc_mesh_scaled(2.0, 0.5).size() == 81);
    CHECK(gen_sinc_mesh_scaled(1.0, 1.0).size() == 9);
}

TEST_CASE("scaled sinc mesh at full width reproduces the reference mesh") {
    const auto full = gen_sinc_mesh();
    const auto scaled = gen_sinc_mesh_scaled(8.0, 0.5);
    REQUIRE(full.size() == scaled.size());
    for (std::size_t i = 0; i < full.size(); ++i) {
        CHECK((full[i] - scaled[i]).norm() == 0.0);
    }
}

TEST_CASE("sinc mesh proximity graph is connected with grid edges") {
    const Framework fw = proximity_graph(gen_sinc_mesh_scaled(2.0, 0.5), std::sqrt(2.0) / 2.0);
    CHECK(is_connected(fw));
    // Axis-aligned grid neighbors are always within the radius.
    const int side = 9;
    for (int ix = 0; ix < side; ++ix) {
        for (int iy = 0; iy + 1 < side; ++iy) {
            CHECK(has_edge(fw, ix * side + iy, ix * side + iy + 1));
        }
    }
}

TEST_CASE("sinc mesh framework uses ground-plane adjacency") {
    const Framework fw = sinc_mesh_framework(2.0, 0.5, std::sqrt(2.0) / 2.0);
    CHECK(fw.node_count() == 81);
    // Full 8-neighbor grid: 2*9*8 axis edges plus 2*8*8 diagonals.
    CHECK(fw.edge_count() == 272);
    CHECK(is_connected(fw));
    const int side = 9;
    // Diagonals are present even where the surface heights differ, because
    // only the (x, y) separation counts.
    for (int ix = 0; ix + 1 < side; ++ix) {
        for (int iy = 0; iy + 1 < side; ++iy) {
            CHECK(has_edge(fw, ix * side + iy, (ix + 1) * side + iy + 1));
        }
    }
    CHECK_THROWS_AS(sinc_mesh_framework(2.0, 0.5, -1.0), InvalidParams);
}

TEST_CASE("uniform_selection spreads mass evenly over neighbors") {
    const Framework fw =
        Framework::make(2, {vec2(0, 0), vec2(1, 0), vec2(0, 1), vec2(1, 1)},
                        {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {0, 3}});
    const ProbabilityModel pm = uniform_selection(fw);
    CHECK(pm(0, 1) == doctest::Approx(1.0 / 3.0));
    CHECK(pm(0, 2) == doctest::Approx(1.0 / 3.0));
    CHECK(pm(0, 3) == doctest::Approx(1.0 / 3.0));
    CHECK(pm(1, 0) == doctest::Approx(0.5));
    for (int i = 0; i < 4; ++i) {
        CHECK(pm.selection.row(i).sum() == doctest::Approx(1.0).epsilon(1e-12));
    }
    // Assumption on pairwise activation: both directions together positive.
    for (const Edge& e : fw.edges) {
        CHECK(pm(e.a, e.b) + pm(e.b, e.a) > 0.0);
    }
}

TEST_CASE("uniform_selection rejects isolated nodes") {
    const Framework fw =
        Framework::make(2, {vec2(0, 0), vec2(1, 0), vec2(5, 5)}, {{0, 1}});
    CHECK_THROWS_AS(uniform_selection(fw), IsolatedNode);
}

TEST_CASE("make_scenario requires two beacons") {
    const Framework fw = quad_rigid_example();
    CHECK_THROWS_AS(make_scenario(fw, {0}, uniform_selection(fw), Box::standard(2), 1),
                    TooFewBeacons);
}

TEST_CASE("make_scenario pins beacons and is deterministic in the seed") {
    const Scenario a = gossiploc::testing::quad_scenario(42);
    const Scenario b = gossiploc::testing::quad_scenario(42);
    const Scenario c = gossiploc::testing::quad_scenario(43);
    CHECK((a.initial_estimates - b.initial_estimates).norm() == 0.0);
    CHECK((a.initial_estimates - c.initial_estimates).norm() != 0.0);
    for (int beacon : a.beacon_ids) {
        const Eigen::Index off = static_cast<Eigen::Index>(beacon) * a.fw.dim;
        CHECK((a.initial_estimates.segment(off, a.fw.dim) -
               a.true_positions.segment(off, a.fw.dim))
                  .norm() == 0.0);
    }
    CHECK(a.initial_estimates.allFinite());
}

TEST_CASE("follower indexing compacts the global order") {
    const Scenario scen = gossiploc::testing::three_node_scenario();
    CHECK(scen.n_beacons() == 2);
    CHECK(scen.n_followers() == 1);
    CHECK(scen.is_beacon(0));
    CHECK(scen.is_beacon(1));
    CHECK_FALSE(scen.is_beacon(2));
    CHECK(scen.follower_index(2) == 0);
    CHECK(scen.follower_index(0) == -1);
}

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "gossiploc/gossip.hpp"
#include "gossiploc/metrics.hpp"
#include "test_helpers.hpp"

using namespace gossiploc;
using gossiploc::testing::quad_scenario;
using gossiploc::testing::three_node_scenario;

TEST_CASE("sample_event frequencies match the probability model") {
    const Scenario scen = quad_scenario();
    GossipState state = init_state(scen, 99);
    const int samples = 100000;
    std::map<int, int> waker_counts;
    std::map<std::pair<int, int>, int> pair_counts;  // unordered pair, a < b
    for (int s = 0; s < samples; ++s) {
        const SlotEvent ev = sample_event(state);
        ++waker_counts[ev.waker];
        ++pair_counts[{std::min(ev.waker, ev.partner), std::max(ev.waker, ev.partner)}];
    }
    const int n = scen.fw.node_count();
    for (int i = 0; i < n; ++i) {
        const double p = 1.0 / n;
        const double sigma = std::sqrt(p * (1 - p) / samples);
        CHECK(std::abs(static_cast<double>(waker_counts[i]) / samples - p) <= 3 * sigma);
    }
    for (const Edge& e : scen.fw.edges) {
        const double p = (scen.prob(e.a, e.b) + scen.prob(e.b, e.a)) / n;
        const double sigma = std::sqrt(p * (1 - p) / samples);
        const double freq = static_cast<double>(pair_counts[{e.a, e.b}]) / samples;
        CHECK(std::abs(freq - p) <= 3 * sigma);
    }
}

TEST_CASE("event sampling replays identically for a fixed seed") {
    const Scenario scen = quad_scenario();
    GossipState a = init_state(scen, 4);
    GossipState b = init_state(scen, 4);
    for (int s = 0; s < 1000; ++s) {
        const SlotEvent ea = sample_event(a);
        const SlotEvent eb = sample_event(b);
        CHECK(ea.waker == eb.waker);
        CHECK(ea.partner == eb.partner);
    }
}

TEST_CASE("true positions are a fixed point of every update") {
    const Scenario scen = quad_scenario();
    GossipState state = init_state(scen, 12);
    state.estimates = scen.true_positions;
    for (int s = 0; s < 500; ++s) {
        const SlotEvent ev = sample_event(state);
        apply_event(state, ev, 1.3);
    }
    CHECK((state.estimates - scen.true_positions).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("follower-follower update arithmetic") {
    // Followers 2 and 3 sit on a vertical edge, so A = diag(1, 0).
    std::vector<Vec> pos(4, Vec(2));
    pos[0] << 5, 0;
    pos[1] << 5, 1;
    pos[2] << 0, 0;
    pos[3] << 0, 1;
    const Framework fw = Framework::make(2, pos, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    const Scenario scen = make_scenario(fw, {0, 1}, uniform_selection(fw), Box::standard(2), 1);

    GossipState state = init_state(scen, 1);
    state.estimates.segment(6, 2) << 1, 2;  // node 3
    state.estimates.segment(4, 2) << 0, 0;  // node 2
    apply_event(state, SlotEvent{3, 2, EventCase::FollowerFollower}, 0.5);
    CHECK(state.estimates(6) == doctest::Approx(0.5));
    CHECK(state.estimates(7) == doctest::Approx(2.0));
    CHECK(state.estimates(4) == doctest::Approx(0.5));
    CHECK(state.estimates(5) == doctest::Approx(0.0));
    CHECK(state.slot == 1);
}

TEST_CASE("beacon-beacon events change nothing") {
    const Scenario scen = quad_scenario();
    GossipState state = init_state(scen, 3);
    const Vec before = state.estimates;
    apply_event(state, SlotEvent{0, 1, EventCase::BeaconBeacon}, 1.0);
    CHECK((state.estimates - before).norm() == 0.0);
}

TEST_CASE("update matrices reproduce apply_event on the follower error") {
    const Scenario scen = quad_scenario();
    const int d = scen.fw.dim;
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    std::uniform_int_distribution<int> edge_pick(0, scen.fw.edge_count() - 1);
    std::uniform_int_distribution<int> direction(0, 1);
    std::uniform_real_distribution<double> alpha_pick(0.1, 1.9);

    for (int trial = 0; trial < 1000; ++trial) {
        GossipState state = init_state(scen, 1);
        for (int node : scen.follower_ids) {
            for (int c = 0; c < d; ++c) {
                state.estimates(static_cast<Eigen::Index>(node) * d + c) = coord(rng);
            }
        }
        const Edge e = scen.fw.edges[edge_pick(rng)];
        const int waker = direction(rng) == 0 ? e.a : e.b;
        const int partner = waker == e.a ? e.b : e.a;
        const SlotEvent ev{waker, partner, classify_event(scen, waker, partner)};
        const double alpha = alpha_pick(rng);

        Vec error_before(static_cast<Eigen::Index>(d) * scen.n_followers());
        for (int f = 0; f < scen.n_followers(); ++f) {
            const Eigen::Index off = static_cast<Eigen::Index>(scen.follower_ids[f]) * d;
            error_before.segment(static_cast<Eigen::Index>(f) * d, d) =
                state.estimates.segment(off, d) - scen.true_positions.segment(off, d);
        }
        const Vec predicted = build_update_matrix(scen, ev, alpha) * error_before;

        apply_event(state, ev, alpha);
        Vec error_after(error_before.size());
        for (int f = 0; f < scen.n_followers(); ++f) {
            const Eigen::Index off = static_cast<Eigen::Index>(scen.follower_ids[f]) * d;
            error_after.segment(static_cast<Eigen::Index>(f) * d, d) =
                state.estimates.segment(off, d) - scen.true_positions.segment(off, d);
        }
        CHECK((error_after - predicted).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("every update matrix is symmetric with spectrum in (-1, 1]") {
    const Scenario scen = three_node_scenario();
    for (const Edge& e : scen.fw.edges) {
        for (auto [i, j] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
            const SlotEvent ev{i, j, classify_event(scen, i, j)};
            const Mat w = build_update_matrix(scen, ev, 1.5);
            CHECK((w - w.transpose()).norm() <= 1e-14);
            Eigen::SelfAdjointEigenSolver<Mat> eig(w, Eigen::EigenvaluesOnly);
            CHECK(eig.eigenvalues()(0) > -1.0);
            CHECK(eig.eigenvalues()(eig.eigenvalues().size() - 1) <= 1.0 + 1e-12);
        }
    }
    const Mat identity = build_update_matrix(
        scen, SlotEvent{0, 1, EventCase::BeaconBeacon}, 1.5);
    CHECK((identity - Mat::Identity(2, 2)).norm() == 0.0);
}

TEST_CASE("run with zero slots keeps only the initial record") {
    const Scenario scen = quad_scenario();
    const Trace trace = run(scen, 1.0, 0, 5);
    REQUIRE(trace.records.size() == 1);
    CHECK(trace.records[0].slot == 0);
    CHECK_FALSE(trace.records[0].has_event);
    CHECK(trace.records[0].follower_error ==
          doctest::Approx(follower_error(scen, scen.initial_estimates)));
}

TEST_CASE("runs with the same seed are identical") {
    const Scenario scen = quad_scenario();
    const Trace a = run(scen, 1.0, 2000, 17, 10);
    const Trace b = run(scen, 1.0, 2000, 17, 10);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].slot == b.records[i].slot);
        CHECK(a.records[i].event.waker == b.records[i].event.waker);
        CHECK(a.records[i].event.partner == b.records[i].event.partner);
        CHECK(a.records[i].bearing_error == b.records[i].bearing_error);
        CHECK(a.records[i].follower_error == b.records[i].follower_error);
    }
}

TEST_CASE("beacons never move and slots touch at most two nodes") {
    const Scenario scen = quad_scenario();
    const int d = scen.fw.dim;
    GossipState state = init_state(scen, 23);
    for (int s = 0; s < 2000; ++s) {
        const Vec before = state.estimates;
        const SlotEvent ev = sample_event(state);
        apply_event(state, ev, 1.2);
        for (int beacon : scen.beacon_ids) {
            const Eigen::Index off = static_cast<Eigen::Index>(beacon) * d;
            CHECK((state.estimates.segment(off, d) - scen.true_positions.segment(off, d)).norm() ==
                  0.0);
        }
        int changed = 0;
        for (Eigen::Index c = 0; c < before.size(); ++c) {
            if (state.estimates(c) != before(c)) {
                ++changed;
            }
        }
        CHECK(changed <= 2 * d);
    }
}

TEST_CASE("snapshots are captured at the requested slots") {
    const Scenario scen = quad_scenario();
    RunOptions opts;
    opts.alpha = 1.0;
    opts.slots = 100;
    opts.seed = 9;
    opts.record_stride = 10;
    opts.snapshot_slots = {0, 50, 100};
    const RunResult result = run(scen, opts);
    REQUIRE(result.snapshots.size() == 3);
    CHECK(result.snapshots[0].first == 0);
    CHECK((result.snapshots[0].second - scen.initial_estimates).norm() == 0.0);
    CHECK(result.snapshots[2].first == 100);
}

TEST_CASE("run validates its inputs") {
    const Scenario scen = quad_scenario();
    CHECK_THROWS_AS(run(scen, 1.0, -1, 0), InvalidParams);
    CHECK_THROWS_AS(run(scen, 1.0, 10, 0, 0), InvalidParams);
}

#include "gossiploc/gossip.hpp"

#include <algorithm>

#include "gossiploc/metrics.hpp"

namespace gossiploc {

std::string to_string(EventCase c) {
    switch (c) {
        case EventCase::BeaconBeacon: return "beacon-beacon";
        case EventCase::FollowerFollower: return "follower-follower";
        case EventCase::BeaconFollower: return "beacon-follower";
    }
    return "unknown";
}

EventCase classify_event(const Scenario& scen, int waker, int partner) {
    const int beacons = static_cast<int>(scen.is_beacon(waker)) + static_cast<int>(scen.is_beacon(partner));
    if (beacons == 2) {
        return EventCase::BeaconBeacon;
    }
    return beacons == 1 ? EventCase::BeaconFollower : EventCase::FollowerFollower;
}

namespace {

const Mat& edge_weight(const Scenario& scen, int i, int j) {
    const Edge key{std::min(i, j), std::max(i, j)};
    const auto it = std::lower_bound(
        scen.fw.edges.begin(), scen.fw.edges.end(), key,
        [](const Edge& x, const Edge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    if (it == scen.fw.edges.end() || !(*it == key)) {
        throw InvalidParams("event references a non-edge pair");
    }
    return scen.edge_weights[static_cast<std::size_t>(it - scen.fw.edges.begin())];
}

}  // namespace

GossipState init_state(const Scenario& scen, std::uint64_t seed) {
    GossipState state;
    state.scen = &scen;
    state.estimates = scen.initial_estimates;
    state.slot = 0;
    state.rng.seed(seed);
    return state;
}

SlotEvent sample_event(GossipState& state) {
    const Scenario& scen = *state.scen;
    const int n = scen.fw.node_count();
    std::uniform_int_distribution<int> wake_dist(0, n - 1);
    const int waker = wake_dist(state.rng);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u = unit(state.rng);
    double cumulative = 0.0;
    int partner = -1;
    for (int j = 0; j < n; ++j) {
        const double p = scen.prob(waker, j);
        if (p <= 0.0) {
            continue;
        }
        cumulative += p;
        partner = j;
        if (u < cumulative) {
            break;
        }
    }
    if (partner < 0) {
        throw IsolatedNode("node " + std::to_string(waker) + " has an empty selection row");
    }
    return SlotEvent{waker, partner, classify_event(scen, waker, partner)};
}

void apply_event(GossipState& state, const SlotEvent& ev, double alpha) {
    const Scenario& scen = *state.scen;
    const int d = scen.fw.dim;
    auto block = [&](int node) {
        return state.estimates.segment(static_cast<Eigen::Index>(node) * d, d);
    };

    if (ev.kind == EventCase::FollowerFollower) {
        const Mat& a_ij = edge_weight(scen, ev.waker, ev.partner);
        const Vec diff = block(ev.waker) - block(ev.partner);
        const Vec correction = alpha * (a_ij * diff);
        block(ev.waker) -= correction;
        block(ev.partner) += correction;
    } else if (ev.kind == EventCase::BeaconFollower) {
        const int follower = scen.is_beacon(ev.waker) ? ev.partner : ev.waker;
        const int beacon = scen.is_beacon(ev.waker) ? ev.waker : ev.partner;
        const Mat& a_ij = edge_weight(scen, follower, beacon);
        const Vec diff = block(follower) - block(beacon);
        block(follower) -= alpha * (a_ij * diff);
    }
    ++state.slot;
}

Mat build_update_matrix(const Scenario& scen, const SlotEvent& ev, double alpha) {
    const int d = scen.fw.dim;
    const Eigen::Index size = static_cast<Eigen::Index>(d) * scen.n_followers();
    Mat w = Mat::Identity(size, size);
    if (ev.kind == EventCase::BeaconBeacon) {
        return w;
    }

    const Mat& a_ij = edge_weight(scen, ev.waker, ev.partner);
    if (ev.kind == EventCase::FollowerFollower) {
        const Eigen::Index fi = static_cast<Eigen::Index>(scen.follower_index(ev.waker)) * d;
        const Eigen::Index fj = static_cast<Eigen::Index>(scen.follower_index(ev.partner)) * d;
        w.block(fi, fi, d, d) -= alpha * a_ij;
        w.block(fj, fj, d, d) -= alpha * a_ij;
        w.block(fi, fj, d, d) += alpha * a_ij;
        w.block(fj, fi, d, d) += alpha * a_ij;
    } else {
        const int follower = scen.is_beacon(ev.waker) ? ev.partner : ev.waker;
        const Eigen::Index fi = static_cast<Eigen::Index>(scen.follower_index(follower)) * d;
        w.block(fi, fi, d, d) -= alpha * a_ij;
    }
    return w;
}

RunResult run(const Scenario& scen, const RunOptions& opts) {
    if (opts.slots < 0) {
        throw InvalidParams("slot count must be non-negative");
    }
    if (opts.record_stride < 1) {
        throw InvalidParams("record stride must be at least 1");
    }

    RunResult result;
    result.trace.seed = opts.seed;
    result.trace.alpha = opts.alpha;
    result.trace.scenario_hash = scen.hash();
    result.trace.slots_run = opts.slots;

    GossipState state = init_state(scen, opts.seed);
    auto record = [&](bool has_event, const SlotEvent& ev) {
        TraceRecord rec;
        rec.slot = state.slot;
        rec.has_event = has_event;
        rec.event = ev;
        rec.bearing_error = total_bearing_error(scen, state.estimates);
        rec.follower_error = follower_error(scen, state.estimates);
        result.trace.records.push_back(rec);
    };
    auto snapshot_due = [&](long slot) {
        return std::binary_search(opts.snapshot_slots.begin(), opts.snapshot_slots.end(), slot);
    };

    record(false, SlotEvent{});
    if (snapshot_due(0)) {
        result.snapshots.emplace_back(0, state.estimates);
    }
    for (long k = 1; k <= opts.slots; ++k) {
        const SlotEvent ev = sample_event(state);
        apply_event(state, ev, opts.alpha);
        if (k % opts.record_stride == 0 || k == opts.slots) {
            record(true, ev);
        }
        if (snapshot_due(k)) {
            result.snapshots.emplace_back(k, state.estimates);
        }
    }
    return result;
}

Trace run(const Scenario& scen, double alpha, long slots, std::uint64_t seed, long record_stride) {
    RunOptions opts;
    opts.alpha = alpha;
    opts.slots = slots;
    opts.seed = seed;
    opts.record_stride = record_stride;
    return run(scen, opts).trace;
}

}  // namespace gossiploc

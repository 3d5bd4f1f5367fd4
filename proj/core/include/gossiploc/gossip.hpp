#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gossiploc/network.hpp"

namespace gossiploc {

enum class EventCase {
    BeaconBeacon,
    FollowerFollower,
    BeaconFollower,
};

std::string to_string(EventCase c);

struct SlotEvent {
    int waker = -1;
    int partner = -1;
    EventCase kind = EventCase::BeaconBeacon;
};

EventCase classify_event(const Scenario& scen, int waker, int partner);

/// Mutable simulation state: the stacked estimate vector, the slot clock,
/// and the generator that drives event sampling.
struct GossipState {
    const Scenario* scen = nullptr;
    Vec estimates;  // stacked dn
    long slot = 0;
    std::mt19937_64 rng;
};

GossipState init_state(const Scenario& scen, std::uint64_t seed);

/// Draws one slot event: the waker is uniform over all nodes, the partner
/// follows the waker's selection row. Throws IsolatedNode when the waker
/// has no selection mass.
SlotEvent sample_event(GossipState& state);

/// Applies one event in place and advances the slot clock. Beacon blocks
/// never change; followers move by -alpha * A_ij (estimate difference).
void apply_event(GossipState& state, const SlotEvent& ev, double alpha);

/// The event's update matrix on the compacted follower error vector.
/// Identity except for the participating followers' d-blocks; symmetric.
Mat build_update_matrix(const Scenario& scen, const SlotEvent& ev, double alpha);

struct TraceRecord {
    long slot = 0;
    bool has_event = false;  // false only for the slot-0 record
    SlotEvent event;
    double bearing_error = 0.0;
    double follower_error = 0.0;
};

struct Trace {
    std::vector<TraceRecord> records;
    std::uint64_t seed = 0;
    double alpha = 0.0;
    std::uint64_t scenario_hash = 0;
    long slots_run = 0;
};

struct RunOptions {
    double alpha = 0.0;
    long slots = 0;
    std::uint64_t seed = 0;
    long record_stride = 10;
    /// Slots at which to capture full estimate snapshots (sorted).
    std::vector<long> snapshot_slots;
};

struct RunResult {
    Trace trace;
    std::vector<std::pair<long, Vec>> snapshots;
};

/// Executes `slots` gossip slots, recording errors every `record_stride`
/// slots plus slot 0 and the final slot. Deterministic in the seed.
Trace run(const Scenario& scen, double alpha, long slots, std::uint64_t seed,
          long record_stride = 10);

RunResult run(const Scenario& scen, const RunOptions& opts);

}  // namespace gossiploc

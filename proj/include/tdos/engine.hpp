#pragma once

#include <cstdint>
#include <queue>
#include <vector>

#include "tdos/scenario.hpp"
#include "tdos/trace.hpp"

namespace tdos {

// Internal scheduler record. `payload_*` fields are kind-specific
// indices into engine state; arrivals carry the full action.
struct QueuedEvent {
    double time = 0.0;
    std::uint64_t sequence = 0;
    EventKind kind = EventKind::ActionArrival;
    int attack_index = -1;
    int instance_id = -1;
    int node_index = -1;
    MissionAction action; // ActionArrival only
    SpawnReason spawn_reason = SpawnReason::Bootstrap;
    std::string capability;
    std::string image_id;
    bool tainted = false;
    bool spawned_under_poisoning = false;
};

// Min-ordered by (time, sequence); insertion order breaks ties, so equal
// timestamps never reorder across runs.
class EventQueue {
public:
    explicit EventQueue(double current_time = 0.0) : now_(current_time) {}

    void schedule(QueuedEvent ev); // throws InternalScheduleError on past-time insertion
    QueuedEvent next_event();      // pops the minimum and advances the clock
    bool empty() const { return heap_.empty(); }
    double now() const { return now_; }

private:
    struct Later {
        bool operator()(const QueuedEvent& a, const QueuedEvent& b) const {
            if (a.time != b.time) return a.time > b.time;
            return a.sequence > b.sequence;
        }
    };
    std::priority_queue<QueuedEvent, std::vector<QueuedEvent>, Later> heap_;
    double now_ = 0.0;
    std::uint64_t next_sequence_ = 0;

    friend class Engine;
};

// Deterministic single-threaded simulation loop. Identical
// (scenario, seed) yields an identical trace.
SimTrace run(const ScenarioSpec& scenario);

} // namespace tdos

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tdos/model.hpp"

namespace tdos {

enum class EventKind {
    ActionArrival,
    WindowClose,
    EnergyTick,
    OrchestratorTick,
    AttackStart,
    AttackEnd,
    RechargeStart,
    RechargeEnd,
    InstanceSpawn,
    InstanceKill,
    LifecycleEvent,
    PositionUpdate,
};

const char* to_string(EventKind k);

// Flat event record: unused reference fields stay empty. `value` carries
// the kind's scalar (requests for arrivals, energy for ticks, ...), and
// `detail` a short free-form annotation.
struct SimEvent {
    double time = 0.0;
    std::uint64_t sequence = 0;
    EventKind kind = EventKind::ActionArrival;
    std::string capability;
    std::string node;
    std::string instance; // instance id as text, or empty
    double value = 0.0;
    std::string detail;
};

// Per-window, per-capability counters: the clients/requests/workload/
// network-function (CRoWN) indicators plus the classifier inputs.
struct CrownWindow {
    int window_index = 0;
    std::string capability;
    long clients = 0;        // C: distinct client ids seen
    long requests = 0;       // R: total requests (arrivals, incl. dropped)
    double workload = 0.0;   // W: CPU-seconds consumed by instances
    int live_instances = 0;  // NF at window close
    long actions = 0;        // nA: actions targeting the capability
    int dependents = 0;      // nT: dependency in-degree
    double cost = 0.0;       // nC: energy + instantiation cost attributed
    int supplier_nodes = 0;  // tD: distinct hosting nodes at close
    double energy_draw = 0.0;    // nC minus instantiation share
    double ir_max = 0.0;         // max node IR among hosting nodes
    long dropped = 0;            // requests arriving with no serving instance
    double sinkholed = 0.0;      // decoy-served synthetic requests
    double forged_fraction = 0.0; // tainted live / live
};

struct NodeEnergySummary {
    std::string node;
    double total_draw = 0.0;
    int recharge_count = 0;
    double final_soc = 0.0;
    double capacity = 0.0;
    double restored = 0.0; // energy restored by recharges
};

struct InstanceRecord {
    int id = -1;
    std::string capability_id;
    std::string host_node_id;
    SpawnReason spawn_reason = SpawnReason::Bootstrap;
    std::string image_id;
    bool tainted = false;
    bool alive_at_end = false;
    bool spawned_under_poisoning = false; // test/report ground truth, hidden from detectors
    long total_requests = 0;
    double total_work = 0.0;     // CPU-seconds over lifetime
    double windows_alive = 0;
};

struct SimTrace {
    std::uint64_t seed = 0;
    std::uint64_t scenario_digest = 0;
    double duration = 0.0;
    double window_length = 0.0;
    int window_count = 0;
    std::vector<SimEvent> events;
    std::vector<CrownWindow> windows; // ordered by (window_index, capability)
    std::vector<NodeEnergySummary> energy;
    std::vector<InstanceRecord> instances;
    // node id -> per-window IR values
    std::map<std::string, std::vector<double>> ir_series;

    const CrownWindow* find_window(int index, const std::string& capability) const;
    std::uint64_t content_hash() const; // stable hash over events + windows
};

} // namespace tdos

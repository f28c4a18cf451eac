#pragma once

#include <string>
#include <vector>

#include "tdos/scenario.hpp"

namespace tdos {

struct TelemetryReport {
    int instance_id = -1;
    int window_index = 0;
    double reported_cpu = 0.0; // may differ from true load when poisoned
    long reported_requests = 0;
    bool poisoned = false; // trace annotation only; never read by decisions
};

enum class ScaleAction { Out, In, Hold };

struct ScaleDecision {
    ScaleAction action = ScaleAction::Hold;
    int count = 0;
    double mean_reported_cpu = 0.0; // most recent window's mean, for the audit trail
};

// One window's worth of telemetry for one capability.
struct TelemetryWindow {
    int window_index = 0;
    std::vector<TelemetryReport> reports;
    double mean_reported_cpu() const;
};

// Decision over the last k_windows consecutive windows of REPORTED
// telemetry; ground truth is never consulted here.
ScaleDecision autoscale_step(const std::vector<TelemetryWindow>& history,
                             int live_instances, const AutoscalePolicy& policy);

struct PlacementCandidate {
    std::string node_id;
    double total_cpu_load = 0.0;
    int live_instances = 0;
    bool recharging = false;
};

// LeastLoadedNode: argmin total load, ties by fewest live instances,
// then by lowest node id.
// RoundRobin: cycles via *rr_cursor. Throws NoEligibleNode when every
// candidate is recharging.
std::string place_instance(const std::vector<PlacementCandidate>& candidates,
                           Placement placement, int* rr_cursor);

// Primary-cluster image preferred; the secondary cluster (possibly
// tainted) only when the primary is unavailable. Throws NoImageAvailable.
const MarketplaceImage& pull_image(const std::string& capability_id,
                                   const std::vector<MarketplaceImage>& marketplace,
                                   bool primary_available);

} // namespace tdos

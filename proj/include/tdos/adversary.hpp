#pragma once

#include <vector>

#include "tdos/scenario.hpp"

namespace tdos {

// Pure perturbation primitives applied by the engine while an attack
// interval is active. Each is the identity at neutral intensity.

// W-EDoS: fraudulent workload. Requests and clients are untouched, which
// is exactly what keeps TPS intact and separates W-EDoS from DoS.
inline double apply_wedos(double work_per_request, double multiplier) {
    return work_per_request * multiplier;
}

// I-EDoS: telemetry poisoning. Additive inflation with a 0.99 cap;
// ground-truth loads stay unchanged.
inline double apply_iedos(double true_cpu_load, double inflation) {
    const double poisoned = true_cpu_load + inflation;
    return poisoned > 0.99 ? 0.99 : poisoned;
}

// Denial-of-sleep: inflated idle power on targeted nodes.
inline double apply_denial_of_sleep(double p_idle, double idle_factor) {
    return p_idle * idle_factor;
}

// Flash crowd: a legitimate surge multiplies both the arriving client
// count and the request volume, deliberately breaking TPS on nA.
std::vector<MissionAction> apply_flash_crowd(const MissionAction& action, double surge);

// Decoy field (role inversion, CONOP#2): number of nodes the targeted
// capability must keep covered to serve d synthetic endpoints.
inline int decoy_required_coverage(int decoy_count, int decoys_per_instance) {
    if (decoy_count <= 0) return 0;
    const int per = decoys_per_instance < 1 ? 1 : decoys_per_instance;
    return (decoy_count + per - 1) / per;
}

// Synthetic decoy demand per window, accounted in the sinkholed column only.
inline double decoy_sinkholed_requests(int decoy_count, double rate, double window_length) {
    return static_cast<double>(decoy_count) * rate * window_length;
}

// Attack interval containment: active on [t_start, t_end).
inline bool attack_active(const AttackSpec& a, double t) {
    return t >= a.t_start && t < a.t_end;
}

} // namespace tdos

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tdos/errors.hpp"

namespace tdos {

struct TacticalNode {
    std::string id;
    double x = 0.0;
    double y = 0.0;
    double battery_capacity = 1e9;
    double recharge_threshold = 0.2;    // fraction of capacity
    double recharge_duration = 120.0;   // simulated seconds
    double radio_range = 100.0;
    bool is_fixed = false;
};

enum class Lifecycle { Onboarding, Deployed, Adaptation, Undeployed };

enum class LifecycleEvent { OnboardComplete, DeployComplete, AdaptStart, AdaptEnd, Undeploy };

const char* to_string(Lifecycle s);
const char* to_string(LifecycleEvent e);

// Onboarding -> Deployed <-> Adaptation, Undeploy reachable from both
// deployed states, Undeployed absorbing. Surveillance is not a state:
// it is continuous monitoring, active whenever the capability is
// Deployed or Adaptation.
Lifecycle advance_lifecycle(Lifecycle current, LifecycleEvent event);

inline bool surveillance_active(Lifecycle s) {
    return s == Lifecycle::Deployed || s == Lifecycle::Adaptation;
}

enum class SpawnReason { Bootstrap, AutoscaleOut, MarketplacePull };

const char* to_string(SpawnReason r);

struct VnfInstance {
    int id = -1;
    std::string capability_id;
    std::string host_node_id;
    double cpu_load = 0.0;      // last closed window, fraction of one CPU
    long requests_served = 0;   // last closed window
    SpawnReason spawn_reason = SpawnReason::Bootstrap;
    std::string image_id;
    bool tainted = false;
    bool alive = true;
};

struct MarketplaceImage {
    std::string image_id;
    std::string capability_id;
    bool tainted = false;
    double provisioning_delay = 0.0;
    bool secondary_cluster = false;
};

struct MissionAction {
    std::string action_id;
    double time = 0.0;
    std::string required_capability;
    std::string client_id;
    long request_count = 1;
    double work_per_request = 0.0; // CPU-seconds
};

struct CapabilitySpec {
    std::string id;
    std::set<std::string> depends_on;
    int bootstrap_instances = 1;
};

// Static per-scenario dependency graph with in-degree (nT) queries.
class DependencyGraph {
public:
    static DependencyGraph build(const std::vector<CapabilitySpec>& capabilities);

    // nT(c): number of declared capabilities whose depends_on contains c.
    int in_degree(const std::string& capability_id) const;
    bool contains(const std::string& capability_id) const { return in_degree_.count(capability_id) > 0; }

private:
    std::map<std::string, int> in_degree_;
};

} // namespace tdos

#include "tdos/model.hpp"

#include <queue>

namespace tdos {

const char* to_string(Lifecycle s) {
    switch (s) {
        case Lifecycle::Onboarding: return "Onboarding";
        case Lifecycle::Deployed: return "Deployed";
        case Lifecycle::Adaptation: return "Adaptation";
        case Lifecycle::Undeployed: return "Undeployed";
    }
    return "?";
}

const char* to_string(LifecycleEvent e) {
    switch (e) {
        case LifecycleEvent::OnboardComplete: return "OnboardComplete";
        case LifecycleEvent::DeployComplete: return "DeployComplete";
        case LifecycleEvent::AdaptStart: return "AdaptStart";
        case LifecycleEvent::AdaptEnd: return "AdaptEnd";
        case LifecycleEvent::Undeploy: return "Undeploy";
    }
    return "?";
}

const char* to_string(SpawnReason r) {
    switch (r) {
        case SpawnReason::Bootstrap: return "Bootstrap";
        case SpawnReason::AutoscaleOut: return "AutoscaleOut";
        case SpawnReason::MarketplacePull: return "MarketplacePull";
    }
    return "?";
}

Lifecycle advance_lifecycle(Lifecycle current, LifecycleEvent event) {
    switch (current) {
        case Lifecycle::Onboarding:
            // Either completion event finishes provisioning.
            if (event == LifecycleEvent::OnboardComplete || event == LifecycleEvent::DeployComplete)
                return Lifecycle::Deployed;
            break;
        case Lifecycle::Deployed:
            if (event == LifecycleEvent::AdaptStart) return Lifecycle::Adaptation;
            if (event == LifecycleEvent::Undeploy) return Lifecycle::Undeployed;
            break;
        case Lifecycle::Adaptation:
            if (event == LifecycleEvent::AdaptEnd) return Lifecycle::Deployed;
            if (event == LifecycleEvent::Undeploy) return Lifecycle::Undeployed;
            break;
        case Lifecycle::Undeployed:
            break; // terminal
    }
    throw IllegalTransition(std::string("lifecycle event ") + to_string(event) +
                            " not valid in state " + to_string(current));
}

DependencyGraph DependencyGraph::build(const std::vector<CapabilitySpec>& capabilities) {
    DependencyGraph g;
    for (const auto& cap : capabilities) g.in_degree_[cap.id] = 0;

    for (const auto& cap : capabilities) {
        for (const auto& dep : cap.depends_on) {
            auto it = g.in_degree_.find(dep);
            if (it == g.in_degree_.end())
                throw UnknownCapability("capability '" + cap.id + "' depends on undeclared '" + dep + "'");
            ++it->second;
        }
    }

    // Kahn's algorithm for cycle detection: peel capabilities with no
    // unresolved dependencies, following dep -> dependent edges.
    std::size_t visited = 0;
    std::map<std::string, int> out_count;
    for (const auto& cap : capabilities) out_count[cap.id] = static_cast<int>(cap.depends_on.size());
    std::map<std::string, std::vector<std::string>> rev; // dep -> list of dependents
    for (const auto& cap : capabilities)
        for (const auto& dep : cap.depends_on) rev[dep].push_back(cap.id);

    std::queue<std::string> q;
    for (const auto& [id, n] : out_count)
        if (n == 0) q.push(id);
    while (!q.empty()) {
        std::string id = q.front();
        q.pop();
        ++visited;
        for (const auto& dependent : rev[id])
            if (--out_count[dependent] == 0) q.push(dependent);
    }
    if (visited != capabilities.size())
        throw CycleError("capability dependency graph has a cycle");

    return g;
}

int DependencyGraph::in_degree(const std::string& capability_id) const {
    auto it = in_degree_.find(capability_id);
    if (it == in_degree_.end())
        throw UnknownCapability("nT query for undeclared capability '" + capability_id + "'");
    return it->second;
}

} // namespace tdos

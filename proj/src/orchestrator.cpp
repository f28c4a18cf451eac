#include "tdos/orchestrator.hpp"

#include <algorithm>
#include <tuple>

#include "tdos/errors.hpp"

namespace tdos {

double TelemetryWindow::mean_reported_cpu() const {
    if (reports.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& r : reports) sum += r.reported_cpu;
    return sum / static_cast<double>(reports.size());
}

ScaleDecision autoscale_step(const std::vector<TelemetryWindow>& history,
                             int live_instances, const AutoscalePolicy& policy) {
    ScaleDecision d;
    if (static_cast<int>(history.size()) < policy.k_windows) return d;

    const auto last = history.end() - policy.k_windows;
    bool all_hi = true, all_lo = true;
    for (auto it = last; it != history.end(); ++it) {
        const double mean = it->mean_reported_cpu();
        all_hi = all_hi && mean > policy.u_hi;
        all_lo = all_lo && mean < policy.u_lo;
    }
    d.mean_reported_cpu = history.back().mean_reported_cpu();

    if (all_hi && live_instances < policy.max_instances) {
        d.action = ScaleAction::Out;
        d.count = 1;
    } else if (all_lo && live_instances > 1) {
        d.action = ScaleAction::In;
        d.count = 1;
    }
    return d;
}

std::string place_instance(const std::vector<PlacementCandidate>& candidates,
                           Placement placement, int* rr_cursor) {
    std::vector<const PlacementCandidate*> eligible;
    for (const auto& c : candidates)
        if (!c.recharging) eligible.push_back(&c);
    if (eligible.empty()) throw NoEligibleNode("all nodes are recharging");

    if (placement == Placement::RoundRobin) {
        const int idx = rr_cursor ? (*rr_cursor)++ % static_cast<int>(eligible.size())
                                  : 0;
        return eligible[static_cast<std::size_t>(idx)]->node_id;
    }

    auto key = [](const PlacementCandidate* c) {
        return std::tuple<double, int, const std::string&>(c->total_cpu_load,
                                                           c->live_instances, c->node_id);
    };
    const PlacementCandidate* best = eligible.front();
    for (const auto* c : eligible)
        if (key(c) < key(best)) best = c;
    return best->node_id;
}

const MarketplaceImage& pull_image(const std::string& capability_id,
                                   const std::vector<MarketplaceImage>& marketplace,
                                   bool primary_available) {
    const MarketplaceImage* primary = nullptr;
    const MarketplaceImage* secondary = nullptr;
    for (const auto& img : marketplace) {
        if (img.capability_id != capability_id) continue;
        if (img.secondary_cluster) {
            if (!secondary) secondary = &img;
        } else if (!primary) {
            primary = &img;
        }
    }
    if (primary_available && primary) return *primary;
    if (secondary) return *secondary;
    throw NoImageAvailable("no marketplace image for capability '" + capability_id + "'");
}

} // namespace tdos

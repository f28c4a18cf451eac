#include "tdos/trace.hpp"

#include <cstdio>

namespace tdos {

const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::ActionArrival: return "ActionArrival";
        case EventKind::WindowClose: return "WindowClose";
        case EventKind::EnergyTick: return "EnergyTick";
        case EventKind::OrchestratorTick: return "OrchestratorTick";
        case EventKind::AttackStart: return "AttackStart";
        case EventKind::AttackEnd: return "AttackEnd";
        case EventKind::RechargeStart: return "RechargeStart";
        case EventKind::RechargeEnd: return "RechargeEnd";
        case EventKind::InstanceSpawn: return "InstanceSpawn";
        case EventKind::InstanceKill: return "InstanceKill";
        case EventKind::LifecycleEvent: return "LifecycleEvent";
        case EventKind::PositionUpdate: return "PositionUpdate";
    }
    return "?";
}

const CrownWindow* SimTrace::find_window(int index, const std::string& capability) const {
    // windows are ordered by (window_index, capability); linear probe from
    // a computed offset would assume a dense layout, so binary search.
    std::size_t lo = 0, hi = windows.size();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        const CrownWindow& w = windows[mid];
        if (w.window_index < index || (w.window_index == index && w.capability < capability))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < windows.size() && windows[lo].window_index == index &&
        windows[lo].capability == capability)
        return &windows[lo];
    return nullptr;
}

namespace {

void hash_mix(std::uint64_t& h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

std::uint64_t hash_double(double d) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", d);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char* p = buf; *p; ++p) {
        h ^= static_cast<std::uint8_t>(*p);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t hash_string(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

std::uint64_t SimTrace::content_hash() const {
    // Deliberately excludes scenario_digest: two different scenario files
    // can legitimately produce the same simulated behaviour.
    std::uint64_t h = 0x2545f4914f6cdd1dULL;
    hash_mix(h, seed);
    for (const auto& e : events) {
        hash_mix(h, hash_double(e.time));
        hash_mix(h, e.sequence);
        hash_mix(h, hash_string(to_string(e.kind)));
        hash_mix(h, hash_string(e.capability));
        hash_mix(h, hash_string(e.node));
        hash_mix(h, hash_string(e.instance));
        hash_mix(h, hash_double(e.value));
        hash_mix(h, hash_string(e.detail));
    }
    for (const auto& w : windows) {
        hash_mix(h, static_cast<std::uint64_t>(w.window_index));
        hash_mix(h, hash_string(w.capability));
        hash_mix(h, static_cast<std::uint64_t>(w.clients));
        hash_mix(h, static_cast<std::uint64_t>(w.requests));
        hash_mix(h, hash_double(w.workload));
        hash_mix(h, static_cast<std::uint64_t>(w.live_instances));
        hash_mix(h, static_cast<std::uint64_t>(w.actions));
        hash_mix(h, static_cast<std::uint64_t>(w.dependents));
        hash_mix(h, hash_double(w.cost));
        hash_mix(h, static_cast<std::uint64_t>(w.supplier_nodes));
        hash_mix(h, hash_double(w.energy_draw));
        hash_mix(h, hash_double(w.ir_max));
        hash_mix(h, static_cast<std::uint64_t>(w.dropped));
        hash_mix(h, hash_double(w.sinkholed));
        hash_mix(h, hash_double(w.forged_fraction));
    }
    return h;
}

} // namespace tdos

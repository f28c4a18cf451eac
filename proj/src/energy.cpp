#include "tdos/energy.hpp"

#include <algorithm>
#include <cmath>

namespace tdos {

double energy_tick_draw(const PowerModel& pm, const EnergyTickInput& in) {
    return in.dt * (pm.p_idle * in.live_instances + pm.alpha * in.sum_cpu_load) +
           pm.beta * in.traffic_term + pm.c_inst * in.spawns;
}

double apply_draw(BatteryState& battery, double demand, bool* needs_recharge) {
    const double drawn = std::min(demand, battery.soc);
    battery.soc -= drawn;
    if (needs_recharge)
        *needs_recharge = !battery.recharging &&
                          battery.soc < battery.recharge_threshold * battery.capacity;
    return drawn;
}

double finish_recharge(BatteryState& battery) {
    const double restored = battery.capacity - battery.soc;
    battery.soc = battery.capacity;
    battery.recharging = false;
    battery.recharge_count += 1;
    return restored;
}

double ir_proxy(const IrModel& ir, double total_cpu_load) {
    return ir.sigma0 + ir.sigma1 * total_cpu_load;
}

double link_distance(const TacticalNode& serving, const std::vector<TacticalNode>& all_nodes) {
    if (serving.is_fixed) return 0.0;
    double best = -1.0;
    for (const auto& n : all_nodes) {
        if (!n.is_fixed) continue;
        const double d = std::hypot(serving.x - n.x, serving.y - n.y);
        if (best < 0.0 || d < best) best = d;
    }
    return best < 0.0 ? 0.0 : best;
}

} // namespace tdos

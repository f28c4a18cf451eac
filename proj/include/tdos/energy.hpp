#pragma once

#include "tdos/scenario.hpp"

namespace tdos {

struct BatteryState {
    double capacity = 1e9;
    double soc = 1e9;
    double recharge_threshold = 0.2; // rho, fraction of capacity
    double recharge_duration = 120.0;
    bool recharging = false;
    int recharge_count = 0;
};

// Everything a node accrued since the previous tick.
struct EnergyTickInput {
    double dt = 0.0;
    int live_instances = 0;
    double sum_cpu_load = 0.0;        // sum over hosted live instances
    double traffic_term = 0.0;        // sum over served requests of link_distance^gamma
    int spawns = 0;                   // instantiation events this tick
};

// Energy demanded over the tick:
//   dt * (p_idle * live + alpha * sum_cpu_load) + beta * traffic_term + c_inst * spawns
double energy_tick_draw(const PowerModel& pm, const EnergyTickInput& in);

// Decrements soc by the demand, floored at 0. Returns the energy actually
// drawn from the battery (== demand unless the floor truncates it).
// Sets *needs_recharge when soc/capacity has fallen below the threshold.
double apply_draw(BatteryState& battery, double demand, bool* needs_recharge);

// Restores a full charge at RechargeEnd. Returns the energy restored.
double finish_recharge(BatteryState& battery);

// sigma0 + sigma1 * total node CPU load
double ir_proxy(const IrModel& ir, double total_cpu_load);

// Communication distance for the traffic term: Euclidean distance from
// the serving node to the nearest fixed node (0 if itself fixed or no
// fixed node exists).
double link_distance(const TacticalNode& serving, const std::vector<TacticalNode>& all_nodes);

} // namespace tdos

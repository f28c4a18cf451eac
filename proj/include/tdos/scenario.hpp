#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tdos/model.hpp"

namespace tdos {

struct PowerModel {
    double p_idle = 0.1;   // energy/s per live instance
    double alpha = 1.0;    // energy per CPU-load-second
    double beta = 0.01;    // energy per (distance^gamma x request)
    double gamma = 2.0;    // path-loss-like exponent, >= 1
    double c_inst = 5.0;   // energy per instantiation event
};

struct IrModel {
    double sigma0 = 1.0; // baseline emission
    double sigma1 = 2.0; // emission per unit CPU load
};

enum class Placement { LeastLoadedNode, RoundRobin };

struct AutoscalePolicy {
    double u_hi = 0.8;
    double u_lo = 0.2;
    int k_windows = 2;
    int max_instances = 10;
    Placement placement = Placement::LeastLoadedNode;
    bool sanitized_telemetry = false; // defense toggle: ignore poisoned reports
};

enum class AttackKind { WEdos, IEdos, DenialOfSleep, FlashCrowd, DecoyField, SupplyChainTaint };

const char* to_string(AttackKind k);

struct AttackSpec {
    AttackKind kind = AttackKind::WEdos;
    std::string target_capability;       // WEdos/IEdos/FlashCrowd/DecoyField/SupplyChainTaint
    std::vector<std::string> target_nodes; // DenialOfSleep
    double t_start = 0.0;
    double t_end = 0.0;
    // Kind-specific intensity parameters.
    double multiplier = 1.0;      // WEdos workload multiplier m
    double inflation = 0.0;       // IEdos additive reported-cpu inflation r
    double idle_factor = 1.0;     // DenialOfSleep p_idle factor
    double surge = 1.0;           // FlashCrowd client/request surge s
    int decoy_count = 0;          // DecoyField d
    double decoy_request_rate = 0.0;   // requests/s per decoy
    double decoy_work_per_request = 0.0;
    int decoys_per_instance = 1;  // coverage capacity of one instance
};

// Rate-based mission generator: per window, Poisson(rate x window_length)
// arrivals at jittered times, clients drawn from a fixed pool.
struct MissionGenerator {
    std::string capability_id;
    double rate = 0.0; // actions per second
    int client_pool = 1;
    long request_count = 1;
    double work_per_request = 1.0;
    double t_start = 0.0;
    double t_end = -1.0; // -1 => whole horizon
};

struct DetectorConfig {
    double eps_scalar = 0.25;
    double delta_dist = 0.30;
    double kappa = 2.0;
    double floor_nc = 10.0; // absolute floor for nC dominance (energy units)
    double floor_td = 2.0;  // absolute floor for tD dominance (nodes)
    int min_windows = 5;
    bool or_conditions = false;   // strict conjunction by default; true relaxes to either signal
    bool td_total_is_sum = false; // default: peak
};

enum class BaselineMode { ReferenceRun, Warmup };

struct ScenarioSpec {
    int version = 1;
    std::string name;
    double duration = 1800.0;
    double window_length = 60.0;
    std::uint64_t seed = 42;
    std::vector<TacticalNode> nodes;
    std::vector<CapabilitySpec> capabilities;
    std::vector<MissionAction> fixed_actions;
    std::vector<MissionGenerator> mission_generators;
    PowerModel power;
    IrModel ir;
    AutoscalePolicy policy;
    std::vector<MarketplaceImage> marketplace;
    std::vector<AttackSpec> attacks;
    DetectorConfig detector;
    BaselineMode baseline_mode = BaselineMode::ReferenceRun;
    int warmup_windows = 0; // used when baseline_mode == Warmup
    std::string perspective = "defender"; // "attacker" for CONOP#2 role inversion
    std::vector<std::string> human_impact_tags;
};

// Throws ValidationError naming the violated invariant.
void validate(const ScenarioSpec& spec);

// True when the attack is a no-op at its configured intensity; such
// attacks are never scheduled so the trace stays identical to baseline.
bool is_neutral(const AttackSpec& a);

// Copy with all attacks removed (the reference run of baseline mode).
ScenarioSpec without_attacks(const ScenarioSpec& spec);

// Stable content hash (FNV-1a over the canonical serialized form).
std::uint64_t scenario_digest(const ScenarioSpec& spec);

} // namespace tdos

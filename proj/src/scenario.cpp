#include "tdos/scenario.hpp"

#include <cmath>
#include <set>

#include "tdos/errors.hpp"

namespace tdos {

const char* to_string(AttackKind k) {
    switch (k) {
        case AttackKind::WEdos: return "WEdos";
        case AttackKind::IEdos: return "IEdos";
        case AttackKind::DenialOfSleep: return "DenialOfSleep";
        case AttackKind::FlashCrowd: return "FlashCrowd";
        case AttackKind::DecoyField: return "DecoyField";
        case AttackKind::SupplyChainTaint: return "SupplyChainTaint";
    }
    return "?";
}

bool is_neutral(const AttackSpec& a) {
    switch (a.kind) {
        case AttackKind::WEdos: return a.multiplier == 1.0;
        case AttackKind::IEdos: return a.inflation == 0.0;
        case AttackKind::DenialOfSleep: return a.idle_factor == 1.0;
        case AttackKind::FlashCrowd: return a.surge == 1.0;
        case AttackKind::DecoyField: return a.decoy_count == 0;
        case AttackKind::SupplyChainTaint: return false; // activation itself is the effect
    }
    return true;
}

ScenarioSpec without_attacks(const ScenarioSpec& spec) {
    ScenarioSpec clean = spec;
    clean.attacks.clear();
    return clean;
}

namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw ValidationError(what);
}

} // namespace

void validate(const ScenarioSpec& spec) {
    require(spec.duration > 0.0, "duration must be positive");
    require(spec.window_length > 0.0, "window_length must be positive");
    const double windows = spec.duration / spec.window_length;
    require(std::abs(windows - std::llround(windows)) < 1e-9,
            "duration must be an integer multiple of window_length");
    require(!spec.nodes.empty(), "scenario needs at least one node");
    require(!spec.capabilities.empty(), "scenario needs at least one capability");

    std::set<std::string> node_ids;
    for (const auto& n : spec.nodes) {
        require(!n.id.empty(), "node id must not be empty");
        require(node_ids.insert(n.id).second, "duplicate node id '" + n.id + "'");
        require(std::isfinite(n.x) && std::isfinite(n.y),
                "node '" + n.id + "' position must be finite");
        require(n.radio_range > 0.0, "node '" + n.id + "' radio_range must be positive");
        require(n.battery_capacity > 0.0, "node '" + n.id + "' battery capacity must be positive");
        require(n.recharge_threshold > 0.0 && n.recharge_threshold < 1.0,
                "node '" + n.id + "' recharge_threshold must be in (0,1)");
        require(n.recharge_duration >= 0.0,
                "node '" + n.id + "' recharge_duration must be non-negative");
    }

    std::set<std::string> cap_ids;
    for (const auto& c : spec.capabilities) {
        require(!c.id.empty(), "capability id must not be empty");
        require(cap_ids.insert(c.id).second, "duplicate capability id '" + c.id + "'");
        require(c.bootstrap_instances >= 0,
                "capability '" + c.id + "' bootstrap_instances must be non-negative");
    }
    // resolves dependencies and rejects cycles; rethrow as ValidationError
    try {
        DependencyGraph::build(spec.capabilities);
    } catch (const std::runtime_error& e) {
        throw ValidationError(e.what());
    }

    const auto& pm = spec.power;
    require(pm.p_idle >= 0.0 && pm.alpha >= 0.0 && pm.beta >= 0.0 && pm.c_inst >= 0.0,
            "power model coefficients must be non-negative");
    require(pm.gamma >= 1.0, "power model gamma must be >= 1");
    require(spec.ir.sigma0 >= 0.0 && spec.ir.sigma1 >= 0.0,
            "IR model coefficients must be non-negative");

    const auto& p = spec.policy;
    require(p.u_lo >= 0.0 && p.u_lo < p.u_hi && p.u_hi <= 1.0,
            "autoscale thresholds must satisfy 0 <= u_lo < u_hi <= 1");
    require(p.k_windows >= 1, "autoscale k_windows must be >= 1");
    require(p.max_instances >= 1, "autoscale max_instances must be >= 1");

    std::set<std::string> image_ids;
    for (const auto& img : spec.marketplace) {
        require(image_ids.insert(img.image_id).second,
                "duplicate image id '" + img.image_id + "'");
        require(cap_ids.count(img.capability_id) > 0,
                "image '" + img.image_id + "' references unknown capability '" +
                    img.capability_id + "'");
        require(img.provisioning_delay >= 0.0,
                "image '" + img.image_id + "' provisioning_delay must be non-negative");
    }

    for (const auto& a : spec.fixed_actions) {
        require(cap_ids.count(a.required_capability) > 0,
                "action '" + a.action_id + "' targets unknown capability '" +
                    a.required_capability + "'");
        require(a.request_count >= 1, "action '" + a.action_id + "' request_count must be >= 1");
        require(a.work_per_request > 0.0,
                "action '" + a.action_id + "' work_per_request must be positive");
        require(a.time >= 0.0 && a.time < spec.duration,
                "action '" + a.action_id + "' time outside [0, duration)");
    }
    for (const auto& g : spec.mission_generators) {
        require(cap_ids.count(g.capability_id) > 0,
                "mission generator targets unknown capability '" + g.capability_id + "'");
        require(g.rate >= 0.0, "mission generator rate must be non-negative");
        require(g.client_pool >= 1, "mission generator client_pool must be >= 1");
        require(g.request_count >= 1, "mission generator request_count must be >= 1");
        require(g.work_per_request > 0.0, "mission generator work_per_request must be positive");
    }

    for (const auto& a : spec.attacks) {
        require(a.t_start < a.t_end, "attack interval must satisfy t_start < t_end");
        require(a.t_start >= 0.0 && a.t_end <= spec.duration, "attack interval exceeds horizon");
        switch (a.kind) {
            case AttackKind::WEdos:
                require(a.multiplier >= 1.0, "W-EDoS multiplier must be >= 1");
                break;
            case AttackKind::IEdos:
                require(a.inflation >= 0.0, "I-EDoS inflation must be non-negative");
                break;
            case AttackKind::DenialOfSleep:
                require(a.idle_factor >= 1.0, "denial-of-sleep idle_factor must be >= 1");
                require(!a.target_nodes.empty(), "denial-of-sleep needs target nodes");
                for (const auto& nid : a.target_nodes)
                    require(node_ids.count(nid) > 0,
                            "denial-of-sleep targets unknown node '" + nid + "'");
                break;
            case AttackKind::FlashCrowd:
                require(a.surge >= 1.0, "flash-crowd surge must be >= 1");
                break;
            case AttackKind::DecoyField:
                require(a.decoy_count >= 0, "decoy count must be non-negative");
                require(a.decoy_request_rate >= 0.0, "decoy request rate must be non-negative");
                require(a.decoy_work_per_request >= 0.0,
                        "decoy work_per_request must be non-negative");
                require(a.decoys_per_instance >= 1, "decoys_per_instance must be >= 1");
                break;
            case AttackKind::SupplyChainTaint: break;
        }
        if (a.kind != AttackKind::DenialOfSleep)
            require(cap_ids.count(a.target_capability) > 0,
                    std::string(to_string(a.kind)) + " attack targets unknown capability '" +
                        a.target_capability + "'");
    }

    const auto& d = spec.detector;
    require(d.eps_scalar > 0.0, "detector eps_scalar must be positive");
    require(d.delta_dist > 0.0 && d.delta_dist <= 2.0, "detector delta_dist must be in (0,2]");
    require(d.kappa > 1.0, "detector kappa must be > 1");
    require(d.min_windows >= 2, "detector min_windows must be >= 2");

    if (spec.baseline_mode == BaselineMode::Warmup)
        require(spec.warmup_windows >= d.min_windows &&
                    spec.warmup_windows * 2 <= static_cast<int>(std::llround(windows)),
                "warmup prefix must cover min_windows and at most half the horizon");
    require(spec.perspective == "defender" || spec.perspective == "attacker",
            "perspective must be 'defender' or 'attacker'");
}

} // namespace tdos

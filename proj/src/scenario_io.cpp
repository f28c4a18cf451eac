#include "tdos/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tdos/errors.hpp"

namespace tdos {

using nlohmann::json;

namespace {

Placement placement_from_string(const std::string& s) {
    if (s == "LeastLoadedNode") return Placement::LeastLoadedNode;
    if (s == "RoundRobin") return Placement::RoundRobin;
    throw ValidationError("unknown placement '" + s + "'");
}

const char* to_string(Placement p) {
    return p == Placement::RoundRobin ? "RoundRobin" : "LeastLoadedNode";
}

AttackKind attack_kind_from_string(const std::string& s) {
    if (s == "WEdos") return AttackKind::WEdos;
    if (s == "IEdos") return AttackKind::IEdos;
    if (s == "DenialOfSleep") return AttackKind::DenialOfSleep;
    if (s == "FlashCrowd") return AttackKind::FlashCrowd;
    if (s == "DecoyField") return AttackKind::DecoyField;
    if (s == "SupplyChainTaint") return AttackKind::SupplyChainTaint;
    throw ValidationError("unknown attack kind '" + s + "'");
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    return j.at(key).get<T>();
}

json node_to_json(const TacticalNode& n) {
    return json{{"id", n.id},
                {"x", n.x},
                {"y", n.y},
                {"battery_capacity", n.battery_capacity},
                {"recharge_threshold", n.recharge_threshold},
                {"recharge_duration", n.recharge_duration},
                {"radio_range", n.radio_range},
                {"is_fixed", n.is_fixed}};
}

TacticalNode node_from_json(const json& j) {
    TacticalNode n;
    n.id = j.at("id").get<std::string>();
    n.x = get_or(j, "x", 0.0);
    n.y = get_or(j, "y", 0.0);
    n.battery_capacity = get_or(j, "battery_capacity", 1e9);
    n.recharge_threshold = get_or(j, "recharge_threshold", 0.2);
    n.recharge_duration = get_or(j, "recharge_duration", 120.0);
    n.radio_range = get_or(j, "radio_range", 100.0);
    n.is_fixed = get_or(j, "is_fixed", false);
    return n;
}

json attack_to_json(const AttackSpec& a) {
    json j{{"kind", to_string(a.kind)},
           {"t_start", a.t_start},
           {"t_end", a.t_end}};
    if (a.kind == AttackKind::DenialOfSleep)
        j["target_nodes"] = a.target_nodes;
    else
        j["target_capability"] = a.target_capability;
    switch (a.kind) {
        case AttackKind::WEdos: j["multiplier"] = a.multiplier; break;
        case AttackKind::IEdos: j["inflation"] = a.inflation; break;
        case AttackKind::DenialOfSleep: j["idle_factor"] = a.idle_factor; break;
        case AttackKind::FlashCrowd: j["surge"] = a.surge; break;
        case AttackKind::DecoyField:
            j["decoy_count"] = a.decoy_count;
            j["decoy_request_rate"] = a.decoy_request_rate;
            j["decoy_work_per_request"] = a.decoy_work_per_request;
            j["decoys_per_instance"] = a.decoys_per_instance;
            break;
        case AttackKind::SupplyChainTaint: break;
    }
    return j;
}

AttackSpec attack_from_json(const json& j) {
    AttackSpec a;
    a.kind = attack_kind_from_string(j.at("kind").get<std::string>());
    a.t_start = j.at("t_start").get<double>();
    a.t_end = j.at("t_end").get<double>();
    a.target_capability = get_or<std::string>(j, "target_capability", "");
    a.target_nodes = get_or<std::vector<std::string>>(j, "target_nodes", {});
    a.multiplier = get_or(j, "multiplier", 1.0);
    a.inflation = get_or(j, "inflation", 0.0);
    a.idle_factor = get_or(j, "idle_factor", 1.0);
    a.surge = get_or(j, "surge", 1.0);
    a.decoy_count = get_or(j, "decoy_count", 0);
    a.decoy_request_rate = get_or(j, "decoy_request_rate", 0.0);
    a.decoy_work_per_request = get_or(j, "decoy_work_per_request", 0.0);
    a.decoys_per_instance = get_or(j, "decoys_per_instance", 1);
    return a;
}

json spec_to_json(const ScenarioSpec& s) {
    json j;
    j["version"] = s.version;
    j["name"] = s.name;
    j["duration"] = s.duration;
    j["window_length"] = s.window_length;
    j["seed"] = s.seed;

    j["nodes"] = json::array();
    for (const auto& n : s.nodes) j["nodes"].push_back(node_to_json(n));

    j["capabilities"] = json::array();
    for (const auto& c : s.capabilities)
        j["capabilities"].push_back(json{{"id", c.id},
                                         {"depends_on", c.depends_on},
                                         {"bootstrap_instances", c.bootstrap_instances}});

    j["fixed_actions"] = json::array();
    for (const auto& a : s.fixed_actions)
        j["fixed_actions"].push_back(json{{"action_id", a.action_id},
                                          {"time", a.time},
                                          {"capability", a.required_capability},
                                          {"client_id", a.client_id},
                                          {"request_count", a.request_count},
                                          {"work_per_request", a.work_per_request}});

    j["mission_generators"] = json::array();
    for (const auto& g : s.mission_generators)
        j["mission_generators"].push_back(json{{"capability", g.capability_id},
                                               {"rate", g.rate},
                                               {"client_pool", g.client_pool},
                                               {"request_count", g.request_count},
                                               {"work_per_request", g.work_per_request},
                                               {"t_start", g.t_start},
                                               {"t_end", g.t_end}});

    j["power"] = json{{"p_idle", s.power.p_idle},
                      {"alpha", s.power.alpha},
                      {"beta", s.power.beta},
                      {"gamma", s.power.gamma},
                      {"c_inst", s.power.c_inst}};
    j["ir"] = json{{"sigma0", s.ir.sigma0}, {"sigma1", s.ir.sigma1}};
    j["autoscale"] = json{{"u_hi", s.policy.u_hi},
                          {"u_lo", s.policy.u_lo},
                          {"k_windows", s.policy.k_windows},
                          {"max_instances", s.policy.max_instances},
                          {"placement", to_string(s.policy.placement)},
                          {"sanitized_telemetry", s.policy.sanitized_telemetry}};

    j["marketplace"] = json::array();
    for (const auto& img : s.marketplace)
        j["marketplace"].push_back(json{{"image_id", img.image_id},
                                        {"capability", img.capability_id},
                                        {"tainted", img.tainted},
                                        {"provisioning_delay", img.provisioning_delay},
                                        {"secondary_cluster", img.secondary_cluster}});

    j["attacks"] = json::array();
    for (const auto& a : s.attacks) j["attacks"].push_back(attack_to_json(a));

    j["detector"] = json{{"eps_scalar", s.detector.eps_scalar},
                         {"delta_dist", s.detector.delta_dist},
                         {"kappa", s.detector.kappa},
                         {"floor_nc", s.detector.floor_nc},
                         {"floor_td", s.detector.floor_td},
                         {"min_windows", s.detector.min_windows},
                         {"or_conditions", s.detector.or_conditions},
                         {"td_total_is_sum", s.detector.td_total_is_sum}};

    j["baseline"] = s.baseline_mode == BaselineMode::Warmup ? "warmup" : "reference_run";
    j["warmup_windows"] = s.warmup_windows;
    j["perspective"] = s.perspective;
    j["human_impact_tags"] = s.human_impact_tags;
    return j;
}

ScenarioSpec spec_from_json(const json& j) {
    ScenarioSpec s;
    s.version = j.at("version").get<int>();
    if (s.version != 1) throw ValidationError("unsupported scenario version");
    s.name = get_or<std::string>(j, "name", "");
    s.duration = j.at("duration").get<double>();
    s.window_length = get_or(j, "window_length", 60.0);
    s.seed = get_or<std::uint64_t>(j, "seed", 42);

    for (const auto& n : j.at("nodes")) s.nodes.push_back(node_from_json(n));
    for (const auto& c : j.at("capabilities")) {
        CapabilitySpec cs;
        cs.id = c.at("id").get<std::string>();
        cs.depends_on = get_or<std::set<std::string>>(c, "depends_on", {});
        cs.bootstrap_instances = get_or(c, "bootstrap_instances", 1);
        s.capabilities.push_back(std::move(cs));
    }
    for (const auto& a : get_or(j, "fixed_actions", json::array())) {
        MissionAction m;
        m.action_id = a.at("action_id").get<std::string>();
        m.time = a.at("time").get<double>();
        m.required_capability = a.at("capability").get<std::string>();
        m.client_id = a.at("client_id").get<std::string>();
        m.request_count = a.at("request_count").get<long>();
        m.work_per_request = a.at("work_per_request").get<double>();
        s.fixed_actions.push_back(std::move(m));
    }
    for (const auto& g : get_or(j, "mission_generators", json::array())) {
        MissionGenerator mg;
        mg.capability_id = g.at("capability").get<std::string>();
        mg.rate = g.at("rate").get<double>();
        mg.client_pool = get_or(g, "client_pool", 1);
        mg.request_count = get_or<long>(g, "request_count", 1);
        mg.work_per_request = get_or(g, "work_per_request", 1.0);
        mg.t_start = get_or(g, "t_start", 0.0);
        mg.t_end = get_or(g, "t_end", -1.0);
        s.mission_generators.push_back(std::move(mg));
    }
    if (j.contains("power")) {
        const auto& p = j.at("power");
        s.power.p_idle = get_or(p, "p_idle", s.power.p_idle);
        s.power.alpha = get_or(p, "alpha", s.power.alpha);
        s.power.beta = get_or(p, "beta", s.power.beta);
        s.power.gamma = get_or(p, "gamma", s.power.gamma);
        s.power.c_inst = get_or(p, "c_inst", s.power.c_inst);
    }
    if (j.contains("ir")) {
        s.ir.sigma0 = get_or(j.at("ir"), "sigma0", s.ir.sigma0);
        s.ir.sigma1 = get_or(j.at("ir"), "sigma1", s.ir.sigma1);
    }
    if (j.contains("autoscale")) {
        const auto& p = j.at("autoscale");
        s.policy.u_hi = get_or(p, "u_hi", s.policy.u_hi);
        s.policy.u_lo = get_or(p, "u_lo", s.policy.u_lo);
        s.policy.k_windows = get_or(p, "k_windows", s.policy.k_windows);
        s.policy.max_instances = get_or(p, "max_instances", s.policy.max_instances);
        s.policy.placement =
            placement_from_string(get_or<std::string>(p, "placement", "LeastLoadedNode"));
        s.policy.sanitized_telemetry = get_or(p, "sanitized_telemetry", false);
    }
    for (const auto& m : get_or(j, "marketplace", json::array())) {
        MarketplaceImage img;
        img.image_id = m.at("image_id").get<std::string>();
        img.capability_id = m.at("capability").get<std::string>();
        img.tainted = get_or(m, "tainted", false);
        img.provisioning_delay = get_or(m, "provisioning_delay", 0.0);
        img.secondary_cluster = get_or(m, "secondary_cluster", false);
        s.marketplace.push_back(std::move(img));
    }
    for (const auto& a : get_or(j, "attacks", json::array()))
        s.attacks.push_back(attack_from_json(a));
    if (j.contains("detector")) {
        const auto& d = j.at("detector");
        s.detector.eps_scalar = get_or(d, "eps_scalar", s.detector.eps_scalar);
        s.detector.delta_dist = get_or(d, "delta_dist", s.detector.delta_dist);
        s.detector.kappa = get_or(d, "kappa", s.detector.kappa);
        s.detector.floor_nc = get_or(d, "floor_nc", s.detector.floor_nc);
        s.detector.floor_td = get_or(d, "floor_td", s.detector.floor_td);
        s.detector.min_windows = get_or(d, "min_windows", s.detector.min_windows);
        s.detector.or_conditions = get_or(d, "or_conditions", false);
        s.detector.td_total_is_sum = get_or(d, "td_total_is_sum", false);
    }
    const std::string baseline = get_or<std::string>(j, "baseline", "reference_run");
    if (baseline == "reference_run")
        s.baseline_mode = BaselineMode::ReferenceRun;
    else if (baseline == "warmup")
        s.baseline_mode = BaselineMode::Warmup;
    else
        throw ValidationError("unknown baseline mode '" + baseline + "'");
    s.warmup_windows = get_or(j, "warmup_windows", 0);
    s.perspective = get_or<std::string>(j, "perspective", "defender");
    s.human_impact_tags = get_or<std::vector<std::string>>(j, "human_impact_tags", {});
    return s;
}

} // namespace

ScenarioSpec parse_scenario(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
    ScenarioSpec s;
    try {
        s = spec_from_json(j);
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    validate(s);
    return s;
}

ScenarioSpec load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path.string());
}

std::string write_scenario(const ScenarioSpec& spec) {
    return spec_to_json(spec).dump(2) + "\n";
}

void save_scenario(const ScenarioSpec& spec, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write scenario file '" + path.string() + "'");
    out << write_scenario(spec);
}

std::uint64_t scenario_digest(const ScenarioSpec& spec) {
    const std::string canon = spec_to_json(spec).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : canon) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace tdos

#include "tdos/report.hpp"

#include <algorithm>

#include <json.hpp>

#include "tdos/errors.hpp"

namespace tdos {

using nlohmann::json;

VerdictClass expected_class(const std::vector<AttackSpec>& attacks,
                            const std::string& capability) {
    bool cost = false, deploy = false, flash = false;
    for (const auto& a : attacks) {
        if (is_neutral(a) || a.target_capability != capability) continue;
        switch (a.kind) {
            case AttackKind::WEdos: cost = true; break;
            case AttackKind::IEdos:
            case AttackKind::DecoyField: deploy = true; break;
            case AttackKind::FlashCrowd: flash = true; break;
            default: break;
        }
    }
    if (flash) return VerdictClass::NotTdosDemandShift;
    if (cost && deploy) return VerdictClass::UDTdos;
    if (cost) return VerdictClass::UTdos;
    if (deploy) return VerdictClass::DTdos;
    return VerdictClass::Normal;
}

namespace {

std::string evaluate(VerdictClass expected, VerdictClass got) {
    if (expected == got) return "hit";
    if (expected == VerdictClass::Normal) return "false-alarm";
    if (got == VerdictClass::Normal || got == VerdictClass::NotTdosDemandShift) return "miss";
    return "mismatch";
}

int severity(VerdictClass v) {
    switch (v) {
        case VerdictClass::Normal: return 0;
        case VerdictClass::NotTdosDemandShift: return 1;
        case VerdictClass::UTdos: return 2;
        case VerdictClass::DTdos: return 3;
        case VerdictClass::UDTdos: return 4;
    }
    return 0;
}

json similarity_json(const SimilarityResult& r) {
    return json{{"similar", r.similar}, {"score", r.score}};
}

json condition_json(const ConditionEvidence& c) {
    return json{{"satisfied", c.satisfied},
                {"dominates", c.dominance.dominates},
                {"ratio", c.dominance.ratio},
                {"difference", c.dominance.difference},
                {"distribution", similarity_json(c.distribution)}};
}

} // namespace

DetectionReport build_report(const ScenarioSpec& spec, const SimTrace& trace,
                             const SimTrace* baseline) {
    DetectionReport rep;
    rep.scenario_digest = trace.scenario_digest;
    rep.seed = trace.seed;
    rep.scenario_name = spec.name;
    rep.ground_truth = spec.attacks;
    rep.energy = trace.energy;
    rep.ir_series = trace.ir_series;

    for (const auto& inst : trace.instances)
        if (inst.tainted) rep.tainted_lineage.push_back(inst);
    for (const auto& w : trace.windows) rep.sinkholed_total += w.sinkholed;

    for (const auto& cap : spec.capabilities) {
        CapabilityFinding f;
        f.capability = cap.id;
        StateSummary a, b;
        if (baseline) {
            a = summarize(*baseline, cap.id, 0, trace.window_count, spec.detector);
            b = summarize(trace, cap.id, 0, trace.window_count, spec.detector);
        } else {
            // Warm-up fallback: prefix of the same run is state A, the
            // equally long tail is state B.
            const int L = spec.warmup_windows;
            a = summarize(trace, cap.id, 0, L, spec.detector);
            b = summarize(trace, cap.id, trace.window_count - L, L, spec.detector);
        }
        f.verdict = classify(a, b, spec.detector);
        f.expected = expected_class(spec.attacks, cap.id);
        f.evaluation = evaluate(f.expected, f.verdict.cls);
        rep.findings.push_back(std::move(f));
    }
    return rep;
}

VerdictClass overall_verdict(const DetectionReport& report) {
    VerdictClass v = VerdictClass::Normal;
    for (const auto& f : report.findings)
        if (severity(f.verdict.cls) > severity(v)) v = f.verdict.cls;
    return v;
}

std::string report_to_json(const DetectionReport& rep) {
    json j;
    j["scenario"] = rep.scenario_name;
    j["scenario_digest"] = rep.scenario_digest;
    j["seed"] = rep.seed;
    j["overall_verdict"] = to_string(overall_verdict(rep));

    j["verdicts"] = json::array();
    for (const auto& f : rep.findings) {
        json v;
        v["capability"] = f.capability;
        v["class"] = to_string(f.verdict.cls);
        v["tps"] = json{{"holds", f.verdict.tps.holds},
                        {"na_scalar", similarity_json(f.verdict.tps.na_scalar)},
                        {"na_dist", similarity_json(f.verdict.tps.na_dist)},
                        {"nt_scalar", similarity_json(f.verdict.tps.nt_scalar)},
                        {"nt_dist", similarity_json(f.verdict.tps.nt_dist)}};
        v["cost_condition"] = condition_json(f.verdict.cost);
        v["deploy_condition"] = condition_json(f.verdict.deploy);
        v["expected"] = to_string(f.expected);
        v["evaluation"] = f.evaluation;
        j["verdicts"].push_back(std::move(v));
    }

    j["ground_truth"] = json::array();
    for (const auto& a : rep.ground_truth)
        j["ground_truth"].push_back(json{{"kind", to_string(a.kind)},
                                         {"target", a.kind == AttackKind::DenialOfSleep
                                                        ? json(a.target_nodes)
                                                        : json(a.target_capability)},
                                         {"t_start", a.t_start},
                                         {"t_end", a.t_end},
                                         {"neutral", is_neutral(a)}});

    j["energy"] = json::array();
    for (const auto& e : rep.energy)
        j["energy"].push_back(json{{"node", e.node},
                                   {"total_draw", e.total_draw},
                                   {"recharge_count", e.recharge_count},
                                   {"final_soc", e.final_soc},
                                   {"capacity", e.capacity},
                                   {"restored", e.restored}});

    j["ir_series"] = rep.ir_series;

    j["tainted_lineage"] = json::array();
    for (const auto& i : rep.tainted_lineage)
        j["tainted_lineage"].push_back(json{{"instance", i.id},
                                            {"capability", i.capability_id},
                                            {"node", i.host_node_id},
                                            {"image", i.image_id},
                                            {"spawn_reason", to_string(i.spawn_reason)}});

    j["sinkholed_total"] = rep.sinkholed_total;
    return j.dump(2) + "\n";
}

} // namespace tdos

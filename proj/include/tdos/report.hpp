#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tdos/detect.hpp"
#include "tdos/scenario.hpp"
#include "tdos/trace.hpp"

namespace tdos {

struct CapabilityFinding {
    std::string capability;
    Verdict verdict;
    VerdictClass expected = VerdictClass::Normal; // from attack ground truth
    std::string evaluation;                       // hit | miss | false-alarm | mismatch
};

struct DetectionReport {
    std::uint64_t scenario_digest = 0;
    std::uint64_t seed = 0;
    std::string scenario_name;
    std::vector<CapabilityFinding> findings;
    std::vector<AttackSpec> ground_truth; // echoed attack intervals (never fed to detectors)
    std::vector<NodeEnergySummary> energy;
    std::map<std::string, std::vector<double>> ir_series;
    std::vector<InstanceRecord> tainted_lineage;
    double sinkholed_total = 0.0;
};

// Expected verdict implied by the attacks that target one capability;
// the evaluation block is recomputable from this mapping alone.
VerdictClass expected_class(const std::vector<AttackSpec>& attacks, const std::string& capability);

// Classifies every capability of `trace` against the baseline state A
// (reference trace, or the warm-up prefix when `baseline` is null).
DetectionReport build_report(const ScenarioSpec& spec, const SimTrace& trace,
                             const SimTrace* baseline);

std::string report_to_json(const DetectionReport& report);

// Severity-maximum verdict over all capabilities (the `--expect` key).
VerdictClass overall_verdict(const DetectionReport& report);

} // namespace tdos

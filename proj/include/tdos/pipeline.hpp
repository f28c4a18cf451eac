#pragma once

#include <filesystem>
#include <optional>

#include "tdos/report.hpp"
#include "tdos/scenario.hpp"
#include "tdos/trace.hpp"

namespace tdos {

struct PipelineResult {
    SimTrace trace;
    std::optional<SimTrace> baseline;
    DetectionReport report;
};

// Runs the scenario (and its attack-free reference when baseline mode is
// reference_run), classifies, and writes events.csv / windows.csv /
// report.json (plus baseline/ exports) under output_dir.
PipelineResult run_pipeline(const ScenarioSpec& scenario,
                            const std::filesystem::path& output_dir);

// In-memory variant for tests: no filesystem output.
PipelineResult run_detection(const ScenarioSpec& scenario);

} // namespace tdos

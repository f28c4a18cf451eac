#include "tdos/pipeline.hpp"

#include <fstream>

#include "tdos/csv_export.hpp"
#include "tdos/engine.hpp"

namespace tdos {

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

PipelineResult run_impl(const ScenarioSpec& scenario) {
    PipelineResult result;
    result.trace = run(scenario);
    const SimTrace* baseline = nullptr;
    if (scenario.baseline_mode == BaselineMode::ReferenceRun) {
        if (scenario.attacks.empty()) {
            baseline = &result.trace; // the run is its own reference
        } else {
            result.baseline = run(without_attacks(scenario));
            baseline = &*result.baseline;
        }
    }
    result.report = build_report(scenario, result.trace, baseline);
    return result;
}

} // namespace

PipelineResult run_detection(const ScenarioSpec& scenario) {
    validate(scenario);
    return run_impl(scenario);
}

PipelineResult run_pipeline(const ScenarioSpec& scenario,
                            const std::filesystem::path& output_dir) {
    validate(scenario);
    PipelineResult result = run_impl(scenario);
    std::filesystem::create_directories(output_dir);
    export_trace(result.trace, output_dir);
    if (result.baseline) {
        auto base_dir = output_dir / "baseline";
        std::filesystem::create_directories(base_dir);
        export_trace(*result.baseline, base_dir);
    }
    write_file(output_dir / "report.json", report_to_json(result.report));
    return result;
}

} // namespace tdos

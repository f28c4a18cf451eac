// tdossim: run, validate, and inspect tactical-cloud sustainability scenarios.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tdos/errors.hpp"
#include "tdos/pipeline.hpp"
#include "tdos/scenario_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int cmd_run(const std::string& path, std::uint64_t seed, bool has_seed,
            const std::string& out_dir, const std::string& expect) {
    tdos::ScenarioSpec spec = tdos::load_scenario(path);
    if (has_seed) spec.seed = seed;

    tdos::PipelineResult result = out_dir.empty()
                                      ? tdos::run_detection(spec)
                                      : tdos::run_pipeline(spec, out_dir);

    std::printf("scenario: %s\n", spec.name.c_str());
    std::printf("seed: %llu\n", static_cast<unsigned long long>(spec.seed));
    std::printf("digest: %016llx\n",
                static_cast<unsigned long long>(result.trace.scenario_digest));
    std::printf("windows: %d  events: %zu\n", result.trace.window_count,
                result.trace.events.size());
    for (const auto& f : result.report.findings)
        std::printf("  %-16s %-20s expected=%-20s %s\n", f.capability.c_str(),
                    tdos::to_string(f.verdict.cls), tdos::to_string(f.expected),
                    f.evaluation.c_str());
    tdos::VerdictClass overall = tdos::overall_verdict(result.report);
    std::printf("overall: %s\n", tdos::to_string(overall));
    if (!out_dir.empty()) std::printf("wrote: %s\n", out_dir.c_str());

    if (!expect.empty() && tdos::verdict_from_string(expect) != overall) {
        std::fprintf(stderr, "expect failed: wanted %s, got %s\n", expect.c_str(),
                     tdos::to_string(overall));
        return 2;
    }
    return 0;
}

int cmd_validate(const std::string& path) {
    tdos::ScenarioSpec spec = tdos::load_scenario(path); // throws on any violation
    std::printf("ok: %s (digest %016llx)\n", spec.name.c_str(),
                static_cast<unsigned long long>(tdos::scenario_digest(spec)));
    return 0;
}

int cmd_corpus(const std::string& dir, const std::string& out_dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".scenario") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        std::fprintf(stderr, "no .scenario files under %s\n", dir.c_str());
        return 1;
    }

    std::printf("%-16s %-22s %s\n", "scenario", "overall", "evaluation");
    int failures = 0;
    for (const auto& f : files) {
        tdos::ScenarioSpec spec = tdos::load_scenario(f);
        tdos::PipelineResult result =
            out_dir.empty() ? tdos::run_detection(spec)
                            : tdos::run_pipeline(spec, fs::path(out_dir) / f.stem());
        bool all_hit = true;
        for (const auto& finding : result.report.findings)
            if (finding.evaluation != "hit") all_hit = false;
        if (!all_hit) ++failures;
        std::printf("%-16s %-22s %s\n", spec.name.c_str(),
                    tdos::to_string(tdos::overall_verdict(result.report)),
                    all_hit ? "all-hit" : "FAIL");
    }
    return failures == 0 ? 0 : 3;
}

void print_similarity(const char* label, const json& s) {
    std::printf("    %-12s %s (score %.6g)\n", label,
                s.at("similar").get<bool>() ? "similar" : "dissimilar",
                s.at("score").get<double>());
}

void print_condition(const char* label, const json& c) {
    std::printf("  %s: %s\n", label, c.at("satisfied").get<bool>() ? "satisfied" : "not satisfied");
    std::printf("    dominance    %s (ratio %.6g, difference %.6g)\n",
                c.at("dominates").get<bool>() ? "yes" : "no",
                c.at("ratio").get<double>(), c.at("difference").get<double>());
    print_similarity("distribution", c.at("distribution"));
}

int cmd_explain(const std::string& report_path, const std::string& capability) {
    std::ifstream in(report_path, std::ios::binary);
    if (!in) {
        std::fprintf(stderr, "cannot open %s\n", report_path.c_str());
        return 1;
    }
    json j = json::parse(in);
    for (const auto& v : j.at("verdicts")) {
        if (v.at("capability").get<std::string>() != capability) continue;
        std::printf("capability: %s\n", capability.c_str());
        std::printf("class: %s (expected %s, %s)\n",
                    v.at("class").get<std::string>().c_str(),
                    v.at("expected").get<std::string>().c_str(),
                    v.at("evaluation").get<std::string>().c_str());
        const json& tps = v.at("tps");
        std::printf("  demand equivalence: %s\n",
                    tps.at("holds").get<bool>() ? "holds" : "broken");
        print_similarity("actions", tps.at("na_scalar"));
        print_similarity("actions(t)", tps.at("na_dist"));
        print_similarity("deps", tps.at("nt_scalar"));
        print_similarity("deps(t)", tps.at("nt_dist"));
        print_condition("cost condition", v.at("cost_condition"));
        print_condition("deployment condition", v.at("deploy_condition"));
        return 0;
    }
    std::fprintf(stderr, "capability %s not present in %s\n", capability.c_str(),
                 report_path.c_str());
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tactical edge cloud sustainability simulator"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir, expect, report_path, capability;
    std::string corpus_dir = "scenarios";
    std::uint64_t seed = 0;

    auto* run = app.add_subcommand("run", "Simulate a scenario and classify each capability");
    run->add_option("scenario", scenario_path, "Scenario file")->required();
    auto* seed_opt = run->add_option("--seed", seed, "Override the scenario seed");
    run->add_option("--out", out_dir, "Write events.csv, windows.csv, report.json here");
    run->add_option("--expect", expect,
                    "Fail (exit 2) unless the overall verdict matches");

    auto* validate = app.add_subcommand("validate", "Parse and validate a scenario file");
    validate->add_option("scenario", scenario_path, "Scenario file")->required();

    auto* corpus = app.add_subcommand("corpus", "Run every scenario in a directory");
    corpus->add_option("--dir", corpus_dir, "Scenario directory");
    corpus->add_option("--out", out_dir, "Per-scenario output root");

    auto* explain = app.add_subcommand("explain", "Print the evidence behind one verdict");
    explain->add_option("report", report_path, "report.json from a previous run")->required();
    explain->add_option("capability", capability, "Capability id")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(scenario_path, seed, seed_opt->count() > 0, out_dir, expect);
        if (validate->parsed()) return cmd_validate(scenario_path);
        if (corpus->parsed()) return cmd_corpus(corpus_dir, out_dir);
        if (explain->parsed()) return cmd_explain(report_path, capability);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

#pragma once

#include <filesystem>
#include <string>

#include "tdos/scenario.hpp"

namespace tdos {

// Parses and fully validates a scenario file (JSON, schema documented in
// docs/scenario-schema.md). Throws ParseError or ValidationError.
ScenarioSpec load_scenario(const std::filesystem::path& path);

ScenarioSpec parse_scenario(const std::string& text, const std::string& origin = "<string>");

// Canonical serialized form: every default filled explicitly, keys sorted.
std::string write_scenario(const ScenarioSpec& spec);

void save_scenario(const ScenarioSpec& spec, const std::filesystem::path& path);

} // namespace tdos

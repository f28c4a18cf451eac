#pragma once

#include <filesystem>
#include <string>

#include "tdos/trace.hpp"

namespace tdos {

// 9 significant digits, '.' decimal separator, locale-independent.
std::string format_number(double v);

// Writes events.csv and windows.csv (UTF-8, LF, fixed header order).
// Re-exporting the same trace yields byte-identical files.
void export_trace(const SimTrace& trace, const std::filesystem::path& dir);

std::string events_csv(const SimTrace& trace);
std::string windows_csv(const SimTrace& trace);

} // namespace tdos

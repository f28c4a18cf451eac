#include "tdos/csv_export.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "tdos/errors.hpp"

namespace tdos {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

namespace {

// Commas never occur in ids; quote only the free-form detail column.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string events_csv(const SimTrace& trace) {
    std::ostringstream out;
    out << "time,sequence,kind,capability,node,instance,detail\n";
    for (const auto& e : trace.events) {
        std::string detail = e.detail;
        if (e.value != 0.0 || e.kind == EventKind::ActionArrival ||
            e.kind == EventKind::EnergyTick)
            detail = "value=" + format_number(e.value) + (detail.empty() ? "" : " " + detail);
        out << format_number(e.time) << ',' << e.sequence << ',' << to_string(e.kind) << ','
            << e.capability << ',' << e.node << ',' << e.instance << ',' << csv_field(detail)
            << '\n';
    }
    return out.str();
}

std::string windows_csv(const SimTrace& trace) {
    std::ostringstream out;
    out << "window_index,capability,C,R,W,NF,nA,nT,nC,tD,energy_draw,ir_max,sinkholed,"
           "forged_fraction\n";
    for (const auto& w : trace.windows) {
        out << w.window_index << ',' << w.capability << ',' << w.clients << ',' << w.requests
            << ',' << format_number(w.workload) << ',' << w.live_instances << ',' << w.actions
            << ',' << w.dependents << ',' << format_number(w.cost) << ',' << w.supplier_nodes
            << ',' << format_number(w.energy_draw) << ',' << format_number(w.ir_max) << ','
            << format_number(w.sinkholed) << ',' << format_number(w.forged_fraction) << '\n';
    }
    return out.str();
}

void export_trace(const SimTrace& trace, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& [name, content] :
         {std::pair<std::string, std::string>{"events.csv", events_csv(trace)},
          {"windows.csv", windows_csv(trace)}}) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw ParseError("cannot write '" + (dir / name).string() + "'");
        out << content;
    }
}

} // namespace tdos

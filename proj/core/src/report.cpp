#include "silab/report.hpp"

#include <cstdio>
#include <sstream>

namespace silab {

bool Report::all_pass_or_void() const {
    for (const auto& rec : records)
        if (rec.verdict == Verdict::Fail) return false;
    return true;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string render_table(const Report& r) {
    std::ostringstream out;
    out << "scenario: " << r.scenario_name << "  (seed " << r.seed << ")\n";
    char line[256];
    std::snprintf(line, sizeof(line), "%-18s %-28s %-14s %-14s %-7s\n", "check",
                  "inputs", "bound", "slack", "verdict");
    out << line;
    out << std::string(84, '-') << '\n';
    for (const auto& rec : r.records) {
        std::snprintf(line, sizeof(line), "%-18s %-28s %-14.6g %-14.6g %-7s\n",
                      rec.check_id.c_str(), rec.inputs.c_str(), rec.bound_value,
                      rec.slack, to_string(rec.verdict).c_str());
        out << line;
        for (const auto& [k, v] : rec.measured) {
            std::snprintf(line, sizeof(line), "    %-24s %.12g\n", k.c_str(), v);
            out << line;
        }
    }
    out << std::string(84, '-') << '\n';
    out << "runtime: " << format_double(r.runtime_seconds) << " s\n";
    return out.str();
}

std::string render_machine(const Report& r) {
    std::ostringstream out;
    out << "scenario=" << r.scenario_name << " seed=" << r.seed << '\n';
    for (const auto& rec : r.records) {
        out << "check=" << rec.check_id;
        if (!rec.inputs.empty()) {
            std::string inputs = rec.inputs;
            for (char& c : inputs)
                if (c == ' ') c = ',';
            out << " inputs=" << inputs;
        }
        for (const auto& [k, v] : rec.measured) out << ' ' << k << '=' << format_double(v);
        out << " bound_desc=\"" << rec.bound_desc << "\"";
        out << " bound=" << format_double(rec.bound_value);
        out << " slack=" << format_double(rec.slack);
        out << " verdict=" << to_string(rec.verdict) << '\n';
    }
    out << "runtime_seconds=" << format_double(r.runtime_seconds) << '\n';
    return out.str();
}

}  // namespace silab

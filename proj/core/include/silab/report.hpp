#ifndef SILAB_REPORT_HPP
#define SILAB_REPORT_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "silab/approx_inverse.hpp"

namespace silab {

// One verified inequality or identity: what was measured, the bound it was
// tested against, and the verdict.
struct CheckRecord {
    std::string check_id;
    std::string inputs;  // e.g. "n=12 lambda=1"
    std::vector<std::pair<std::string, double>> measured;
    std::string bound_desc;
    double bound_value = 0.0;
    double slack = 0.0;
    Verdict verdict = Verdict::Void;
};

struct Report {
    std::string scenario_name;
    uint64_t seed = 0;
    std::vector<CheckRecord> records;
    double runtime_seconds = 0.0;

    bool all_pass_or_void() const;
};

// Fixed-width human table.
std::string render_table(const Report& r);

// One record per line as key=value pairs; the runtime lands on its own final
// line so reports stay byte-comparable without it.
std::string render_machine(const Report& r);

// Deterministic shortest-17-digit formatting shared by report and CSV paths.
std::string format_double(double v);

}  // namespace silab

#endif

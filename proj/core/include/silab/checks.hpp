#ifndef SILAB_CHECKS_HPP
#define SILAB_CHECKS_HPP

#include <string>
#include <vector>

#include "silab/report.hpp"
#include "silab/scenario.hpp"

namespace silab {

// Registered check ids, in canonical order.
const std::vector<std::string>& check_registry();

// Runs one check against a scenario (model-based checks instantiate the
// scenario model; parameter-driven checks read [params]).
std::vector<CheckRecord> run_check(const std::string& check_id, const Scenario& sc,
                                   const std::string& base_dir);

// Runs every check listed in the scenario and stamps the runtime.
Report run_scenario(const Scenario& sc, const std::string& base_dir);

}  // namespace silab

#endif

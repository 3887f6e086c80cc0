#ifndef SILAB_SCENARIO_HPP
#define SILAB_SCENARIO_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "silab/gibbs.hpp"

namespace silab {

// Model description as read from a model file or a scenario [model] section:
// either a graph file or a generated family, a scalar or per-element
// fugacity, and an optional pinning.
struct ModelSpec {
    std::string kind;  // "monomer-dimer" | "hardcore"
    std::string graph_path;
    std::string family;
    std::map<std::string, std::string> family_params;
    std::vector<double> fugacity;  // one entry = uniform
    std::vector<int> pin_occupied;
    std::vector<int> pin_unoccupied;

    bool defined() const { return !kind.empty(); }
};

ModelInstance instantiate(const ModelSpec& spec, const std::string& base_dir);

struct Scenario {
    std::string name;
    uint64_t seed = 1;
    std::vector<std::string> checks;
    ModelSpec model;
    std::map<std::string, double> tolerances;       // per-check overrides
    std::map<std::string, std::string> params;      // free-form check parameters
    long config_cap = kDefaultConfigCap;

    double tolerance(const std::string& check_id, double fallback) const;
    std::string param(const std::string& key, const std::string& fallback) const;
    double param_num(const std::string& key, double fallback) const;
    int param_int(const std::string& key, int fallback) const;
};

// Flat key-value documents with [section] headers; '#' starts a comment.
Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::string& path);

// Model files are the [model] section alone (the header is optional).
ModelSpec parse_model(std::istream& in);
ModelSpec load_model(const std::string& path);

}  // namespace silab

#endif

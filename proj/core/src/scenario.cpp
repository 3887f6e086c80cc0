#include "silab/scenario.hpp"

#include <fstream>
#include <sstream>

#include "silab/errors.hpp"
#include "silab/families.hpp"

namespace silab {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::vector<int> parse_id_list(const std::string& s, int line_no) {
    std::vector<int> out;
    for (const auto& tok : split_ws(s)) {
        try {
            out.push_back(std::stoi(tok));
        } catch (...) {
            throw ParseError("expected integer id list, got \"" + tok + "\"", line_no);
        }
    }
    return out;
}

std::vector<double> parse_num_list(const std::string& s, int line_no) {
    std::vector<double> out;
    for (const auto& tok : split_ws(s)) {
        try {
            out.push_back(std::stod(tok));
        } catch (...) {
            throw ParseError("expected number list, got \"" + tok + "\"", line_no);
        }
    }
    return out;
}

std::map<std::string, std::string> parse_kv_pairs(const std::string& s, int line_no) {
    std::map<std::string, std::string> out;
    for (const auto& tok : split_ws(s)) {
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected key=value, got \"" + tok + "\"", line_no);
        out[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return out;
}

void apply_model_key(ModelSpec& spec, const std::string& key, const std::string& value,
                     int line_no) {
    if (key == "kind") {
        spec.kind = value;
    } else if (key == "graph-path") {
        spec.graph_path = value;
    } else if (key == "family") {
        spec.family = value;
    } else if (key == "family-params") {
        spec.family_params = parse_kv_pairs(value, line_no);
    } else if (key == "fugacity") {
        spec.fugacity = parse_num_list(value, line_no);
        if (spec.fugacity.empty())
            throw ParseError("fugacity needs at least one value", line_no);
    } else if (key == "pin-occupied") {
        spec.pin_occupied = parse_id_list(value, line_no);
    } else if (key == "pin-unoccupied") {
        spec.pin_unoccupied = parse_id_list(value, line_no);
    } else {
        throw ParseError("unknown model key \"" + key + "\"", line_no);
    }
}

}  // namespace

ModelInstance instantiate(const ModelSpec& spec, const std::string& base_dir) {
    if (!spec.defined()) throw ParamError("model: no model specified");
    ModelKind kind = model_kind_from_string(spec.kind);
    Multigraph g;
    if (!spec.graph_path.empty()) {
        std::string path = spec.graph_path;
        if (!base_dir.empty() && path.front() != '/') path = base_dir + "/" + path;
        g = load_graph(path);
    } else if (!spec.family.empty()) {
        g = generate_family(spec.family, spec.family_params);
    } else {
        throw ParamError("model: needs graph-path or family");
    }
    const int n = kind == ModelKind::MonomerDimer ? g.n_edges() : g.n_vertices();
    std::vector<double> fug;
    if (spec.fugacity.empty())
        fug.assign(n, 1.0);
    else if (spec.fugacity.size() == 1)
        fug.assign(n, spec.fugacity[0]);
    else if (static_cast<int>(spec.fugacity.size()) == n)
        fug = spec.fugacity;
    else
        throw ParamError("model: fugacity list length does not match element count");
    return ModelInstance(kind, std::move(g), std::move(fug),
                         Pinning{spec.pin_occupied, spec.pin_unoccupied});
}

namespace {

Scenario parse_scenario_stream(std::istream& in) {
    Scenario sc;
    std::string line, section = "scenario";
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError("unterminated section header", line_no);
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected key = value", line_no);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (section == "scenario") {
            if (key == "name") sc.name = value;
            else if (key == "seed") sc.seed = std::stoull(value);
            else if (key == "checks") {
                sc.checks = split_ws(value);
            } else if (key == "cap") {
                sc.config_cap = std::stol(value);
            } else {
                throw ParseError("unknown scenario key \"" + key + "\"", line_no);
            }
        } else if (section == "model") {
            apply_model_key(sc.model, key, value, line_no);
        } else if (section == "params") {
            sc.params[key] = value;
        } else if (section == "tolerances") {
            try {
                sc.tolerances[key] = std::stod(value);
            } catch (...) {
                throw ParseError("tolerance needs a number", line_no);
            }
        } else {
            throw ParseError("unknown section [" + section + "]", line_no);
        }
    }
    return sc;
}

}  // namespace

Scenario parse_scenario(std::istream& in) { return parse_scenario_stream(in); }

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario " + path);
    return parse_scenario_stream(in);
}

ModelSpec parse_model(std::istream& in) {
    ModelSpec spec;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') continue;  // tolerate a [model] header
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected key = value", line_no);
        apply_model_key(spec, trim(line.substr(0, eq)), trim(line.substr(eq + 1)),
                        line_no);
    }
    return spec;
}

ModelSpec load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model " + path);
    return parse_model(in);
}

double Scenario::tolerance(const std::string& check_id, double fallback) const {
    auto it = tolerances.find(check_id);
    return it == tolerances.end() ? fallback : it->second;
}

std::string Scenario::param(const std::string& key, const std::string& fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

double Scenario::param_num(const std::string& key, double fallback) const {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (...) {
        throw ParamError("param " + key + " needs a number");
    }
}

int Scenario::param_int(const std::string& key, int fallback) const {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    try {
        return std::stoi(it->second);
    } catch (...) {
        throw ParamError("param " + key + " needs an integer");
    }
}

}  // namespace silab

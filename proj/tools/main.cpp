// silab command line: scenario runner, graph generator, matrix and chain dumps.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "silab/checks.hpp"
#include "silab/dynamics.hpp"
#include "silab/errors.hpp"
#include "silab/families.hpp"
#include "silab/report.hpp"

namespace {

using namespace silab;

void write_or_print(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ParamError("cannot write " + out_path);
    out << text;
}

std::map<std::string, std::string> kv_from_tokens(const std::vector<std::string>& toks) {
    std::map<std::string, std::string> out;
    for (const auto& t : toks) {
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ParamError("expected key=value, got \"" + t + "\"");
        out[t.substr(0, eq)] = t.substr(eq + 1);
    }
    return out;
}

void apply_overrides(Scenario& sc, const std::vector<std::string>& tol_overrides,
                     long cap, bool cap_set, uint64_t seed, bool seed_set) {
    for (const auto& [k, v] : kv_from_tokens(tol_overrides)) {
        try {
            sc.tolerances[k] = std::stod(v);
        } catch (...) {
            throw ParamError("--tol " + k + " needs a number");
        }
    }
    if (cap_set) sc.config_cap = cap;
    if (seed_set) sc.seed = seed;
}

std::string matrix_csv(const LabeledMatrix& m) {
    std::ostringstream out;
    for (size_t j = 0; j < m.index.size(); ++j)
        out << (j ? "," : "") << m.index[j];
    out << '\n';
    for (int i = 0; i < m.entries.rows(); ++i) {
        for (int j = 0; j < m.entries.cols(); ++j)
            out << (j ? "," : "") << format_double(m.entries(i, j));
        out << '\n';
    }
    return out.str();
}

std::string chain_csv(const GlauberChain& chain) {
    std::ostringstream out;
    for (int s = 0; s < chain.n_states(); ++s) {
        out << s << ",\"";
        auto cfg = chain.support.config(s);
        for (size_t i = 0; i < cfg.size(); ++i) out << (i ? " " : "") << cfg[i];
        out << "\"," << format_double(chain.pi[s]) << '\n';
    }
    out << "P\n";
    for (int i = 0; i < chain.n_states(); ++i) {
        for (int j = 0; j < chain.n_states(); ++j)
            out << (j ? "," : "") << format_double(chain.p(i, j));
        out << '\n';
    }
    return out.str();
}

int cmd_run(const std::string& scenario_path, const std::string& out_path,
            const std::vector<std::string>& tols, long cap, bool cap_set,
            uint64_t seed, bool seed_set) {
    Scenario sc = load_scenario(scenario_path);
    apply_overrides(sc, tols, cap, cap_set, seed, seed_set);
    const std::string base_dir =
        std::filesystem::path(scenario_path).parent_path().string();
    Report rep = run_scenario(sc, base_dir);
    std::cout << render_table(rep);
    if (!out_path.empty()) write_or_print(render_machine(rep), out_path);
    return rep.all_pass_or_void() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral-independence lab"};
    app.require_subcommand(1);

    std::string out_path;
    std::vector<std::string> tol_overrides;
    long cap = kDefaultConfigCap;
    uint64_t seed = 1;

    auto* run = app.add_subcommand("run", "run a scenario file and emit a report");
    std::string scenario_path;
    run->add_option("scenario", scenario_path, "scenario file")->required();
    run->add_option("--out", out_path, "write the machine report here");
    run->add_option("--tol", tol_overrides, "tolerance override name=value");
    auto* run_cap = run->add_option("--cap", cap, "configuration cap");
    auto* run_seed = run->add_option("--seed", seed, "seed override");

    auto* gen = app.add_subcommand("generate", "emit a graph file for a family");
    std::string family;
    std::vector<std::string> gen_params;
    gen->add_option("family", family,
                    "path|cycle|star|complete-ary-tree|random-tree|parallel-cycle")
        ->required();
    gen->add_option("params", gen_params, "family parameters as key=value");
    gen->add_option("--out", out_path, "output path (stdout otherwise)");

    auto* mat = app.add_subcommand("matrix", "dump an influence-type matrix as CSV");
    std::string model_path, which;
    mat->add_option("model", model_path, "model file")->required();
    mat->add_option("which", which, "psi|cor|sym|q|w")->required();
    mat->add_option("--out", out_path, "output path (stdout otherwise)");
    auto* mat_cap = mat->add_option("--cap", cap, "configuration cap");

    auto* chn = app.add_subcommand("chain", "Glauber chain quantities");
    std::string chain_what;
    double mix_eps = 0.25;
    chn->add_option("model", model_path, "model file")->required();
    chn->add_option("what", chain_what, "gap|mix")->required();
    chn->add_option("--eps", mix_eps, "total-variation target for mix");
    chn->add_option("--out", out_path, "also export states and transition matrix as CSV");
    auto* chn_cap = chn->add_option("--cap", cap, "configuration cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed())
            return cmd_run(scenario_path, out_path, tol_overrides, cap,
                           run_cap->count() > 0, seed, run_seed->count() > 0);
        if (gen->parsed()) {
            Multigraph g = generate_family(family, kv_from_tokens(gen_params));
            write_or_print(format_graph(g), out_path);
            return 0;
        }
        if (mat->parsed()) {
            (void)mat_cap;
            ModelInstance m = instantiate(
                load_model(model_path),
                std::filesystem::path(model_path).parent_path().string());
            GibbsOracle oracle = enumerate_support(m, cap);
            LabeledMatrix out;
            if (which == "psi") out = influence_matrix(m, oracle);
            else if (which == "cor") out = correlation_matrix(m, oracle);
            else if (which == "sym") out = symmetrized_matrix(m, oracle);
            else if (which == "q") out = build_q(m, oracle).matrix;
            else if (which == "w") out = build_w(m, oracle).matrix;
            else throw ParamError("matrix: which must be psi|cor|sym|q|w");
            write_or_print(matrix_csv(out), out_path);
            return 0;
        }
        if (chn->parsed()) {
            (void)chn_cap;
            ModelInstance m = instantiate(
                load_model(model_path),
                std::filesystem::path(model_path).parent_path().string());
            GlauberChain chain = build_chain(m, cap);
            if (chain_what == "gap") {
                std::cout << "gap=" << format_double(spectral_gap(chain)) << '\n';
            } else if (chain_what == "mix") {
                std::cout << "mixing_time=" << mixing_time(chain, mix_eps) << '\n';
            } else {
                throw ParamError("chain: what must be gap|mix");
            }
            if (!out_path.empty()) write_or_print(chain_csv(chain), out_path);
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParamError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

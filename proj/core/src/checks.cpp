#include "silab/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "silab/dynamics.hpp"
#include "silab/errors.hpp"
#include "silab/families.hpp"
#include "silab/recursions.hpp"

namespace silab {

namespace {

double uniform_fugacity(const ModelInstance& m) {
    const auto& f = m.fugacity();
    for (double v : f)
        if (v != f.front())
            throw ParamError("check needs a uniform fugacity");
    return f.front();
}

std::string describe(const ModelInstance& m) {
    std::ostringstream out;
    out << to_string(m.kind()) << " n=" << m.graph().n_vertices()
        << " m=" << m.graph().n_edges();
    return out.str();
}

CheckRecord slack_record(std::string id, std::string inputs, std::string bound_desc,
                         double bound, double slack) {
    CheckRecord rec;
    rec.check_id = std::move(id);
    rec.inputs = std::move(inputs);
    rec.bound_desc = std::move(bound_desc);
    rec.bound_value = bound;
    rec.slack = slack;
    rec.verdict = slack >= 0.0 ? Verdict::Pass : Verdict::Fail;
    return rec;
}

// delta of the influence-decay bound for max degree Delta at fugacity lambda
double decay_delta(double lambda, int max_degree) {
    const double s = std::sqrt(1.0 + lambda * max_degree) + 1.0;
    return 1.0 - std::sqrt(1.0 - 2.0 / s);
}

std::vector<CheckRecord> check_tree_identity(const Scenario& sc,
                                             const ModelInstance& m) {
    const double tol = sc.tolerance("tree-identity", 1e-8);
    const double dev = tree_identity_check(m, sc.config_cap);
    auto rec = slack_record("tree-identity", describe(m),
                            "Q Psi_sym = I on trees", tol, tol - dev);
    rec.measured.emplace_back("max_deviation", dev);
    return {rec};
}

std::vector<CheckRecord> check_certificate(const Scenario& sc, const ModelInstance& m) {
    const double tol = sc.tolerance("certificate", 1e-7);
    Certificate cert = certificate(m, sc.config_cap);
    std::vector<CheckRecord> out;

    CheckRecord rec;
    rec.check_id = "certificate";
    rec.inputs = describe(m);
    rec.measured = {{"alpha", cert.alpha},
                    {"beta", cert.beta},
                    {"bound", cert.bound},
                    {"lambda_max", cert.lambda_max_direct}};
    rec.bound_desc = "lambda_max(Psi_sym) <= beta/alpha";
    rec.bound_value = cert.bound;
    rec.slack = cert.bound - cert.lambda_max_direct + tol;
    rec.verdict = cert.verdict;
    out.push_back(rec);

    if (m.kind() == ModelKind::MonomerDimer) {
        const double lambda = uniform_fugacity(m);
        const double alpha_floor = 1.0 / (2.0 * lambda + 1.0);
        auto arec = slack_record("certificate-alpha", describe(m),
                                 "lambda_min(Q) >= 1/(2 lambda + 1)", alpha_floor,
                                 cert.alpha - alpha_floor + 1e-9);
        arec.measured.emplace_back("alpha", cert.alpha);
        out.push_back(arec);
        if (m.graph().is_forest()) {
            auto brec = slack_record("certificate-beta-tree", describe(m),
                                     "beta = 1 on trees", 1.0,
                                     1e-9 - std::abs(cert.beta - 1.0));
            brec.measured.emplace_back("beta", cert.beta);
            out.push_back(brec);
            const double bound_22 = 2.0 * lambda + 1.0;
            auto trec = slack_record("certificate-lmax-tree", describe(m),
                                     "lambda_max(Psi) <= 2 lambda + 1", bound_22,
                                     bound_22 - cert.lambda_max_direct + 1e-7);
            trec.measured.emplace_back("lambda_max", cert.lambda_max_direct);
            out.push_back(trec);
        }
    }
    return out;
}

std::vector<CheckRecord> check_girth_bound(const Scenario& sc, const ModelInstance& m) {
    if (m.kind() != ModelKind::MonomerDimer)
        throw ParamError("girth-bound: edge model expected");
    const double tol = sc.tolerance("girth-bound", 1e-6);
    auto g = girth(m.graph());
    if (!g || *g % 2 == 0 || *g < 3)
        throw ParamError("girth-bound: needs a finite odd girth");
    const double lambda = uniform_fugacity(m);
    const int delta_deg = m.graph().max_degree();
    const double s = std::sqrt(1.0 + lambda * delta_deg) + 1.0;
    const double ratio = 1.0 - 2.0 / s;

    Certificate cert = certificate(m, sc.config_cap);
    std::vector<CheckRecord> out;

    const double tradeoff_bound =
        (2.0 * lambda + 1.0) * (4.0 * s * std::pow(ratio, (*g - 1) / 4) + 1.0);
    auto rec = slack_record("girth-bound", describe(m) + " g=" + std::to_string(*g),
                            "lambda_max <= (2l+1)(4(sqrt(1+lD)+1) r^floor((g-1)/4) + 1)",
                            tradeoff_bound, tradeoff_bound - cert.lambda_max_direct + tol);
    rec.measured.emplace_back("lambda_max", cert.lambda_max_direct);
    out.push_back(rec);

    const double dlt = decay_delta(lambda, delta_deg);
    const int half_girth = (*g - 1) / 2;
    const double q_bound = 4.0 * std::pow(1.0 - dlt, half_girth) / dlt + 1.0;
    auto qrec = slack_record("girth-bound-q", describe(m) + " g=" + std::to_string(*g),
                             "lambda_max(Q Psi_sym) <= 2C (1-d)^g / d + 1", q_bound,
                             q_bound - cert.beta + tol);
    qrec.measured.emplace_back("beta", cert.beta);
    out.push_back(qrec);
    return out;
}

std::vector<CheckRecord> check_decay(const Scenario& sc, const ModelInstance& m) {
    if (m.kind() != ModelKind::MonomerDimer)
        throw ParamError("decay: edge model expected");
    const double tol = sc.tolerance("decay", 1e-9);
    const double lambda = uniform_fugacity(m);
    const double dlt = decay_delta(lambda, m.graph().max_degree());

    double worst = std::numeric_limits<double>::infinity();
    int worst_k = 0;
    for (int e = 0; e < m.graph().n_edges(); ++e) {
        for (const auto& [k, s_k] : decay_profile(m, e, sc.config_cap)) {
            const double bound = 2.0 * std::pow(1.0 - dlt, k);
            if (bound - s_k < worst) {
                worst = bound - s_k;
                worst_k = k;
            }
        }
    }
    auto rec = slack_record("decay", describe(m), "sum_{dist=k} |Psi| <= 2 (1-d)^k",
                            2.0 * std::pow(1.0 - dlt, worst_k), worst + tol);
    rec.measured.emplace_back("worst_slack", worst);
    rec.measured.emplace_back("worst_k", worst_k);
    return {rec};
}

std::vector<CheckRecord> check_k_transform(const Scenario& sc, const ModelInstance& m) {
    const double tol = sc.tolerance("k-transform", 1e-8);
    const int k = sc.param_int("k", 2);
    KTransformReport rep = k_transform_cor_check(m, k, sc.config_cap);
    auto rec = slack_record("k-transform", describe(m) + " k=" + std::to_string(k),
                            "lambda_max(Psi_cor) invariant under k-transformation", tol,
                            tol - rep.deviation);
    rec.measured.emplace_back("lambda_cor_base", rep.lambda_cor_base);
    rec.measured.emplace_back("lambda_cor_transformed", rep.lambda_cor_transformed);
    rec.measured.emplace_back("deviation", rep.deviation);
    return {rec};
}

std::vector<CheckRecord> check_chain_gap(const Scenario& sc, const ModelInstance& m) {
    const double residual_tol = sc.tolerance("chain-gap", 1e-11);
    GlauberChain chain = build_chain(m, sc.config_cap);
    ChainResiduals res = chain_residuals(chain);
    const double gap = spectral_gap(chain);
    std::vector<CheckRecord> out;

    const double worst_res =
        std::max({res.row_sum, res.detailed_balance, res.stationarity});
    auto rrec = slack_record("chain-residuals", describe(m),
                             "stationarity and reversibility residuals", residual_tol,
                             residual_tol - worst_res);
    rrec.measured = {{"row_sum", res.row_sum},
                     {"detailed_balance", res.detailed_balance},
                     {"stationarity", res.stationarity}};
    out.push_back(rrec);

    auto grec = slack_record("chain-gap", describe(m), "spectral gap positive", 0.0,
                             gap > 0.0 ? gap : -1.0);
    grec.measured = {{"gap", gap},
                     {"gap_times_sites", gap * static_cast<double>(chain.sites.size())},
                     {"states", static_cast<double>(chain.n_states())}};
    out.push_back(grec);
    return out;
}

std::vector<CheckRecord> check_tensorization(const Scenario& sc, const ModelInstance& m) {
    const double tol = sc.tolerance("tensorization", 1e-9);
    const double c = tensorization_constant(m, sc.config_cap);
    GlauberChain chain = build_chain(m, sc.config_cap);
    const double gap = spectral_gap(chain);
    const double floor = 1.0 / (c * static_cast<double>(chain.sites.size()));
    auto rec = slack_record("tensorization", describe(m), "gap >= 1/(C |U|)", floor,
                            gap - floor + tol);
    rec.measured = {{"tensorization_constant", c}, {"gap", gap}, {"floor", floor}};
    std::vector<CheckRecord> out{rec};

    if (m.kind() == ModelKind::MonomerDimer) {
        bool small = true;
        for (double f : m.fugacity()) small = small && f <= 0.1;
        auto deg = m.graph().degrees();
        int root = -1;
        for (int v = 0; v < m.graph().n_vertices(); ++v)
            if (deg[v] == 1) root = v;
        if (small && m.graph().is_tree() && root >= 0) {
            RootedTree tree(m.graph(), root);
            auto trep = matching_tensorization_check(tree, m.fugacity(),
                                                     sc.param_int("trials", 1000),
                                                     sc.seed, sc.config_cap);
            auto mrec = slack_record("tensorization-matching", describe(m),
                                     "Var f <= sum_e F_e mu[Var_e f]", 0.0,
                                     trep.worst_slack + tol);
            mrec.measured = {{"worst_slack", trep.worst_slack},
                             {"trials", static_cast<double>(trep.trials)}};
            out.push_back(mrec);
        }
    }
    return out;
}

std::vector<CheckRecord> check_beta_sums(const Scenario& sc, const ModelInstance& m) {
    if (m.kind() != ModelKind::Hardcore)
        throw ParamError("beta-sums: vertex model expected");
    if (!m.graph().is_tree()) throw NotATree("beta-sums: tree expected");
    const double tol = sc.tolerance("beta-sums", 1e-10);
    const double delta = sc.param_num("delta", 0.09);
    const double lambda = uniform_fugacity(m);
    auto state = hardcore_recursion(RootedTree(m.graph(), sc.param_int("root", 0)), lambda);
    BetaSumsReport rep = beta_sums_check(state, delta);
    std::ostringstream inputs;
    inputs << describe(m) << " delta=" << delta;
    auto rec = slack_record("beta-sums", inputs.str(),
                            "sum of child beta^2 <= 1 - delta/3", rep.bound,
                            rep.bound - rep.max_sum + tol);
    rec.measured = {{"max_sum", rep.max_sum},
                    {"argmax_vertex", static_cast<double>(rep.argmax_vertex)}};
    return {rec};
}

std::vector<CheckRecord> check_cycle_limits(const Scenario& sc) {
    const double tol = sc.tolerance("cycle-limits", 1e-6);
    const double lambda = sc.param_num("lambda", 1.0);
    const int n = sc.param_int("n", 80);
    const int ell_max = sc.param_int("ell-max", 4);
    std::vector<CheckRecord> out;
    for (int ell = 1; ell <= ell_max; ++ell) {
        CycleLimitReport rep = cycle_influence_limit_check(ell, lambda, n);
        std::ostringstream inputs;
        inputs << "lambda=" << lambda << " n=" << n << " ell=" << ell;
        auto rec = slack_record("cycle-limits", inputs.str(),
                                "Psi(e1,e_ell) -> (-R)^(ell-1)", tol,
                                tol - rep.deviation);
        rec.measured = {{"psi", rep.psi_value}, {"limit", rep.limit},
                        {"deviation", rep.deviation}};
        out.push_back(rec);
    }
    // minor lower bound with R^(ell-1) <= 1/2
    const double r = matching_ratio_limit(lambda).r;
    int ell = 1;
    while (std::pow(r, ell - 1) > 0.5) ++ell;
    CycleMinorBound mb = long_cycle_lower_bound(lambda, n, ell);
    std::ostringstream inputs;
    inputs << "lambda=" << lambda << " n=" << n << " ell=" << ell;
    auto rec = slack_record("cycle-minor", inputs.str(),
                            "lambda_max(minor) >= sqrt(lambda)/3", mb.target,
                            mb.lambda_max_minor - mb.target);
    rec.measured = {{"lambda_max_minor", mb.lambda_max_minor}};
    out.push_back(rec);
    return out;
}

std::vector<CheckRecord> check_parallel_cycle(const Scenario& sc) {
    const int n = sc.param_int("n", 40);
    std::istringstream deltas(sc.param("deltas", "4 8 16"));
    std::vector<CheckRecord> out;
    double prev = 0.0;
    bool monotone = true;
    int d;
    while (deltas >> d) {
        ParallelCycleReport rep = parallel_cycle_lower_bound(d, n);
        std::ostringstream inputs;
        inputs << "Delta=" << d << " n=" << n;
        auto rec = slack_record("parallel-cycle", inputs.str(),
                                "lambda_max >= sqrt(Delta)/10", rep.target,
                                rep.lambda_max - rep.target);
        rec.measured = {{"lambda_max", rep.lambda_max},
                        {"lambda_max_base", rep.lambda_max_base},
                        {"cor_deviation", rep.cor_deviation}};
        if (rep.cor_deviation > sc.tolerance("parallel-cycle", 1e-8))
            rec.verdict = Verdict::Fail;
        out.push_back(rec);
        monotone = monotone && rep.lambda_max > prev;
        prev = rep.lambda_max;
    }
    auto mon = slack_record("parallel-cycle-monotone", "sweep",
                            "lambda_max grows with Delta", 0.0, monotone ? 1.0 : -1.0);
    out.push_back(mon);
    return out;
}

std::vector<CheckRecord> check_rayleigh_scan(const Scenario& sc) {
    const double lambda = sc.param_num("lambda", 30.0);
    const int arity = sc.param_int("arity", 3);
    const int h_min = sc.param_int("height-min", 2);
    const int h_max = sc.param_int("height-max", 12);
    const double tol = sc.tolerance("rayleigh-scan", 1e-10);

    std::vector<CheckRecord> out;
    double prev = 0.0, worst_residual = 0.0, min_increment =
        std::numeric_limits<double>::infinity();
    for (int h = h_min; h <= h_max; ++h) {
        RayleighReport rep =
            rayleigh_lower_bound(RootedTree(complete_ary_tree(arity, h), 0), lambda);
        worst_residual = std::max(worst_residual, rep.quad_form_residual);
        if (h > h_min) min_increment = std::min(min_increment, rep.lower_bound - prev);
        std::ostringstream inputs;
        inputs << "lambda=" << lambda << " arity=" << arity << " H=" << h;
        CheckRecord rec;
        rec.check_id = "rayleigh-scan";
        rec.inputs = inputs.str();
        rec.bound_desc = "lower bound on lambda_max(Psi_sym)";
        rec.bound_value = rep.lower_bound;
        rec.slack = 0.0;
        rec.verdict = Verdict::Pass;
        rec.measured = {{"lower_bound", rep.lower_bound},
                        {"quad_form_residual", rep.quad_form_residual}};
        out.push_back(rec);
        prev = rep.lower_bound;
    }
    auto irec = slack_record("rayleigh-identity", "scan", "x^T Q x = x_r^2", tol,
                             tol - worst_residual);
    irec.measured = {{"worst_residual", worst_residual}};
    out.push_back(irec);
    auto grec = slack_record("rayleigh-growth", "scan",
                             "lower bound strictly increases with height", 0.0,
                             min_increment);
    grec.measured = {{"min_increment", min_increment}};
    out.push_back(grec);
    return out;
}

std::vector<CheckRecord> check_scalar_scan(const Scenario& sc) {
    const double delta = sc.param_num("delta", 0.09);
    ScalarScanReport rep = hardcore_scalar_scan(delta, sc.param_int("d-max", 200),
                                                sc.param_int("grid", 10000));
    std::ostringstream inputs;
    inputs << "delta=" << delta;
    auto rec = slack_record("scalar-scan", inputs.str(),
                            "F(d,x) <= 1 - delta/3 and G(delta/3,d) >= (1-delta)e^2",
                            rep.f_bound,
                            rep.violations == 0 ? std::min(rep.f_bound - rep.max_f,
                                                           rep.min_g_margin)
                                                : -1.0);
    rec.measured = {{"max_f", rep.max_f},
                    {"max_f_d", static_cast<double>(rep.max_f_d)},
                    {"min_g_margin", rep.min_g_margin},
                    {"violations", static_cast<double>(rep.violations)}};
    return {rec};
}

}  // namespace

const std::vector<std::string>& check_registry() {
    static const std::vector<std::string> ids = {
        "tree-identity", "certificate", "girth-bound", "decay",
        "k-transform",   "chain-gap",   "tensorization", "beta-sums",
        "cycle-limits",  "parallel-cycle", "rayleigh-scan", "scalar-scan"};
    return ids;
}

std::vector<CheckRecord> run_check(const std::string& check_id, const Scenario& sc,
                                   const std::string& base_dir) {
    auto model = [&]() { return instantiate(sc.model, base_dir); };
    if (check_id == "tree-identity") return check_tree_identity(sc, model());
    if (check_id == "certificate") return check_certificate(sc, model());
    if (check_id == "girth-bound") return check_girth_bound(sc, model());
    if (check_id == "decay") return check_decay(sc, model());
    if (check_id == "k-transform") return check_k_transform(sc, model());
    if (check_id == "chain-gap") return check_chain_gap(sc, model());
    if (check_id == "tensorization") return check_tensorization(sc, model());
    if (check_id == "beta-sums") return check_beta_sums(sc, model());
    if (check_id == "cycle-limits") return check_cycle_limits(sc);
    if (check_id == "parallel-cycle") return check_parallel_cycle(sc);
    if (check_id == "rayleigh-scan") return check_rayleigh_scan(sc);
    if (check_id == "scalar-scan") return check_scalar_scan(sc);
    throw ParamError("unknown check id: " + check_id);
}

Report run_scenario(const Scenario& sc, const std::string& base_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.scenario_name = sc.name;
    rep.seed = sc.seed;
    for (const auto& id : sc.checks) {
        try {
            auto records = run_check(id, sc, base_dir);
            rep.records.insert(rep.records.end(), records.begin(), records.end());
        } catch (const Error& e) {
            throw Error("check " + id + " (scenario " + sc.name + "): " + e.what());
        }
    }
    rep.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace silab

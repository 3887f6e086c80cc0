#include "silab/approx_inverse.hpp"

#include <algorithm>
#include <cmath>

#include "silab/errors.hpp"
#include "silab/rng.hpp"
#include "silab/tolerances.hpp"

namespace silab {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        default: return "void";
    }
}

namespace {

Matrix principal_minor(const Matrix& m, const std::vector<int>& rows) {
    const int k = static_cast<int>(rows.size());
    Matrix out(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) out(a, b) = m(rows[a], rows[b]);
    return out;
}

void check_block_det(double det, const Matrix& block, int block_id,
                     const Tolerances& tols) {
    const double scale = std::max(1.0, max_abs(block));
    double cap = 1.0;
    for (int i = 0; i < block.rows(); ++i) cap *= scale;
    if (std::abs(det) < tols.singular_block * cap)
        throw SingularBlock("approximate inverse: singular local block", block_id);
}

// Sum of zero-padded block inverses minus the identity; shared by the edge
// and W variants.
ApproxInverse assemble_edge_variant(const ModelInstance& m, const GibbsOracle& oracle,
                                    const LabeledMatrix& base,
                                    ApproxInverseVariant variant) {
    const Multigraph& g = m.graph();
    const int k = static_cast<int>(base.index.size());
    Matrix q(k, k);
    for (int a = 0; a < k; ++a) q(a, a) = -1.0;

    ApproxInverse out{{base.index, Matrix()}, variant, {}};
    auto inc = g.incidence();
    const bool fast_path =
        variant == ApproxInverseVariant::Edge && m.kind() == ModelKind::MonomerDimer;

    for (int v = 0; v < g.n_vertices(); ++v) {
        std::vector<int> in_block;  // positions in the free index
        for (int e : inc[v]) {
            const int pos = base.position_of(e);
            if (pos >= 0) in_block.push_back(pos);
        }
        if (in_block.empty()) continue;
        Matrix block = principal_minor(base.entries, in_block);
        Matrix inv;
        if (fast_path) {
            // Psi_sym at a vertex is diag{1/(1-mu_e)} - sqrt(r) sqrt(r)^T,
            // so the rank-one update formula applies with a diagonal core.
            const int d = static_cast<int>(in_block.size());
            Matrix core_inv(d, d);
            std::vector<double> root_ratio(d);
            double det = 1.0, mu_sum = 0.0;
            for (int a = 0; a < d; ++a) {
                const double mu = oracle.marginal(base.index[in_block[a]]);
                core_inv(a, a) = 1.0 - mu;
                root_ratio[a] = std::sqrt(mu / (1.0 - mu));
                det /= 1.0 - mu;
                mu_sum += mu;
            }
            det *= 1.0 - mu_sum;  // determinant lemma with x = -sqrt(r), y = sqrt(r)
            check_block_det(det, block, v, default_tols());
            std::vector<double> neg = root_ratio;
            for (double& t : neg) t = -t;
            inv = sherman_morrison(core_inv, neg, root_ratio);
        } else {
            check_block_det(lu_det(block), block, v, default_tols());
            try {
                inv = invert(block);
            } catch (const SingularMatrix&) {
                throw SingularBlock("approximate inverse: singular local block", v);
            }
        }
        out.block_inverses.emplace(v, inv);
        for (size_t a = 0; a < in_block.size(); ++a)
            for (size_t b = 0; b < in_block.size(); ++b)
                q(in_block[a], in_block[b]) +=
                    inv(static_cast<int>(a), static_cast<int>(b));
    }
    out.matrix.entries = std::move(q);
    return out;
}

}  // namespace

ApproxInverse build_q_edge(const ModelInstance& m, const GibbsOracle& oracle) {
    if (m.kind() != ModelKind::MonomerDimer)
        throw ParamError("build_q_edge: edge model expected");
    LabeledMatrix sym = symmetrized_matrix(m, oracle);
    return assemble_edge_variant(m, oracle, sym, ApproxInverseVariant::Edge);
}

ApproxInverse build_q_edge(const ModelInstance& m, long config_cap) {
    return build_q_edge(m, enumerate_support(m, config_cap));
}

ApproxInverse build_w(const ModelInstance& m, const GibbsOracle& oracle) {
    if (m.kind() != ModelKind::MonomerDimer)
        throw ParamError("build_w: edge model expected");
    LabeledMatrix psi = influence_matrix(m, oracle);
    return assemble_edge_variant(m, oracle, psi, ApproxInverseVariant::WEdge);
}

ApproxInverse build_w(const ModelInstance& m, long config_cap) {
    return build_w(m, enumerate_support(m, config_cap));
}

ApproxInverse build_q_vertex(const ModelInstance& m, const GibbsOracle& oracle) {
    if (m.kind() != ModelKind::Hardcore)
        throw ParamError("build_q_vertex: vertex model expected");
    const Multigraph& g = m.graph();
    LabeledMatrix sym = symmetrized_matrix(m, oracle);
    const int k = static_cast<int>(sym.index.size());

    Matrix q(k, k);
    std::vector<int> block_count(k, 0);
    ApproxInverse out{{sym.index, Matrix()}, ApproxInverseVariant::Vertex, {}};

    for (int e = 0; e < g.n_edges(); ++e) {
        const int a = sym.position_of(g.edge(e).first);
        const int b = sym.position_of(g.edge(e).second);
        if (a < 0 || b < 0) continue;
        const double beta = sym.entries(a, b);
        if (std::abs(beta) >= 1.0 - 1e-12)
            throw SingularBlock("build_q_vertex: |beta| at 1", e);
        const double f = 1.0 / (1.0 - beta * beta);
        q(a, a) += f;
        q(b, b) += f;
        q(a, b) += -beta * f;
        q(b, a) += -beta * f;
        ++block_count[a];
        ++block_count[b];
        Matrix inv(2, 2);
        inv(0, 0) = inv(1, 1) = f;
        inv(0, 1) = inv(1, 0) = -beta * f;
        out.block_inverses.emplace(e, inv);
    }
    for (int a = 0; a < k; ++a) q(a, a) -= block_count[a] - 1;
    out.matrix.entries = std::move(q);
    return out;
}

ApproxInverse build_q_vertex(const ModelInstance& m, long config_cap) {
    return build_q_vertex(m, enumerate_support(m, config_cap));
}

ApproxInverse build_q(const ModelInstance& m, const GibbsOracle& oracle) {
    return m.kind() == ModelKind::MonomerDimer ? build_q_edge(m, oracle)
                                               : build_q_vertex(m, oracle);
}

double tree_identity_check(const ModelInstance& m, long config_cap) {
    if (!m.graph().is_forest()) throw NotATree("tree_identity_check: not a tree");
    GibbsOracle oracle = enumerate_support(m, config_cap);
    LabeledMatrix sym = symmetrized_matrix(m, oracle);
    ApproxInverse q = build_q(m, oracle);
    Matrix prod = q.matrix.entries * sym.entries;
    const int k = prod.rows();
    for (int i = 0; i < k; ++i) prod(i, i) -= 1.0;
    return max_abs(prod);
}

Certificate certificate(const ModelInstance& m, long config_cap) {
    GibbsOracle oracle = enumerate_support(m, config_cap);
    LabeledMatrix sym = symmetrized_matrix(m, oracle);
    ApproxInverse q = build_q(m, oracle);

    Certificate cert;
    cert.lambda_max_direct = eig_sym(sym.entries).lambda_max();
    cert.alpha = eig_sym(q.matrix.entries).lambda_min();
    if (cert.alpha > 0.0) {
        Matrix root = spd_sqrt(q.matrix.entries);
        Matrix prod = root * sym.entries * root;
        for (int i = 0; i < prod.rows(); ++i)
            for (int j = i + 1; j < prod.cols(); ++j) {
                const double avg = 0.5 * (prod(i, j) + prod(j, i));
                prod(i, j) = avg;
                prod(j, i) = avg;
            }
        cert.beta = eig_sym(prod).lambda_max();
        cert.bound = cert.beta / cert.alpha;
        cert.verdict = cert.bound >= cert.lambda_max_direct - default_tols().verification
                           ? Verdict::Pass
                           : Verdict::Fail;
    } else {
        cert.beta = power_iteration_lambda_max(q.matrix.entries * sym.entries);
        cert.bound = 0.0;
        cert.verdict = Verdict::Void;
    }
    return cert;
}

LocalSpectralReport local_spectral_check(const ModelInstance& m, double beta_target,
                                         long config_cap) {
    if (m.kind() != ModelKind::MonomerDimer)
        throw ParamError("local_spectral_check: edge model expected");
    GibbsOracle oracle = enumerate_support(m, config_cap);
    LabeledMatrix sym = symmetrized_matrix(m, oracle);
    auto inc = m.graph().incidence();

    LocalSpectralReport rep;
    for (int v = 0; v < m.graph().n_vertices(); ++v) {
        std::vector<int> in_block;
        for (int e : inc[v])
            if (sym.position_of(e) >= 0) in_block.push_back(sym.position_of(e));
        if (in_block.empty()) continue;
        Matrix block(static_cast<int>(in_block.size()), static_cast<int>(in_block.size()));
        for (size_t a = 0; a < in_block.size(); ++a)
            for (size_t b = 0; b < in_block.size(); ++b)
                block(static_cast<int>(a), static_cast<int>(b)) =
                    sym.entries(in_block[a], in_block[b]);
        const double lm = eig_sym(block).lambda_max();
        rep.max_local_lambda = std::max(rep.max_local_lambda, lm);
        if (lm > beta_target + default_tols().verification)
            rep.violating_vertices.push_back(v);
    }
    rep.alpha_bound = 2.0 / beta_target - 1.0;
    rep.lambda_min_q = eig_sym(build_q_edge(m, oracle).matrix.entries).lambda_min();
    rep.ok = rep.violating_vertices.empty() &&
             rep.lambda_min_q >= rep.alpha_bound - default_tols().verification;
    return rep;
}

QuadraticDecompositionReport quadratic_decomposition_check(const ModelInstance& m,
                                                           int root, double eps,
                                                           int trials, uint64_t seed,
                                                           long config_cap) {
    if (m.kind() != ModelKind::Hardcore)
        throw ParamError("quadratic_decomposition_check: hardcore model expected");
    if (!(eps > 0.0 && eps < 1.0))
        throw ParamError("quadratic_decomposition_check: eps must lie in (0,1)");
    RootedTree tree(m.graph(), root);
    GibbsOracle oracle = enumerate_support(m, config_cap);
    LabeledMatrix sym = symmetrized_matrix(m, oracle);
    const int n = m.graph().n_vertices();
    if (static_cast<int>(sym.index.size()) != n)
        throw ParamError("quadratic_decomposition_check: all vertices must be free");
    ApproxInverse q = build_q_vertex(m, oracle);

    std::vector<double> beta(n, 0.0);  // beta_u = Psi_sym(u, p_u)
    for (int u = 0; u < n; ++u) {
        if (tree.parent(u) < 0) continue;
        beta[u] = sym.entries(sym.position_of(u), sym.position_of(tree.parent(u)));
        if (!(std::abs(beta[u]) < 1.0))
            throw SingularBlock("quadratic_decomposition_check: |beta| at 1", u);
    }

    // Hypotheses on the child beta sums.
    std::vector<int> violators;
    for (int u = 0; u < n; ++u) {
        double s = 0.0;
        for (int c : tree.children(u)) s += beta[c] * beta[c];
        const double cap = u == root ? 1.0 / (2.0 * eps) : 1.0 - eps;
        if (s > cap + 1e-12) violators.push_back(u);
    }
    if (!violators.empty())
        throw HypothesisFailed("quadratic_decomposition_check: beta-sum hypothesis fails",
                               violators);

    const double zeta = eps / 2.0;
    QuadraticDecompositionReport rep;
    Rng rng(seed);
    for (int t = 0; t < std::max(trials, 1); ++t) {
        std::vector<double> x(n);
        if (t == 0) {
            // x = 0 belongs to the checked set
            std::fill(x.begin(), x.end(), 0.0);
        } else {
            for (double& v : x) v = rng.symmetric_unit();
        }
        std::vector<double> xi(n);
        for (int u = 0; u < n; ++u) xi[sym.position_of(u)] = x[u];
        const double lhs = dot(xi, q.matrix.entries * xi);

        double rhs = 0.0;
        for (int u = 0; u < n; ++u) {
            if (u != root) {
                const double b = beta[u];
                const double s = std::sqrt(1.0 - zeta * (1.0 - b * b));
                const double term = b / s * x[tree.parent(u)] - s * x[u];
                rhs += term * term / (1.0 - b * b);
            }
            double sigma = u == root ? 1.0 : zeta;
            for (int c : tree.children(u)) {
                const double b2 = beta[c] * beta[c];
                sigma -= zeta * b2 / (1.0 - zeta * (1.0 - b2));
            }
            rhs += sigma * x[u] * x[u];
        }
        rep.max_deviation = std::max(rep.max_deviation, std::abs(lhs - rhs));
    }
    rep.lambda_min_q = eig_sym(q.matrix.entries).lambda_min();
    rep.alpha_bound = eps * eps / 4.0;
    rep.conclusion_ok = rep.lambda_min_q >= rep.alpha_bound - default_tols().verification;
    return rep;
}

double hardcore_tree_quadratic_form(const HardcoreRecursionState& state,
                                    std::span<const double> x) {
    const RootedTree& t = state.tree;
    const int n = t.n_vertices();
    double quad = 0.0;
    for (int u = 0; u < n; ++u) {
        double diag = 1.0 - static_cast<double>(t.children(u).size()) -
                      (t.parent(u) >= 0 ? 1.0 : 0.0);
        for (int c : t.children(u)) diag += 1.0 / (1.0 - state.beta[c] * state.beta[c]);
        if (t.parent(u) >= 0) diag += 1.0 / (1.0 - state.beta[u] * state.beta[u]);
        quad += diag * x[u] * x[u];
        if (t.parent(u) >= 0) {
            const double b = state.beta[u];
            quad += 2.0 * (-b / (1.0 - b * b)) * x[u] * x[t.parent(u)];
        }
    }
    return quad;
}

RayleighReport rayleigh_lower_bound(const HardcoreRecursionState& state) {
    const RootedTree& t = state.tree;
    const int n = t.n_vertices();
    std::vector<double> x(n, 0.0);
    x[t.root()] = 1.0;
    double total = 1.0;
    for (int u : t.bfs_order()) {
        if (u == t.root()) continue;
        x[u] = state.beta[u] * x[t.parent(u)];
        total += x[u] * x[u];
    }
    RayleighReport rep;
    rep.lower_bound = total;  // x_r = 1, so the Rayleigh ratio is the plain sum
    rep.quad_form_residual = std::abs(hardcore_tree_quadratic_form(state, x) - 1.0);
    return rep;
}

RayleighReport rayleigh_lower_bound(const RootedTree& tree, double lambda) {
    return rayleigh_lower_bound(hardcore_recursion(tree, lambda));
}

double product_distance_inverse_check(const Matrix& p,
                                      const std::vector<std::vector<int>>& blocks) {
    const int n = p.rows();
    Matrix assembled(n, n);
    for (int i = 0; i < n; ++i) assembled(i, i) = 1.0;
    for (size_t bi = 0; bi < blocks.size(); ++bi) {
        const auto& idx = blocks[bi];
        Matrix block(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
        for (size_t a = 0; a < idx.size(); ++a)
            for (size_t b = 0; b < idx.size(); ++b)
                block(static_cast<int>(a), static_cast<int>(b)) = p(idx[a], idx[b]);
        Matrix inv;
        try {
            inv = invert(block);
        } catch (const SingularMatrix&) {
            throw SingularBlock("product_distance_inverse_check: singular block",
                                static_cast<int>(bi));
        }
        for (size_t a = 0; a < idx.size(); ++a) {
            for (size_t b = 0; b < idx.size(); ++b) {
                const double v = inv(static_cast<int>(a), static_cast<int>(b));
                if (idx[a] == idx[b])
                    assembled(idx[a], idx[b]) += v - 1.0;
                else
                    assembled(idx[a], idx[b]) = v;
            }
        }
    }
    return max_abs(assembled - invert(p));
}

}  // namespace silab

#include "silab/influence.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

#include "silab/errors.hpp"
#include "silab/path_tree.hpp"

namespace silab {

int LabeledMatrix::position_of(int element) const {
    auto it = std::lower_bound(index.begin(), index.end(), element);
    if (it == index.end() || *it != element) return -1;
    return static_cast<int>(it - index.begin());
}

namespace {

struct Moments {
    std::vector<int> idx;      // free elements
    std::vector<double> p;     // marginals, aligned with idx
    Matrix joint;              // pairwise occupied probabilities on idx
};

Moments moments_from(const GibbsOracle& oracle) {
    Moments mo;
    mo.idx = oracle.free_elements();
    const int k = static_cast<int>(mo.idx.size());
    mo.p.resize(k);
    for (int a = 0; a < k; ++a) mo.p[a] = oracle.marginal(mo.idx[a]);
    Matrix w = oracle.pairwise_occupied_weights();
    mo.joint = Matrix(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) mo.joint(a, b) = w(mo.idx[a], mo.idx[b]) / oracle.z();
    return mo;
}

}  // namespace

LabeledMatrix influence_matrix(const ModelInstance& m, const GibbsOracle& oracle) {
    (void)m;
    Moments mo = moments_from(oracle);
    const int k = static_cast<int>(mo.idx.size());
    Matrix psi(k, k);
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            if (a == b) {
                psi(a, b) = 1.0;
                continue;
            }
            const double occ = mo.joint(a, b) / mo.p[a];
            const double un = (mo.p[b] - mo.joint(a, b)) / (1.0 - mo.p[a]);
            psi(a, b) = occ - un;
        }
    }
    return {std::move(mo.idx), std::move(psi)};
}

LabeledMatrix influence_matrix(const ModelInstance& m, long config_cap) {
    return influence_matrix(m, enumerate_support(m, config_cap));
}

LabeledMatrix correlation_matrix(const ModelInstance& m, const GibbsOracle& oracle) {
    (void)m;
    Moments mo = moments_from(oracle);
    const int k = static_cast<int>(mo.idx.size());
    Matrix cor(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            cor(a, b) = mo.joint(a, b) / mo.p[a] - mo.p[b];
    return {std::move(mo.idx), std::move(cor)};
}

LabeledMatrix correlation_matrix(const ModelInstance& m, long config_cap) {
    return correlation_matrix(m, enumerate_support(m, config_cap));
}

LabeledMatrix symmetrized_matrix(const ModelInstance& m, const GibbsOracle& oracle) {
    (void)m;
    Moments mo = moments_from(oracle);
    const int k = static_cast<int>(mo.idx.size());
    std::vector<double> sd(k);
    for (int a = 0; a < k; ++a) {
        const double var = mo.p[a] * (1.0 - mo.p[a]);
        if (!(var > 0.0))
            throw DegenerateElement("symmetrized_matrix: vanishing variance");
        sd[a] = std::sqrt(var);
    }
    Matrix sym(k, k);
    for (int a = 0; a < k; ++a) {
        sym(a, a) = 1.0;
        for (int b = a + 1; b < k; ++b) {
            const double cov = mo.joint(a, b) - mo.p[a] * mo.p[b];
            const double v = cov / (sd[a] * sd[b]);
            sym(a, b) = v;
            sym(b, a) = v;
        }
    }
    return {std::move(mo.idx), std::move(sym)};
}

LabeledMatrix symmetrized_matrix(const ModelInstance& m, long config_cap) {
    return symmetrized_matrix(m, enumerate_support(m, config_cap));
}

double total_influence(const ModelInstance& m, long config_cap) {
    LabeledMatrix psi = influence_matrix(m, config_cap);
    double best = 0.0;
    for (int i = 0; i < psi.entries.rows(); ++i) {
        double row = 0.0;
        for (int j = 0; j < psi.entries.cols(); ++j) row += std::abs(psi.entries(i, j));
        best = std::max(best, row);
    }
    return best;
}

double lambda_max_sym(const ModelInstance& m, long config_cap) {
    return eig_sym(symmetrized_matrix(m, config_cap).entries).lambda_max();
}

double cor_lambda_max(const ModelInstance& m, const GibbsOracle& oracle) {
    LabeledMatrix sym = symmetrized_matrix(m, oracle);
    const int k = static_cast<int>(sym.index.size());
    std::vector<double> rootbar(k);
    for (int a = 0; a < k; ++a)
        rootbar[a] = std::sqrt(1.0 - oracle.marginal(sym.index[a]));
    Matrix msym(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            msym(a, b) = rootbar[a] * sym.entries(a, b) * rootbar[b];
    return eig_sym(msym).lambda_max();
}

double cor_lambda_max(const ModelInstance& m, long config_cap) {
    return cor_lambda_max(m, enumerate_support(m, config_cap));
}

std::vector<std::pair<int, double>> decay_profile(const ModelInstance& m, int e,
                                                  long config_cap) {
    if (!m.graph().is_forest()) throw NotATree("decay_profile: instance not on a tree");
    LabeledMatrix psi = influence_matrix(m, config_cap);
    const int row = psi.position_of(e);
    if (row < 0) throw DegenerateElement("decay_profile: element not free");
    auto dist = m.kind() == ModelKind::MonomerDimer
                    ? line_distances_from(m.graph(), e)
                    : vertex_distances_from(m.graph(), e);
    std::map<int, double> acc;
    for (size_t b = 0; b < psi.index.size(); ++b) {
        auto d = dist[psi.index[b]];
        if (!d) continue;  // different component: zero influence, no profile term
        acc[*d] += std::abs(psi.entries(row, static_cast<int>(b)));
    }
    return {acc.begin(), acc.end()};
}

namespace {

// Structurally deterministic elements under a pinning (exact, no floats):
// occupied pins consume endpoints / neighbors.
std::vector<char> blocked_by_pinning(const ModelInstance& m) {
    const Multigraph& g = m.graph();
    std::vector<char> blocked(m.n_elements(), 0);
    if (m.kind() == ModelKind::MonomerDimer) {
        std::vector<char> consumed(g.n_vertices(), 0);
        for (int e = 0; e < g.n_edges(); ++e)
            if (m.is_pinned_occupied(e))
                consumed[g.edge(e).first] = consumed[g.edge(e).second] = 1;
        for (int e = 0; e < g.n_edges(); ++e)
            if (!m.is_pinned(e) &&
                (consumed[g.edge(e).first] || consumed[g.edge(e).second]))
                blocked[e] = 1;
    } else {
        auto adj = g.adjacency();
        for (int v = 0; v < g.n_vertices(); ++v) {
            if (m.is_pinned(v)) continue;
            for (int w : adj[v])
                if (m.is_pinned_occupied(w)) blocked[v] = 1;
        }
    }
    return blocked;
}

double z_ratio_with(const ModelInstance& m, const Pinning& extra) {
    Pinning p = m.pinning();
    p.occupied.insert(p.occupied.end(), extra.occupied.begin(), extra.occupied.end());
    p.unoccupied.insert(p.unoccupied.end(), extra.unoccupied.begin(),
                        extra.unoccupied.end());
    ModelInstance cond(m.kind(), m.graph(), m.fugacity(), p);
    return forest_partition_function(cond);
}

}  // namespace

LabeledMatrix tree_influence_fast(const ModelInstance& m) {
    const Multigraph& g = m.graph();
    if (!g.is_forest()) throw NotAForest("tree_influence_fast: not a forest");

    std::vector<char> blocked = blocked_by_pinning(m);
    std::vector<int> index;
    for (int i = 0; i < m.n_elements(); ++i)
        if (!m.is_pinned(i) && !blocked[i]) index.push_back(i);
    const int k = static_cast<int>(index.size());
    std::vector<int> pos(m.n_elements(), -1);
    for (int a = 0; a < k; ++a) pos[index[a]] = a;

    // Adjacency between free elements: shared vertex (edge model) or an edge
    // of the underlying graph (vertex model).
    std::vector<std::vector<int>> adj(k);
    if (m.kind() == ModelKind::MonomerDimer) {
        auto inc = g.incidence();
        for (int v = 0; v < g.n_vertices(); ++v) {
            for (int e : inc[v]) {
                if (pos[e] < 0) continue;
                for (int f : inc[v])
                    if (f != e && pos[f] >= 0) adj[pos[e]].push_back(pos[f]);
            }
        }
    } else {
        for (const auto& [u, v] : g.edges())
            if (pos[u] >= 0 && pos[v] >= 0) {
                adj[pos[u]].push_back(pos[v]);
                adj[pos[v]].push_back(pos[u]);
            }
    }

    // Base case: influence between adjacent elements via conditioned
    // partition functions (occupying a neighbor is impossible, so
    // Psi(a,b) = -Pr[b | a-bar]).
    Matrix psi(k, k);
    for (int a = 0; a < k; ++a) psi(a, a) = 1.0;
    for (int a = 0; a < k; ++a) {
        for (int b : adj[a]) {
            if (psi(a, b) != 0.0) continue;
            const int ea = index[a], eb = index[b];
            const double z_un = z_ratio_with(m, {{}, {ea}});
            const double z_un_occ = z_ratio_with(m, {{eb}, {ea}});
            psi(a, b) = -(z_un_occ / z_un);
        }
    }

    // Product rule along the unique path: BFS in the element adjacency,
    // multiplying by the predecessor step.
    for (int a = 0; a < k; ++a) {
        std::vector<int> dist(k, -1), pred(k, -1);
        std::deque<int> q{a};
        dist[a] = 0;
        while (!q.empty()) {
            int cur = q.front();
            q.pop_front();
            for (int nxt : adj[cur]) {
                if (dist[nxt] >= 0) continue;
                dist[nxt] = dist[cur] + 1;
                pred[nxt] = cur;
                if (dist[nxt] >= 2) psi(a, nxt) = psi(a, pred[nxt]) * psi(pred[nxt], nxt);
                q.push_back(nxt);
            }
        }
    }
    return {std::move(index), std::move(psi)};
}

PathTreeInfluenceReport path_tree_influence_check(const Multigraph& g, int u,
                                                  double lambda, long node_cap,
                                                  long config_cap) {
    ModelInstance base(ModelKind::MonomerDimer, g, lambda);
    LabeledMatrix psi = influence_matrix(base, config_cap);

    PathTree pt = path_tree(g, u, node_cap);
    ModelInstance lifted(ModelKind::MonomerDimer, pt.tree.graph(), lambda);
    LabeledMatrix psi_t = tree_influence_fast(lifted);

    // Root edges of the path-tree, keyed by their original edge.
    auto inc = g.incidence();
    std::map<int, int> root_edge;  // original edge id -> path-tree edge id
    for (int te = 0; te < pt.tree.graph().n_edges(); ++te) {
        auto [a, b] = pt.tree.graph().edge(te);
        if (a == 0 || b == 0) root_edge[pt.chi[te]] = te;
    }

    PathTreeInfluenceReport rep;
    rep.path_tree_vertices = pt.tree.graph().n_vertices();
    rep.root_edges = static_cast<int>(root_edge.size());
    for (int e : inc[u]) {
        const int row = psi.position_of(e);
        const int row_t = psi_t.position_of(root_edge.at(e));
        for (int f = 0; f < g.n_edges(); ++f) {
            double sum = 0.0;
            for (int te = 0; te < pt.tree.graph().n_edges(); ++te) {
                if (pt.chi[te] != f) continue;
                sum += psi_t.entries(row_t, psi_t.position_of(te));
            }
            const double lhs = psi.entries(row, psi.position_of(f));
            rep.max_deviation = std::max(rep.max_deviation, std::abs(lhs - sum));
        }
    }
    return rep;
}

ModelInstance k_transform_instance(const ModelInstance& m, int k) {
    if (!m.pinning().empty())
        throw ParamError("k_transform: pinned instances are not supported");
    if (m.kind() == ModelKind::MonomerDimer) {
        auto res = k_transform_edges(m.graph(), k);
        std::vector<double> f(res.graph.n_edges());
        for (int e = 0; e < res.graph.n_edges(); ++e)
            f[e] = m.fugacity()[res.edge_origin[e]] / k;
        return ModelInstance(ModelKind::MonomerDimer, std::move(res.graph), std::move(f));
    }
    auto res = k_transform_vertices(m.graph(), k);
    std::vector<double> f(res.graph.n_vertices());
    for (int v = 0; v < res.graph.n_vertices(); ++v)
        f[v] = m.fugacity()[res.vertex_origin[v]] / k;
    return ModelInstance(ModelKind::Hardcore, std::move(res.graph), std::move(f));
}

KTransformReport k_transform_cor_check(const ModelInstance& m, int k, long config_cap) {
    KTransformReport rep;
    rep.lambda_cor_base = cor_lambda_max(m, config_cap);
    ModelInstance mk = k_transform_instance(m, k);
    rep.lambda_cor_transformed = cor_lambda_max(mk, config_cap);
    rep.deviation = std::abs(rep.lambda_cor_base - rep.lambda_cor_transformed);
    return rep;
}

}  // namespace silab

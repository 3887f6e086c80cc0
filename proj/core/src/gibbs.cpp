#include "silab/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "silab/errors.hpp"

namespace silab {

std::string to_string(ModelKind k) {
    return k == ModelKind::MonomerDimer ? "monomer-dimer" : "hardcore";
}

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "monomer-dimer" || s == "matching") return ModelKind::MonomerDimer;
    if (s == "hardcore" || s == "independent-set") return ModelKind::Hardcore;
    throw ParamError("unknown model kind: " + s);
}

namespace {

// Occupied pinned elements must themselves be a valid configuration.
void validate_occupied_set(ModelKind kind, const Multigraph& g,
                           const std::vector<int>& occ) {
    if (kind == ModelKind::MonomerDimer) {
        std::vector<char> used(g.n_vertices(), 0);
        for (int e : occ) {
            auto [u, v] = g.edge(e);
            if (used[u] || used[v])
                throw ParamError("pinning: occupied edges do not form a matching");
            used[u] = used[v] = 1;
        }
    } else {
        std::vector<char> in(g.n_vertices(), 0);
        for (int v : occ) in[v] = 1;
        for (const auto& [u, v] : g.edges())
            if (in[u] && in[v])
                throw ParamError("pinning: occupied vertices are not independent");
    }
}

}  // namespace

ModelInstance::ModelInstance(ModelKind kind, Multigraph graph,
                             std::vector<double> fugacity, Pinning pinning)
    : kind_(kind), graph_(std::move(graph)), fugacity_(std::move(fugacity)),
      pinning_(std::move(pinning)) {
    const int n = n_elements();
    if (static_cast<int>(fugacity_.size()) != n)
        throw ParamError("model: fugacity vector size mismatch");
    for (double f : fugacity_)
        if (!(f > 0.0)) throw ParamError("model: fugacities must be positive");
    pin_state_.assign(n, 0);
    for (int i : pinning_.occupied) {
        if (i < 0 || i >= n) throw ParamError("pinning: id out of range");
        pin_state_[i] = 1;
    }
    for (int i : pinning_.unoccupied) {
        if (i < 0 || i >= n) throw ParamError("pinning: id out of range");
        if (pin_state_[i] != 0) throw ParamError("pinning: element pinned both ways");
        pin_state_[i] = 2;
    }
    std::sort(pinning_.occupied.begin(), pinning_.occupied.end());
    std::sort(pinning_.unoccupied.begin(), pinning_.unoccupied.end());
    validate_occupied_set(kind_, graph_, pinning_.occupied);
}

ModelInstance::ModelInstance(ModelKind kind, Multigraph graph, double fugacity,
                             Pinning pinning)
    : ModelInstance(kind, graph,
                    std::vector<double>(
                        static_cast<size_t>(kind == ModelKind::MonomerDimer
                                                ? graph.n_edges()
                                                : graph.n_vertices()),
                        fugacity),
                    std::move(pinning)) {}

int ModelInstance::n_elements() const {
    return kind_ == ModelKind::MonomerDimer ? graph_.n_edges() : graph_.n_vertices();
}

ModelInstance ModelInstance::tilt(double theta) const {
    if (!(theta > 0.0)) throw ParamError("tilt: theta must be positive");
    std::vector<double> f = fugacity_;
    for (double& x : f) x *= theta;
    return ModelInstance(kind_, graph_, std::move(f), pinning_);
}

GibbsOracle::GibbsOracle(std::vector<std::vector<int>> configs,
                         std::vector<double> weights, int n_elements)
    : weights_(std::move(weights)), n_elements_(n_elements) {
    offsets_.reserve(configs.size() + 1);
    offsets_.push_back(0);
    for (const auto& c : configs) {
        flat_.insert(flat_.end(), c.begin(), c.end());
        offsets_.push_back(flat_.size());
    }
    elem_weight_.assign(n_elements_, 0.0);
    elem_count_.assign(n_elements_, 0);
    for (size_t idx = 0; idx < weights_.size(); ++idx) {
        z_ += weights_[idx];
        for (size_t p = offsets_[idx]; p < offsets_[idx + 1]; ++p) {
            elem_weight_[flat_[p]] += weights_[idx];
            ++elem_count_[flat_[p]];
        }
    }
}

std::span<const int> GibbsOracle::config(int idx) const {
    return {flat_.data() + offsets_[idx], offsets_[idx + 1] - offsets_[idx]};
}

std::vector<int> GibbsOracle::free_elements() const {
    std::vector<int> out;
    for (int i = 0; i < n_elements_; ++i)
        if (!is_deterministic(i)) out.push_back(i);
    return out;
}

Matrix GibbsOracle::pairwise_occupied_weights() const {
    Matrix w(n_elements_, n_elements_);
    for (int idx = 0; idx < size(); ++idx) {
        auto c = config(idx);
        for (int a : c)
            for (int b : c) w(a, b) += weights_[idx];
    }
    return w;
}

GibbsOracle enumerate_support(const ModelInstance& m, long config_cap) {
    const Multigraph& g = m.graph();
    const int n = m.n_elements();
    std::vector<std::vector<int>> configs;
    std::vector<double> weights;

    // Conflict tracking: vertices consumed by chosen edges (matchings) or
    // a per-vertex blocked counter (independent sets).
    std::vector<int> blocked(g.n_vertices(), 0);
    auto adj = g.adjacency();

    std::vector<int> base;
    double base_weight = 1.0;
    for (int i : m.pinning().occupied) {
        base.push_back(i);
        base_weight *= m.fugacity()[i];
    }
    auto occupy = [&](int i, int dir) {
        if (m.kind() == ModelKind::MonomerDimer) {
            blocked[g.edge(i).first] += dir;
            blocked[g.edge(i).second] += dir;
        } else {
            for (int w : adj[i]) blocked[w] += dir;
        }
    };
    auto conflicts = [&](int i) {
        if (m.kind() == ModelKind::MonomerDimer)
            return blocked[g.edge(i).first] > 0 || blocked[g.edge(i).second] > 0;
        return blocked[i] > 0;
    };
    for (int i : base) occupy(i, +1);

    std::vector<int> chosen;
    double weight = base_weight;
    long count = 0;
    // Free elements in increasing order; every prefix is emitted.
    std::vector<int> free_ids;
    for (int i = 0; i < n; ++i)
        if (!m.is_pinned(i)) free_ids.push_back(i);

    auto emit = [&]() {
        if (++count > config_cap) throw CapExceeded("enumerate: config cap exceeded");
        std::vector<int> full = base;
        full.insert(full.end(), chosen.begin(), chosen.end());
        std::sort(full.begin(), full.end());
        configs.push_back(std::move(full));
        weights.push_back(weight);
    };

    emit();
    // Iterative DFS over "extend with free element >= pos".
    struct Frame { size_t pos; int elem; };
    std::vector<Frame> path;
    size_t pos = 0;
    while (true) {
        bool descended = false;
        for (size_t k = pos; k < free_ids.size(); ++k) {
            int i = free_ids[k];
            if (conflicts(i)) continue;
            chosen.push_back(i);
            occupy(i, +1);
            weight *= m.fugacity()[i];
            emit();
            path.push_back({k + 1, i});
            pos = k + 1;
            descended = true;
            break;
        }
        if (descended) continue;
        if (path.empty()) break;
        // backtrack, then resume scanning after the popped element
        auto frame = path.back();
        path.pop_back();
        occupy(frame.elem, -1);
        weight /= m.fugacity()[frame.elem];
        chosen.pop_back();
        pos = frame.pos;
    }

    if (configs.empty()) throw EmptySupport("enumerate: empty support");
    // Lexicographic order of the full configurations (pinned ids included).
    std::vector<int> order(configs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::lexicographical_compare(configs[a].begin(), configs[a].end(),
                                            configs[b].begin(), configs[b].end());
    });
    std::vector<std::vector<int>> sorted_configs(configs.size());
    std::vector<double> sorted_weights(configs.size());
    for (size_t i = 0; i < order.size(); ++i) {
        sorted_configs[i] = std::move(configs[order[i]]);
        sorted_weights[i] = weights[order[i]];
    }
    return GibbsOracle(std::move(sorted_configs), std::move(sorted_weights), n);
}

namespace {

// Matching DP on a forest. Pinned-occupied edges consume their endpoints;
// pinned-unoccupied edges are dropped.
double md_forest_z(const ModelInstance& m) {
    const Multigraph& g = m.graph();
    const int n = g.n_vertices();
    std::vector<char> consumed(n, 0);
    double factor = 1.0;
    for (int e : m.pinning().occupied) {
        factor *= m.fugacity()[e];
        consumed[g.edge(e).first] = 1;
        consumed[g.edge(e).second] = 1;
    }
    // active adjacency over usable edges
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (edge, other endpoint)
    for (int e = 0; e < g.n_edges(); ++e) {
        if (m.is_pinned(e)) continue;
        auto [u, v] = g.edge(e);
        if (consumed[u] || consumed[v]) continue;
        adj[u].emplace_back(e, v);
        adj[v].emplace_back(e, u);
    }
    std::vector<double> unm(n, 1.0), mat(n, 0.0);
    std::vector<char> vis(n, 0);
    double z = factor;
    for (int root = 0; root < n; ++root) {
        if (vis[root] || consumed[root]) continue;
        // BFS order, then process leaves-first
        std::vector<int> order{root};
        std::vector<int> par(n, -1);
        std::vector<double> par_lambda(n, 0.0);
        vis[root] = 1;
        for (size_t h = 0; h < order.size(); ++h) {
            int u = order[h];
            for (auto [e, w] : adj[u]) {
                if (vis[w]) continue;
                vis[w] = 1;
                par[w] = u;
                par_lambda[w] = m.fugacity()[e];
                order.push_back(w);
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int u = *it;
            double prod = 1.0, sum = 0.0;
            for (auto [e, w] : adj[u]) {
                if (par[w] != u) continue;
                prod *= unm[w] + mat[w];
                sum += m.fugacity()[e] * unm[w] / (unm[w] + mat[w]);
            }
            unm[u] = prod;
            mat[u] = prod * sum;
        }
        z *= unm[root] + mat[root];
    }
    return z;
}

// Independent-set DP on a forest with per-vertex allowed-state masks.
double hc_forest_z(const ModelInstance& m) {
    const Multigraph& g = m.graph();
    const int n = g.n_vertices();
    auto adj = g.adjacency();
    std::vector<double> in(n), out(n);
    std::vector<char> vis(n, 0);
    double z = 1.0;
    for (int root = 0; root < n; ++root) {
        if (vis[root]) continue;
        std::vector<int> order{root};
        std::vector<int> par(n, -1);
        vis[root] = 1;
        for (size_t h = 0; h < order.size(); ++h) {
            int u = order[h];
            for (int w : adj[u]) {
                if (vis[w]) continue;
                vis[w] = 1;
                par[w] = u;
                order.push_back(w);
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int u = *it;
            double pin = m.fugacity()[u], pout = 1.0;
            for (int w : adj[u]) {
                if (par[w] != u) continue;
                pin *= out[w];
                pout *= in[w] + out[w];
            }
            in[u] = m.is_pinned_unoccupied(u) ? 0.0 : pin;
            out[u] = m.is_pinned_occupied(u) ? 0.0 : pout;
        }
        z *= in[root] + out[root];
    }
    return z;
}

}  // namespace

double forest_partition_function(const ModelInstance& m) {
    if (!m.graph().is_forest()) throw NotAForest("partition_function: not a forest");
    return m.kind() == ModelKind::MonomerDimer ? md_forest_z(m) : hc_forest_z(m);
}

double partition_function(const ModelInstance& m, long config_cap) {
    if (m.graph().is_forest()) return forest_partition_function(m);
    return enumerate_support(m, config_cap).z();
}

double marginal(const ModelInstance& m, int i, long config_cap) {
    auto oracle = enumerate_support(m, config_cap);
    return oracle.marginal(i);
}

double conditional(const ModelInstance& m, int j, int i, ElementState i_state,
                   long config_cap) {
    auto oracle = enumerate_support(m, config_cap);
    double num = 0.0, den = 0.0;
    for (int idx = 0; idx < oracle.size(); ++idx) {
        auto c = oracle.config(idx);
        const bool has_i = std::binary_search(c.begin(), c.end(), i);
        if (has_i != (i_state == ElementState::Occupied)) continue;
        den += oracle.weight(idx);
        if (std::binary_search(c.begin(), c.end(), j)) num += oracle.weight(idx);
    }
    if (den == 0.0)
        throw ZeroProbabilityCondition("conditional: conditioning event has measure 0");
    return num / den;
}

double marginal_bound(const ModelInstance& m, long config_cap) {
    auto oracle = enumerate_support(m, config_cap);
    double best = 0.5;
    bool any = false;
    for (int i = 0; i < oracle.n_elements(); ++i) {
        if (m.is_pinned(i)) continue;
        if (oracle.is_deterministic(i))
            throw DegenerateElement("marginal_bound: free element is deterministic");
        any = true;
        const double mu = oracle.marginal(i);
        best = std::min(best, std::min(mu, 1.0 - mu));
    }
    if (!any) throw DegenerateElement("marginal_bound: no free elements");
    return best;
}

}  // namespace silab

#include "silab/families.hpp"

#include <vector>

#include "silab/errors.hpp"
#include "silab/rng.hpp"

namespace silab {

Multigraph path_graph(int n_vertices) {
    if (n_vertices < 1) throw ParamError("path: need n >= 1");
    Multigraph g(n_vertices);
    for (int i = 0; i + 1 < n_vertices; ++i) g.add_edge(i, i + 1);
    return g;
}

Multigraph cycle_graph(int n_vertices) {
    if (n_vertices < 3) throw ParamError("cycle: need n >= 3");
    Multigraph g(n_vertices);
    for (int i = 0; i < n_vertices; ++i) g.add_edge(i, (i + 1) % n_vertices);
    return g;
}

Multigraph star_graph(int leaves) {
    if (leaves < 1) throw ParamError("star: need d >= 1");
    Multigraph g(leaves + 1);
    for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
    return g;
}

Multigraph complete_ary_tree(int arity, int height) {
    if (arity < 1 || height < 0) throw ParamError("complete-ary-tree: bad parameters");
    long n = 1, level = 1;
    for (int h = 0; h < height; ++h) {
        level *= arity;
        n += level;
    }
    if (n > 2000000) throw ParamError("complete-ary-tree: too many vertices");
    Multigraph g(static_cast<int>(n));
    int next = 1;
    std::vector<int> frontier{0};
    for (int h = 0; h < height; ++h) {
        std::vector<int> nxt;
        nxt.reserve(frontier.size() * arity);
        for (int p : frontier) {
            for (int c = 0; c < arity; ++c) {
                g.add_edge(p, next);
                nxt.push_back(next++);
            }
        }
        frontier = std::move(nxt);
    }
    return g;
}

Multigraph random_tree(int n_vertices, uint64_t seed, int max_degree) {
    if (n_vertices < 1) throw ParamError("random-tree: need n >= 1");
    Multigraph g(n_vertices);
    Rng rng(seed);
    std::vector<int> degree(n_vertices, 0);
    for (int i = 1; i < n_vertices; ++i) {
        std::vector<int> eligible;
        for (int j = 0; j < i; ++j)
            if (max_degree <= 0 || degree[j] < max_degree) eligible.push_back(j);
        if (eligible.empty())
            throw ParamError("random-tree: degree cap too small for n");
        const int p = eligible[rng.below_int(static_cast<int>(eligible.size()))];
        g.add_edge(p, i);
        ++degree[p];
        ++degree[i];
    }
    return g;
}

Multigraph parallel_cycle(int n_vertices, int k) {
    return k_transform_edges(cycle_graph(n_vertices), k).graph;
}

namespace {

int param_int(const std::map<std::string, std::string>& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) throw ParamError("generate: missing parameter " + key);
    try {
        return std::stoi(it->second);
    } catch (...) {
        throw ParamError("generate: bad integer for " + key);
    }
}

uint64_t param_u64(const std::map<std::string, std::string>& params,
                   const std::string& key, uint64_t fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    try {
        return std::stoull(it->second);
    } catch (...) {
        throw ParamError("generate: bad integer for " + key);
    }
}

}  // namespace

Multigraph generate_family(const std::string& family,
                           const std::map<std::string, std::string>& params) {
    if (family == "path") return path_graph(param_int(params, "n"));
    if (family == "cycle") return cycle_graph(param_int(params, "n"));
    if (family == "star") return star_graph(param_int(params, "d"));
    if (family == "complete-ary-tree")
        return complete_ary_tree(param_int(params, "arity"), param_int(params, "height"));
    if (family == "random-tree") {
        int cap = params.count("max-degree") ? param_int(params, "max-degree") : 0;
        return random_tree(param_int(params, "n"), param_u64(params, "seed", 1), cap);
    }
    if (family == "parallel-cycle")
        return parallel_cycle(param_int(params, "n"), param_int(params, "k"));
    throw ParamError("generate: unknown family " + family);
}

}  // namespace silab

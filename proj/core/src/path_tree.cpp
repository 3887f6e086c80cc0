#include "silab/path_tree.hpp"

#include <algorithm>
#include <functional>

#include "silab/errors.hpp"

namespace silab {

PathTree path_tree(const Multigraph& g, int u, long node_cap) {
    if (u < 0 || u >= g.n_vertices()) throw ParamError("path_tree: bad root vertex");
    auto inc = g.incidence();

    std::vector<std::pair<int, int>> tree_edges;  // (parent node, child node)
    std::vector<int> chi;
    std::vector<int> terminal{u};
    std::vector<char> visited(g.n_vertices(), 0);
    visited[u] = 1;
    long count = 1;

    // Depth-first, children in (next vertex, edge id) order, so node ids come
    // out in lexicographic path order. Recursion depth is at most n.
    std::function<void(int, int)> extend = [&](int node, int at) {
        std::vector<std::pair<int, int>> next;  // (vertex, edge)
        for (int e : inc[at]) {
            int w = g.edge(e).first == at ? g.edge(e).second : g.edge(e).first;
            if (!visited[w]) next.emplace_back(w, e);
        }
        std::sort(next.begin(), next.end());
        for (auto [w, e] : next) {
            if (++count > node_cap)
                throw CapExceeded("path_tree: node cap exceeded");
            int child = static_cast<int>(terminal.size());
            terminal.push_back(w);
            tree_edges.emplace_back(node, child);
            chi.push_back(e);
            visited[w] = 1;
            extend(child, w);
            visited[w] = 0;
        }
    };
    extend(0, u);

    Multigraph t(static_cast<int>(terminal.size()));
    for (auto [p, c] : tree_edges) t.add_edge(p, c);
    return PathTree{RootedTree(std::move(t), 0), std::move(chi), std::move(terminal), u};
}

}  // namespace silab

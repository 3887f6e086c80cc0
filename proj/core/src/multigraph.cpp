#include "silab/multigraph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "silab/errors.hpp"

namespace silab {

Multigraph::Multigraph(int n_vertices, std::vector<std::pair<int, int>> edges)
    : n_(n_vertices) {
    for (auto [u, v] : edges) add_edge(u, v);
}

int Multigraph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw ParamError("add_edge: endpoint out of range");
    if (u == v) throw ParamError("add_edge: self-loops are not allowed");
    edges_.emplace_back(u, v);
    return static_cast<int>(edges_.size()) - 1;
}

std::vector<std::vector<int>> Multigraph::incidence() const {
    std::vector<std::vector<int>> inc(n_);
    for (int e = 0; e < n_edges(); ++e) {
        inc[edges_[e].first].push_back(e);
        inc[edges_[e].second].push_back(e);
    }
    return inc;
}

std::vector<std::vector<int>> Multigraph::adjacency() const {
    std::vector<std::vector<int>> adj(n_);
    for (const auto& [u, v] : edges_) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

std::vector<int> Multigraph::degrees() const {
    std::vector<int> d(n_, 0);
    for (const auto& [u, v] : edges_) {
        ++d[u];
        ++d[v];
    }
    return d;
}

int Multigraph::max_degree() const {
    auto d = degrees();
    return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

bool Multigraph::is_simple() const {
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges_) {
        if (u > v) std::swap(u, v);
        if (!seen.insert({u, v}).second) return false;
    }
    return true;
}

bool Multigraph::is_connected() const {
    if (n_ <= 1) return true;
    auto adj = adjacency();
    std::vector<char> vis(n_, 0);
    std::deque<int> q{0};
    vis[0] = 1;
    int cnt = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int w : adj[u])
            if (!vis[w]) {
                vis[w] = 1;
                ++cnt;
                q.push_back(w);
            }
    }
    return cnt == n_;
}

bool Multigraph::is_forest() const {
    if (!is_simple()) return false;  // a parallel pair is a 2-cycle
    // union-find cycle detection
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [u, v] : edges_) {
        int ru = find(u), rv = find(v);
        if (ru == rv) return false;
        parent[ru] = rv;
    }
    return true;
}

bool Multigraph::is_tree() const { return is_forest() && is_connected(); }

std::optional<int> girth(const Multigraph& g) {
    // Parallel pair -> 2-cycle.
    if (!g.is_simple()) return 2;
    const int n = g.n_vertices();
    auto adj = g.adjacency();
    int best = std::numeric_limits<int>::max();
    // BFS from every root; the minimum closed-walk value over roots on a
    // shortest cycle is exact.
    std::vector<int> dist(n), par(n);
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(par.begin(), par.end(), -1);
        std::deque<int> q{s};
        dist[s] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            if (2 * dist[u] >= best) continue;
            for (int w : adj[u]) {
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    par[w] = u;
                    q.push_back(w);
                } else if (w != par[u]) {
                    best = std::min(best, dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if (best == std::numeric_limits<int>::max()) return std::nullopt;
    return best;
}

namespace {

std::vector<std::optional<int>> line_bfs(const Multigraph& g, int e) {
    const int m = g.n_edges();
    auto inc = g.incidence();
    std::vector<int> dist(m, -1);
    std::deque<int> q{e};
    dist[e] = 0;
    while (!q.empty()) {
        int cur = q.front();
        q.pop_front();
        for (int endpoint : {g.edge(cur).first, g.edge(cur).second}) {
            for (int nxt : inc[endpoint]) {
                if (dist[nxt] < 0) {
                    dist[nxt] = dist[cur] + 1;
                    q.push_back(nxt);
                }
            }
        }
    }
    std::vector<std::optional<int>> out(m);
    for (int i = 0; i < m; ++i)
        if (dist[i] >= 0) out[i] = dist[i];
    return out;
}

}  // namespace

std::optional<int> line_distance(const Multigraph& g, int e, int f) {
    if (e < 0 || f < 0 || e >= g.n_edges() || f >= g.n_edges())
        throw ParamError("line_distance: edge id out of range");
    return line_bfs(g, e)[f];
}

std::vector<std::optional<int>> line_distances_from(const Multigraph& g, int e) {
    if (e < 0 || e >= g.n_edges()) throw ParamError("line_distances_from: bad edge id");
    return line_bfs(g, e);
}

std::vector<std::optional<int>> vertex_distances_from(const Multigraph& g, int u) {
    const int n = g.n_vertices();
    auto adj = g.adjacency();
    std::vector<int> dist(n, -1);
    std::deque<int> q{u};
    dist[u] = 0;
    while (!q.empty()) {
        int cur = q.front();
        q.pop_front();
        for (int w : adj[cur])
            if (dist[w] < 0) {
                dist[w] = dist[cur] + 1;
                q.push_back(w);
            }
    }
    std::vector<std::optional<int>> out(n);
    for (int i = 0; i < n; ++i)
        if (dist[i] >= 0) out[i] = dist[i];
    return out;
}

EdgeTransformResult k_transform_edges(const Multigraph& g, int k) {
    if (k < 1) throw ParamError("k_transform_edges: k must be >= 1");
    EdgeTransformResult out{Multigraph(g.n_vertices()), {}};
    out.edge_origin.reserve(static_cast<size_t>(g.n_edges()) * k);
    for (int e = 0; e < g.n_edges(); ++e) {
        for (int t = 0; t < k; ++t) {
            out.graph.add_edge(g.edge(e).first, g.edge(e).second);
            out.edge_origin.push_back(e);
        }
    }
    return out;
}

VertexTransformResult k_transform_vertices(const Multigraph& g, int k) {
    if (k < 1) throw ParamError("k_transform_vertices: k must be >= 1");
    if (!g.is_simple()) throw ParamError("k_transform_vertices: input must be simple");
    VertexTransformResult out{Multigraph(g.n_vertices() * k), {}};
    out.vertex_origin.resize(static_cast<size_t>(g.n_vertices()) * k);
    for (int v = 0; v < g.n_vertices(); ++v)
        for (int t = 0; t < k; ++t) out.vertex_origin[v * k + t] = v;
    for (int v = 0; v < g.n_vertices(); ++v)
        for (int s = 0; s < k; ++s)
            for (int t = s + 1; t < k; ++t) out.graph.add_edge(v * k + s, v * k + t);
    for (int e = 0; e < g.n_edges(); ++e) {
        auto [u, v] = g.edge(e);
        for (int s = 0; s < k; ++s)
            for (int t = 0; t < k; ++t) out.graph.add_edge(u * k + s, v * k + t);
    }
    return out;
}

Multigraph parse_graph(std::istream& in) {
    int n = -1, m = -1;
    if (!(in >> n >> m)) throw ParseError("graph: expected header \"n m\"", 1);
    if (n < 0 || m < 0) throw ParseError("graph: negative counts in header", 1);
    Multigraph g(n);
    for (int e = 0; e < m; ++e) {
        int u, v;
        if (!(in >> u >> v)) throw ParseError("graph: truncated edge list", e + 2);
        g.add_edge(u, v);
    }
    return g;
}

Multigraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("graph: cannot open " + path);
    return parse_graph(in);
}

std::string format_graph(const Multigraph& g) {
    std::ostringstream out;
    out << g.n_vertices() << ' ' << g.n_edges() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

void save_graph(const Multigraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParamError("graph: cannot write " + path);
    out << format_graph(g);
}

RootedTree::RootedTree(Multigraph tree, int root) : graph_(std::move(tree)), root_(root) {
    if (!graph_.is_tree()) throw NotATree("RootedTree: graph is not a tree");
    if (root < 0 || root >= graph_.n_vertices()) throw ParamError("RootedTree: bad root");
    const int n = graph_.n_vertices();
    parent_.assign(n, -1);
    parent_edge_.assign(n, -1);
    children_.assign(n, {});
    auto inc = graph_.incidence();
    std::vector<char> vis(n, 0);
    std::deque<int> q{root_};
    vis[root_] = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        bfs_order_.push_back(u);
        for (int e : inc[u]) {
            int w = graph_.edge(e).first == u ? graph_.edge(e).second : graph_.edge(e).first;
            if (!vis[w]) {
                vis[w] = 1;
                parent_[w] = u;
                parent_edge_[w] = e;
                children_[u].push_back(w);
                q.push_back(w);
            }
        }
    }
}

}  // namespace silab

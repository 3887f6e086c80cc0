#ifndef SILAB_MULTIGRAPH_HPP
#define SILAB_MULTIGRAPH_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace silab {

// Undirected multigraph: parallel edges allowed, self-loops rejected.
// Edge ids are positions in the edge list (0..m-1, dense).
class Multigraph {
public:
    Multigraph() = default;
    explicit Multigraph(int n_vertices) : n_(n_vertices) {}
    Multigraph(int n_vertices, std::vector<std::pair<int, int>> edges);

    int add_edge(int u, int v);  // returns the new edge id

    int n_vertices() const { return n_; }
    int n_edges() const { return static_cast<int>(edges_.size()); }
    const std::pair<int, int>& edge(int e) const { return edges_[e]; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    // Edge ids incident to vertex u.
    std::vector<std::vector<int>> incidence() const;
    // Neighbor vertex along each incident edge (parallel edges repeat).
    std::vector<std::vector<int>> adjacency() const;
    std::vector<int> degrees() const;
    int max_degree() const;

    bool is_simple() const;           // no parallel edges
    bool is_connected() const;        // vertexless graph counts as connected
    bool is_forest() const;           // acyclic (parallel pair is a cycle)
    bool is_tree() const;             // connected forest

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
};

// Length of the shortest cycle; 2 with any parallel pair; nullopt for forests.
std::optional<int> girth(const Multigraph& g);

// Shortest-path distance in the line graph (0 for e == f, 1 for incident
// edges). nullopt when e and f lie in different components.
std::optional<int> line_distance(const Multigraph& g, int e, int f);

// All-pairs variant used by decay profiles: distances from source edge e.
std::vector<std::optional<int>> line_distances_from(const Multigraph& g, int e);

// Vertex-graph analogue.
std::vector<std::optional<int>> vertex_distances_from(const Multigraph& g, int u);

struct EdgeTransformResult {
    Multigraph graph;
    std::vector<int> edge_origin;  // new edge id -> original edge id
};

// Replace every edge by k parallel copies (copies of edge e get consecutive
// ids e*k .. e*k+k-1).
EdgeTransformResult k_transform_edges(const Multigraph& g, int k);

struct VertexTransformResult {
    Multigraph graph;
    std::vector<int> vertex_origin;  // new vertex id -> original vertex id
};

// Replace every vertex by a k-clique and fully connect cliques of adjacent
// vertices; requires a simple input graph. Clones of vertex v get ids
// v*k .. v*k+k-1. Intra-clique edges come first, then per original edge the
// k*k cross edges.
VertexTransformResult k_transform_vertices(const Multigraph& g, int k);

// Text format: first line "n m", then m lines "u v" with 0-based vertex ids;
// duplicate lines encode parallel edges.
Multigraph parse_graph(std::istream& in);
Multigraph load_graph(const std::string& path);
std::string format_graph(const Multigraph& g);
void save_graph(const Multigraph& g, const std::string& path);

// A tree with a distinguished root; parent/children/BFS order precomputed.
class RootedTree {
public:
    RootedTree(Multigraph tree, int root);

    const Multigraph& graph() const { return graph_; }
    int root() const { return root_; }
    int n_vertices() const { return graph_.n_vertices(); }
    int parent(int u) const { return parent_[u]; }           // -1 for root
    int parent_edge(int u) const { return parent_edge_[u]; }  // -1 for root
    const std::vector<int>& children(int u) const { return children_[u]; }
    const std::vector<int>& bfs_order() const { return bfs_order_; }

private:
    Multigraph graph_;
    int root_;
    std::vector<int> parent_;
    std::vector<int> parent_edge_;
    std::vector<std::vector<int>> children_;
    std::vector<int> bfs_order_;
};

}  // namespace silab

#endif

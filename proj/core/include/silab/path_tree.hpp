#ifndef SILAB_PATH_TREE_HPP
#define SILAB_PATH_TREE_HPP

#include <vector>

#include "silab/multigraph.hpp"

namespace silab {

// Tree of self-avoiding paths of g starting at a root vertex. Tree vertex 0
// is the trivial path; vertices are numbered in lexicographic order of their
// path (vertex sequence, then edge ids). chi maps every path-tree edge to the
// original edge it copies; restricted to edges at the root it is a bijection
// onto the edges incident to the source root.
struct PathTree {
    RootedTree tree;
    std::vector<int> chi;       // path-tree edge id -> original edge id
    std::vector<int> terminal;  // path-tree vertex -> endpoint of its path
    int source_root = 0;
};

// Throws CapExceeded once more than node_cap path vertices would be created.
PathTree path_tree(const Multigraph& g, int u, long node_cap = 1000000);

}  // namespace silab

#endif

#ifndef SILAB_FAMILIES_HPP
#define SILAB_FAMILIES_HPP

#include <cstdint>
#include <map>
#include <string>

#include "silab/multigraph.hpp"

namespace silab {

Multigraph path_graph(int n_vertices);
Multigraph cycle_graph(int n_vertices);
Multigraph star_graph(int leaves);
Multigraph complete_ary_tree(int arity, int height);
// Random attachment tree; max_degree 0 means unbounded. Deterministic in seed.
Multigraph random_tree(int n_vertices, uint64_t seed, int max_degree = 0);
Multigraph parallel_cycle(int n_vertices, int k);

// Shared front end for the CLI: family name plus key=value parameters
// (path: n; cycle: n; star: d; complete-ary-tree: arity,height;
// random-tree: n,seed[,max-degree]; parallel-cycle: n,k).
Multigraph generate_family(const std::string& family,
                           const std::map<std::string, std::string>& params);

}  // namespace silab

#endif

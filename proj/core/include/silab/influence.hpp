#ifndef SILAB_INFLUENCE_HPP
#define SILAB_INFLUENCE_HPP

#include <utility>
#include <vector>

#include "silab/gibbs.hpp"
#include "silab/linalg.hpp"
#include "silab/matrix.hpp"

namespace silab {

// Square matrix indexed by the free element ids of an instance.
// Deterministic elements are dropped from the index entirely.
struct LabeledMatrix {
    std::vector<int> index;
    Matrix entries;

    int position_of(int element) const;
};

// Psi(i,j) = Pr[j|i] - Pr[j|i-bar] on free elements; unit diagonal.
LabeledMatrix influence_matrix(const ModelInstance& m, const GibbsOracle& oracle);
LabeledMatrix influence_matrix(const ModelInstance& m, long config_cap = kDefaultConfigCap);

// Psi_cor(i,j) = Pr[j|i] - Pr[j].
LabeledMatrix correlation_matrix(const ModelInstance& m, const GibbsOracle& oracle);
LabeledMatrix correlation_matrix(const ModelInstance& m, long config_cap = kDefaultConfigCap);

// Psi_sym(i,j) = cov(i,j) / (sd_i sd_j), built from the covariance directly;
// exactly symmetric with unit diagonal.
LabeledMatrix symmetrized_matrix(const ModelInstance& m, const GibbsOracle& oracle);
LabeledMatrix symmetrized_matrix(const ModelInstance& m, long config_cap = kDefaultConfigCap);

// max_i sum_j |Psi(i,j)|.
double total_influence(const ModelInstance& m, long config_cap = kDefaultConfigCap);

// lambda_max(Psi) computed through the symmetric similarity with Psi_sym.
double lambda_max_sym(const ModelInstance& m, long config_cap = kDefaultConfigCap);

// lambda_max(Psi_cor) through the symmetric similarity
// D-bar^{1/2} Psi_sym D-bar^{1/2}.
double cor_lambda_max(const ModelInstance& m, long config_cap = kDefaultConfigCap);
double cor_lambda_max(const ModelInstance& m, const GibbsOracle& oracle);

// s_k = sum over f at line/vertex distance k from e of |Psi(e,f)|.
// Requires a forest instance.
std::vector<std::pair<int, double>> decay_profile(const ModelInstance& m, int e,
                                                  long config_cap = kDefaultConfigCap);

// Psi on a forest in O(n^2): adjacent-pair influences from subtree partition
// functions, extended along paths by the product rule. Throws NotAForest.
LabeledMatrix tree_influence_fast(const ModelInstance& m);

struct PathTreeInfluenceReport {
    double max_deviation = 0.0;
    int path_tree_vertices = 0;
    int root_edges = 0;
};

// Checks Psi(e,f) = sum over chi-preimages of f of Psi_T(e,f') for all e
// incident to the root u, on the monomer-dimer model with fugacity lambda.
PathTreeInfluenceReport path_tree_influence_check(const Multigraph& g, int u,
                                                  double lambda,
                                                  long node_cap = 1000000,
                                                  long config_cap = kDefaultConfigCap);

struct KTransformReport {
    double lambda_cor_base = 0.0;
    double lambda_cor_transformed = 0.0;
    double deviation = 0.0;
};

// Compares lambda_max(Psi_cor) before and after the k-transformation
// (parallel edges for the edge model, cliques for the vertex model, with
// fugacity divided by k).
KTransformReport k_transform_cor_check(const ModelInstance& m, int k,
                                       long config_cap = kDefaultConfigCap);

// The k-transformed instance itself (exposed for tests and the CLI).
ModelInstance k_transform_instance(const ModelInstance& m, int k);

}  // namespace silab

#endif

#ifndef SILAB_APPROX_INVERSE_HPP
#define SILAB_APPROX_INVERSE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "silab/influence.hpp"
#include "silab/recursions.hpp"

namespace silab {

enum class ApproxInverseVariant { Edge, Vertex, WEdge };

// Block-assembled approximate inverse of Psi_sym (or Psi for the W variant).
// Edge variant:   Q = sum_v Q_v - I, Q_v the zero-padded inverse of the
//                 principal minor on the free edges at v.
// Vertex variant: Q = sum_e Q_e - diag{d_u - 1} over free endpoints.
// W variant:      edge-variant shape built from Psi minors (non-symmetric).
struct ApproxInverse {
    LabeledMatrix matrix;
    ApproxInverseVariant variant;
    std::map<int, Matrix> block_inverses;  // vertex id (edge/W) or edge id (vertex)
};

ApproxInverse build_q_edge(const ModelInstance& m, const GibbsOracle& oracle);
ApproxInverse build_q_edge(const ModelInstance& m, long config_cap = kDefaultConfigCap);

ApproxInverse build_q_vertex(const ModelInstance& m, const GibbsOracle& oracle);
ApproxInverse build_q_vertex(const ModelInstance& m, long config_cap = kDefaultConfigCap);

ApproxInverse build_w(const ModelInstance& m, const GibbsOracle& oracle);
ApproxInverse build_w(const ModelInstance& m, long config_cap = kDefaultConfigCap);

// The natural Q for the instance's model kind.
ApproxInverse build_q(const ModelInstance& m, const GibbsOracle& oracle);

// ||Q Psi_sym - I||_max on a forest instance; throws NotATree otherwise.
double tree_identity_check(const ModelInstance& m, long config_cap = kDefaultConfigCap);

enum class Verdict { Pass, Fail, Void };

std::string to_string(Verdict v);

struct Certificate {
    double alpha = 0.0;              // lambda_min(Q)
    double beta = 0.0;               // lambda_max(Q Psi_sym)
    double bound = 0.0;              // beta / alpha (meaningless when void)
    double lambda_max_direct = 0.0;  // lambda_max(Psi_sym)
    Verdict verdict = Verdict::Void;
};

// The eigenvalue certificate lambda_max(Psi) = lambda_max(Psi_sym) <= beta/alpha.
// Void when alpha <= 0 (the bound certifies nothing there).
Certificate certificate(const ModelInstance& m, long config_cap = kDefaultConfigCap);

struct LocalSpectralReport {
    std::vector<int> violating_vertices;  // lambda_max(Psi_sym_u) > beta_target
    double max_local_lambda = 0.0;
    double alpha_bound = 0.0;   // 2/beta_target - 1, meaningful when no violations
    double lambda_min_q = 0.0;
    bool ok = false;            // no violations and lambda_min(Q) >= alpha_bound
};

// Verifies the local criterion: lambda_max of every vertex block at most
// beta_target implies lambda_min(Q) >= 2/beta_target - 1. Edge models only.
LocalSpectralReport local_spectral_check(const ModelInstance& m, double beta_target,
                                         long config_cap = kDefaultConfigCap);

struct QuadraticDecompositionReport {
    double max_deviation = 0.0;  // worst |x^T Q x - decomposed form| over trials
    double lambda_min_q = 0.0;
    double alpha_bound = 0.0;    // eps^2 / 4
    bool conclusion_ok = false;  // lambda_min(Q) >= eps^2/4
};

// Verifies the sum-of-squares decomposition of x^T Q x (zeta = eps/2) on a
// hardcore tree instance for random x, plus the lambda_min conclusion when
// the beta-sum hypotheses hold. Throws HypothesisFailed listing violators.
QuadraticDecompositionReport quadratic_decomposition_check(
    const ModelInstance& m, int root, double eps, int trials, uint64_t seed = 1,
    long config_cap = kDefaultConfigCap);

struct RayleighReport {
    double lower_bound = 0.0;         // sum_u x_u^2 with x_r = 1, x_u = beta_u x_{p_u}
    double quad_form_residual = 0.0;  // |x^T Q x - x_r^2| under that assignment
};

// Certified lower bound on lambda_max(Psi_sym) for the hardcore model on a
// tree, via the recursion-driven test vector. Linear time, works far beyond
// enumeration scale.
RayleighReport rayleigh_lower_bound(const HardcoreRecursionState& state);
RayleighReport rayleigh_lower_bound(const RootedTree& tree, double lambda);

// x^T Q x evaluated through the sparse tree form of the vertex-model Q,
// using the recursion's parent-edge influences. Linear time.
double hardcore_tree_quadratic_form(const HardcoreRecursionState& state,
                                    std::span<const double> x);

// Assembles P^{-1} from per-block inverses of a product distance matrix and
// compares with direct inversion; returns the max absolute deviation.
double product_distance_inverse_check(const Matrix& p,
                                      const std::vector<std::vector<int>>& blocks);

}  // namespace silab

#endif

#ifndef SILAB_DYNAMICS_HPP
#define SILAB_DYNAMICS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "silab/gibbs.hpp"
#include "silab/matrix.hpp"
#include "silab/multigraph.hpp"

namespace silab {

// Explicit single-site dynamics over the full support: pick an unpinned
// element uniformly, then resample it from its conditional distribution
// (an invalid occupied move sends the mass to the unoccupied outcome).
struct GlauberChain {
    GibbsOracle support;
    std::vector<int> sites;  // resampled elements (the unpinned ones)
    Matrix p;                // row-stochastic transition matrix
    std::vector<double> pi;  // stationary distribution, aligned with support

    int n_states() const { return support.size(); }
};

GlauberChain build_chain(const ModelInstance& m, long config_cap = kDefaultConfigCap);

// Residuals for the chain's defining properties (max row-sum error, detailed
// balance error, ||pi P - pi||_1).
struct ChainResiduals {
    double row_sum = 0.0;
    double detailed_balance = 0.0;
    double stationarity = 0.0;
};

ChainResiduals chain_residuals(const GlauberChain& c);

// 1 - lambda_2 of the pi-self-adjoint transition operator. Dense Jacobi up
// to a size cutoff, deflated power iteration on the sparse symmetrization
// beyond it. Throws NotReversible when detailed balance fails.
double spectral_gap(const GlauberChain& c);

// Smallest t with worst-start total variation distance below eps, found by
// doubling plus binary search on stored powers. Throws NoConvergence past
// step_cap.
long mixing_time(const GlauberChain& c, double eps, long step_cap = 1000000);

// mu[Var_S f] for f given per support configuration.
double local_variance(const GibbsOracle& oracle, std::span<const double> f,
                      std::span<const int> s);

double variance(const GibbsOracle& oracle, std::span<const double> f);

// The projection mu_S[f] as a function on configurations.
std::vector<double> mu_projection(const GibbsOracle& oracle, std::span<const double> f,
                                  std::span<const int> s);

// |Var f - (mu[Var_S f] + Var(mu_S[f]))|.
double total_variance_check(const GibbsOracle& oracle, std::span<const double> f,
                            std::span<const int> s);

// Minimal C with Var f <= C sum_u mu[Var_u f], via the generalized symmetric
// eigenproblem on the complement of constants. Throws SingularMatrix when
// the local-variance form is degenerate off constants.
double tensorization_constant(const ModelInstance& m, long config_cap = kDefaultConfigCap);

struct TensorizationCheckReport {
    double worst_slack = 0.0;  // min over trials of RHS - LHS (negative = violation)
    int trials = 0;
    bool ok = false;
};

// Variance tensorization with the per-edge constants 3(1+x) (leaf edge) and
// 6(1+x): random functions on the monomer-dimer tree model. The tree must be
// rooted at a degree-1 vertex and all fugacities must be at most 0.1
// (HypothesisFailed otherwise).
TensorizationCheckReport matching_tensorization_check(const RootedTree& tree,
                                                      const std::vector<double>& fugacity,
                                                      int trials, uint64_t seed = 1,
                                                      long config_cap = kDefaultConfigCap);

}  // namespace silab

#endif

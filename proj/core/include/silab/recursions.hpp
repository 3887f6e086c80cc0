#ifndef SILAB_RECURSIONS_HPP
#define SILAB_RECURSIONS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "silab/matrix.hpp"
#include "silab/multigraph.hpp"

namespace silab {

// Bottom-up / top-down conditional marginals of the hardcore model on a
// rooted tree, plus the symmetrized parent-edge influences.
//   up[u]   = Pr[u | parent of u unoccupied]   (root: unconditioned marginal)
//   down[u] = Pr[p_u | u unoccupied]           (0 at the root)
//   beta[u] = Psi_sym(u, p_u) = -sqrt(up[u] * down[u])  (0 at the root)
struct HardcoreRecursionState {
    RootedTree tree;
    double lambda = 0.0;
    std::vector<double> up;
    std::vector<double> down;
    std::vector<double> beta;
};

// O(n); comfortable up to 10^6 vertices.
HardcoreRecursionState hardcore_recursion(RootedTree tree, double lambda);

struct BetaSumsReport {
    double max_sum = 0.0;  // max over u of sum_{v in C(u)} beta_v^2
    int argmax_vertex = -1;
    double bound = 0.0;    // 1 - delta/3
    bool ok = false;
};

// Checks sum of squared child betas against 1 - delta/3; requires
// lambda < (1-delta) e^2 (throws HypothesisFailed otherwise).
BetaSumsReport beta_sums_check(const HardcoreRecursionState& state, double delta);

struct MatchingRatioLimit {
    double r = 0.0;            // 1 - 2/(sqrt(1+4 lambda)+1)
    double fixed_point = 0.0;  // positive solution of x = 1/(1 + lambda x)
};

MatchingRatioLimit matching_ratio_limit(double lambda);

// Partition functions of monomer-dimer paths by edge count, with the
// conventions z(-2) = 0 and z(-1) = z(0) = 1.
class PathZ {
public:
    PathZ(int max_edges, double lambda);
    double at(int k) const { return z_[static_cast<size_t>(k + 2)]; }

private:
    std::vector<double> z_;
};

// Exact influence Psi(e_1, e_ell) of the monomer-dimer model on the cycle
// C_n, via path partition functions (an occupied or excluded edge cuts the
// cycle into paths).
double cycle_influence_entry(int n, double lambda, int ell);

// The ell x ell principal minor Psi_{n,ell} on consecutive cycle edges.
Matrix cycle_influence_minor(int n, double lambda, int ell);

struct CycleLimitReport {
    double psi_value = 0.0;
    double limit = 0.0;  // (-R)^(ell-1)
    double deviation = 0.0;
};

CycleLimitReport cycle_influence_limit_check(int ell, double lambda, int n);

struct CycleMinorBound {
    double lambda_max_minor = 0.0;  // certified lower bound for lambda_max(Psi)
    double target = 0.0;            // sqrt(lambda)/3
    bool ok = false;
};

// lambda_max of Psi_{n,ell} (interlacing makes it a lower bound for the
// full cycle spectrum), flagged against sqrt(lambda)/3.
CycleMinorBound long_cycle_lower_bound(double lambda, int n, int ell);

struct ParallelCycleReport {
    double lambda_max = 0.0;       // exact lambda_max(Psi) on the parallel cycle
    double lambda_max_base = 0.0;  // lambda_max(Psi) on C_n at fugacity Delta/2
    double cor_deviation = 0.0;    // |lambda_max(Psi_cor_mu) - lambda_max(Psi_cor_nu)|
    double target = 0.0;           // sqrt(Delta)/10
};

// Monomer-dimer on the (Delta/2)-parallel cycle at fugacity 1, built through
// the k-transformation of the plain cycle at fugacity Delta/2 with exact
// closed-form conditionals. Throws CapExceeded when n*Delta/2 gets too big.
ParallelCycleReport parallel_cycle_lower_bound(int delta, int n,
                                               int size_cap = 2000);

struct ScalarScanReport {
    double max_f = 0.0;          // sup of F(d,x) over the grid
    int max_f_d = 0;
    double max_f_x = 0.0;
    double f_bound = 0.0;        // 1 - delta/3
    double min_g_margin = 0.0;   // min over d of G(delta/3,d) - (1-delta)e^2
    int violations = 0;
    bool ok = false;
};

// Grid verification of F(d,x) <= 1 - delta/3 at lambda = (1-delta)e^2 and of
// G(delta/3, d) >= (1-delta)e^2, for d up to d_max.
ScalarScanReport hardcore_scalar_scan(double delta, int d_max = 200,
                                      int grid_points = 10000);

double scalar_f(double lambda, int d, double x);
double scalar_g(double zeta, int d);

struct MaxStructureReport {
    double best_found = 0.0;      // best objective over sampled feasible points
    double best_symmetric = 0.0;  // best over profiles (i equal values, rest 0)
    double slack = 0.0;           // best_symmetric - best_found
    bool ok = false;              // best_found <= best_symmetric + tolerance
};

// Numeric check that sum a_i/(1-a_i+lambda P) under prod(1-a_i) = P is
// maximized by a symmetric profile. Dense random sampling plus local
// refinement; n <= 5.
MaxStructureReport max_hardcore_structure_check(int n, double p, double lambda,
                                                int samples = 20000,
                                                uint64_t seed = 1,
                                                double tolerance = 1e-6);

// Unique root of x = lambda (1-x)^d in (0,1), bisected to 1e-14.
double fixed_point(double lambda, int d);

}  // namespace silab

#endif

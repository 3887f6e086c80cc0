#include "silab/recursions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "silab/errors.hpp"
#include "silab/linalg.hpp"
#include "silab/rng.hpp"

namespace silab {

HardcoreRecursionState hardcore_recursion(RootedTree tree, double lambda) {
    if (!(lambda > 0.0)) throw ParamError("hardcore_recursion: lambda must be positive");
    HardcoreRecursionState st{std::move(tree), lambda, {}, {}, {}};
    const RootedTree& t = st.tree;
    const int n = t.n_vertices();
    st.up.assign(n, 0.0);
    st.down.assign(n, 0.0);
    st.beta.assign(n, 0.0);

    const auto& order = t.bfs_order();
    // Bottom-up: ratio r_u = lambda * prod over children (1 - up[child]).
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int u = *it;
        double r = lambda;
        for (int c : t.children(u)) r *= 1.0 - st.up[c];
        st.up[u] = r / (1.0 + r);
    }
    // Top-down: down[u] = Pr[p | u-bar] combines p's upper factor with the
    // other children. (1 - up[w]) never vanishes, so dividing out is safe.
    for (int u : order) {
        const int p = t.parent(u);
        if (p < 0) continue;
        double r = lambda * (t.parent(p) >= 0 ? 1.0 - st.down[p] : 1.0);
        for (int w : t.children(p)) r *= 1.0 - st.up[w];
        r /= 1.0 - st.up[u];
        st.down[u] = r / (1.0 + r);
        st.beta[u] = -std::sqrt(st.up[u] * st.down[u]);
    }
    return st;
}

BetaSumsReport beta_sums_check(const HardcoreRecursionState& state, double delta) {
    if (!(delta > 0.0 && delta <= 0.1))
        throw ParamError("beta_sums_check: delta must lie in (0, 1/10]");
    const double lambda_cap = (1.0 - delta) * std::exp(2.0);
    if (!(state.lambda < lambda_cap))
        throw HypothesisFailed("beta_sums_check: lambda >= (1-delta) e^2");

    BetaSumsReport rep;
    rep.bound = 1.0 - delta / 3.0;
    const RootedTree& t = state.tree;
    for (int u = 0; u < t.n_vertices(); ++u) {
        double s = 0.0;
        for (int c : t.children(u)) s += state.beta[c] * state.beta[c];
        if (s > rep.max_sum) {
            rep.max_sum = s;
            rep.argmax_vertex = u;
        }
    }
    rep.ok = rep.max_sum <= rep.bound + 1e-12;
    return rep;
}

MatchingRatioLimit matching_ratio_limit(double lambda) {
    if (!(lambda > 0.0)) throw ParamError("matching_ratio_limit: lambda must be positive");
    MatchingRatioLimit out;
    out.fixed_point = 2.0 / (std::sqrt(1.0 + 4.0 * lambda) + 1.0);
    out.r = 1.0 - out.fixed_point;
    return out;
}

PathZ::PathZ(int max_edges, double lambda) {
    z_.resize(static_cast<size_t>(max_edges) + 3);
    z_[0] = 0.0;  // z(-2)
    z_[1] = 1.0;  // z(-1)
    for (int k = 0; k <= max_edges; ++k)
        z_[static_cast<size_t>(k) + 2] =
            z_[static_cast<size_t>(k) + 1] + lambda * z_[static_cast<size_t>(k)];
}

namespace {

// Pr[e_ell occupied | e_1 occupied] on C_n: removing e_1's endpoints leaves
// the path on vertices 3..n; occupying e_ell splits it again.
double cycle_pr_given_occ(int n, double lambda, int ell, const PathZ& z) {
    return lambda * z.at(ell - 4) * z.at(n - ell - 2) / z.at(n - 3);
}

// Pr[e_ell occupied | e_1 excluded]: the cycle minus e_1 is the (n-1)-edge path.
double cycle_pr_given_un(int n, double lambda, int ell, const PathZ& z) {
    return lambda * z.at(ell - 3) * z.at(n - ell - 1) / z.at(n - 1);
}

}  // namespace

double cycle_influence_entry(int n, double lambda, int ell) {
    if (n < 3) throw ParamError("cycle_influence_entry: need n >= 3");
    if (ell < 1 || ell > n) throw ParamError("cycle_influence_entry: bad ell");
    const int k = std::min(ell - 1, n - (ell - 1));  // cyclic separation
    if (k == 0) return 1.0;
    const int l = k + 1;
    PathZ z(n, lambda);
    return cycle_pr_given_occ(n, lambda, l, z) - cycle_pr_given_un(n, lambda, l, z);
}

Matrix cycle_influence_minor(int n, double lambda, int ell) {
    PathZ z(n, lambda);
    std::vector<double> by_sep(ell);
    for (int s = 0; s < ell; ++s) {
        const int k = std::min(s, n - s);
        if (k == 0) {
            by_sep[s] = 1.0;
        } else {
            const int l = k + 1;
            by_sep[s] = cycle_pr_given_occ(n, lambda, l, z) -
                        cycle_pr_given_un(n, lambda, l, z);
        }
    }
    Matrix m(ell, ell);
    for (int i = 0; i < ell; ++i)
        for (int j = 0; j < ell; ++j) m(i, j) = by_sep[std::abs(i - j)];
    return m;
}

CycleLimitReport cycle_influence_limit_check(int ell, double lambda, int n) {
    if (2 * ell > n) throw ParamError("cycle_influence_limit_check: need ell <= n/2");
    CycleLimitReport rep;
    rep.psi_value = cycle_influence_entry(n, lambda, ell);
    const double r = matching_ratio_limit(lambda).r;
    rep.limit = std::pow(-r, ell - 1);
    rep.deviation = std::abs(rep.psi_value - rep.limit);
    return rep;
}

CycleMinorBound long_cycle_lower_bound(double lambda, int n, int ell) {
    CycleMinorBound out;
    out.lambda_max_minor = eig_sym(cycle_influence_minor(n, lambda, ell)).lambda_max();
    out.target = std::sqrt(lambda) / 3.0;
    out.ok = out.lambda_max_minor >= out.target;
    return out;
}

ParallelCycleReport parallel_cycle_lower_bound(int delta, int n, int size_cap) {
    if (delta < 2 || delta % 2 != 0)
        throw ParamError("parallel_cycle_lower_bound: Delta must be even and >= 2");
    const int k = delta / 2;
    const long size = static_cast<long>(n) * k;
    if (size > size_cap)
        throw CapExceeded("parallel_cycle_lower_bound: matrix size beyond cap");

    const double lam0 = delta / 2.0;  // base-cycle fugacity; blown-up fugacity is 1
    PathZ z(n, lam0);
    const double pe = lam0 * z.at(n - 3) / (z.at(n - 1) + lam0 * z.at(n - 3));

    // Pairwise occupation on the base cycle by separation.
    std::vector<double> pij(n, 0.0);
    for (int s = 1; s < n; ++s) {
        const int kk = std::min(s, n - s);
        const int l = kk + 1;
        pij[s] = cycle_pr_given_occ(n, lam0, l, z) * pe;
    }

    // Influence entries of the k-transformed model from base-cycle joints:
    // copies of one edge exclude each other; distinct positions couple
    // through Pr[(j,t)|(i,s)] = Pr[j|i]/k and the complementary conditional.
    const int nn = static_cast<int>(size);
    Matrix psi(nn, nn);
    const double p_copy = pe / k;
    const double same_pos = -p_copy / (1.0 - p_copy);
    for (int i = 0; i < n; ++i) {
        for (int s = 0; s < k; ++s) {
            const int a = i * k + s;
            for (int j = 0; j < n; ++j) {
                for (int t = 0; t < k; ++t) {
                    const int b = j * k + t;
                    if (a == b) {
                        psi(a, b) = 1.0;
                    } else if (i == j) {
                        psi(a, b) = same_pos;
                    } else {
                        const int sep = std::min((i - j + n) % n, (j - i + n) % n);
                        const double occ = pij[sep] / pe / k;
                        const double un = (p_copy - pij[sep] / (static_cast<double>(k) * k)) /
                                          (1.0 - p_copy);
                        psi(a, b) = occ - un;
                    }
                }
            }
        }
    }

    ParallelCycleReport rep;
    rep.lambda_max = eig_sym(psi).lambda_max();
    rep.target = std::sqrt(static_cast<double>(delta)) / 10.0;

    // Base-cycle spectrum and the exact cor-eigenvalue invariance: all
    // marginals coincide on both sides, so Psi_cor eigenvalues are plain
    // rescalings of the Psi ones.
    rep.lambda_max_base = eig_sym(cycle_influence_minor(n, lam0, n)).lambda_max();
    const double cor_base = (1.0 - pe) * rep.lambda_max_base;
    const double cor_transformed = (1.0 - p_copy) * rep.lambda_max;
    rep.cor_deviation = std::abs(cor_base - cor_transformed);
    return rep;
}

double scalar_f(double lambda, int d, double x) {
    const double xd = std::pow(x, d);
    return d * lambda * (1.0 - x) * xd / (x + lambda * xd);
}

double scalar_g(double zeta, int d) {
    const double dd = static_cast<double>(d);
    const double base = (dd - 1.0) * (dd + zeta - 1.0) / (dd * dd);
    return (dd - 1.0) * (1.0 - zeta) * std::pow(base, -d) / dd;
}

ScalarScanReport hardcore_scalar_scan(double delta, int d_max, int grid_points) {
    if (!(delta > 0.0 && delta <= 0.1))
        throw ParamError("hardcore_scalar_scan: delta must lie in (0, 1/10]");
    const double lambda = (1.0 - delta) * std::exp(2.0);
    const double zeta = delta / 3.0;

    ScalarScanReport rep;
    rep.f_bound = 1.0 - zeta;
    rep.min_g_margin = std::numeric_limits<double>::infinity();
    for (int d = 1; d <= d_max; ++d) {
        for (int i = 1; i <= grid_points; ++i) {
            const double x = static_cast<double>(i) / (grid_points + 1);
            const double f = scalar_f(lambda, d, x);
            if (f > rep.max_f) {
                rep.max_f = f;
                rep.max_f_d = d;
                rep.max_f_x = x;
            }
            if (f > rep.f_bound) ++rep.violations;
        }
        if (d >= 2) {
            const double margin = scalar_g(zeta, d) - lambda;
            rep.min_g_margin = std::min(rep.min_g_margin, margin);
            if (margin < 0.0) ++rep.violations;
        }
    }
    rep.ok = rep.violations == 0;
    return rep;
}

namespace {

double structure_objective(const std::vector<double>& a, double lambda, double p) {
    double s = 0.0;
    for (double ai : a) s += ai / (1.0 - ai + lambda * p);
    return s;
}

}  // namespace

MaxStructureReport max_hardcore_structure_check(int n, double p, double lambda,
                                                int samples, uint64_t seed,
                                                double tolerance) {
    if (n < 1 || n > 5) throw ParamError("max_hardcore_structure_check: need n in [1,5]");
    if (!(p > 0.0 && p < 1.0)) throw ParamError("max_hardcore_structure_check: bad P");
    const double budget = -std::log(p);  // sum of x_i with 1-a_i = exp(-x_i)

    MaxStructureReport rep;
    for (int i = 1; i <= n; ++i) {
        std::vector<double> a(n, 0.0);
        const double ai = 1.0 - std::pow(p, 1.0 / i);
        for (int j = 0; j < i; ++j) a[j] = ai;
        rep.best_symmetric = std::max(rep.best_symmetric,
                                      structure_objective(a, lambda, p));
    }

    Rng rng(seed);
    std::vector<double> best_x(n, 0.0);
    best_x[0] = budget;
    double best = 0.0;
    auto eval_x = [&](const std::vector<double>& x) {
        std::vector<double> a(n);
        for (int i = 0; i < n; ++i) a[i] = 1.0 - std::exp(-x[i]);
        return structure_objective(a, lambda, p);
    };
    best = eval_x(best_x);
    for (int s = 0; s < samples; ++s) {
        // random split of the budget (exponential spacings)
        std::vector<double> x(n);
        double tot = 0.0;
        for (int i = 0; i < n; ++i) {
            x[i] = -std::log(std::max(rng.unit(), 1e-300));
            tot += x[i];
        }
        for (int i = 0; i < n; ++i) x[i] *= budget / tot;
        // occasionally zero out a random subset to explore the boundary
        if (s % 3 == 1) {
            int keep = 1 + rng.below_int(n);
            double moved = 0.0;
            for (int i = keep; i < n; ++i) {
                moved += x[i];
                x[i] = 0.0;
            }
            for (int i = 0; i < keep; ++i) x[i] += moved / keep;
        }
        const double v = eval_x(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    // local refinement: pairwise budget transfers with shrinking step
    double step = budget / 8.0;
    while (step > 1e-9) {
        bool improved = false;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i == j || best_x[i] < step) continue;
                std::vector<double> x = best_x;
                x[i] -= step;
                x[j] += step;
                const double v = eval_x(x);
                if (v > best) {
                    best = v;
                    best_x = x;
                    improved = true;
                }
            }
        }
        if (!improved) step /= 2.0;
    }
    rep.best_found = best;
    rep.slack = rep.best_symmetric - rep.best_found;
    rep.ok = rep.best_found <= rep.best_symmetric + tolerance;
    return rep;
}

double fixed_point(double lambda, int d) {
    if (!(lambda > 0.0)) throw ParamError("fixed_point: lambda must be positive");
    double lo = 0.0, hi = 1.0;
    // h(x) = x - lambda (1-x)^d is strictly increasing with h(0) < 0 < h(1)
    while (hi - lo > 1e-14) {
        const double mid = 0.5 * (lo + hi);
        const double h = mid - lambda * std::pow(1.0 - mid, d);
        if (h < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace silab

#include "silab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "silab/errors.hpp"
#include "silab/linalg.hpp"
#include "silab/rng.hpp"
#include "silab/tolerances.hpp"

namespace silab {

namespace {

// element-vs-element conflict table (shared endpoint / adjacency)
std::vector<char> conflict_table(const ModelInstance& m) {
    const int n = m.n_elements();
    std::vector<char> conflict(static_cast<size_t>(n) * n, 0);
    const Multigraph& g = m.graph();
    if (m.kind() == ModelKind::MonomerDimer) {
        for (int e = 0; e < n; ++e) {
            for (int f = e + 1; f < n; ++f) {
                auto [a, b] = g.edge(e);
                auto [c, d] = g.edge(f);
                if (a == c || a == d || b == c || b == d) {
                    conflict[static_cast<size_t>(e) * n + f] = 1;
                    conflict[static_cast<size_t>(f) * n + e] = 1;
                }
            }
        }
    } else {
        for (const auto& [u, v] : g.edges()) {
            conflict[static_cast<size_t>(u) * n + v] = 1;
            conflict[static_cast<size_t>(v) * n + u] = 1;
        }
    }
    return conflict;
}

struct StateIndex {
    const GibbsOracle* oracle;
    int find(std::span<const int> cfg) const {
        int lo = 0, hi = oracle->size() - 1;
        while (lo <= hi) {
            int mid = (lo + hi) / 2;
            auto c = oracle->config(mid);
            if (std::lexicographical_compare(c.begin(), c.end(), cfg.begin(), cfg.end()))
                lo = mid + 1;
            else if (std::lexicographical_compare(cfg.begin(), cfg.end(), c.begin(),
                                                  c.end()))
                hi = mid - 1;
            else
                return mid;
        }
        return -1;
    }
};

}  // namespace

GlauberChain build_chain(const ModelInstance& m, long config_cap) {
    GlauberChain chain{enumerate_support(m, config_cap), {}, {}, {}};
    const GibbsOracle& oracle = chain.support;
    const int n_states = oracle.size();
    const int n = m.n_elements();
    for (int i = 0; i < n; ++i)
        if (!m.is_pinned(i)) chain.sites.push_back(i);
    if (chain.sites.empty()) throw ParamError("build_chain: no unpinned elements");

    chain.pi.resize(n_states);
    for (int s = 0; s < n_states; ++s) chain.pi[s] = oracle.weight(s) / oracle.z();

    auto conflict = conflict_table(m);
    StateIndex index{&oracle};
    const double site_prob = 1.0 / chain.sites.size();

    chain.p = Matrix(n_states, n_states);
    std::vector<int> buf;
    for (int s = 0; s < n_states; ++s) {
        auto cfg = oracle.config(s);
        for (int u : chain.sites) {
            const bool occupied = std::binary_search(cfg.begin(), cfg.end(), u);
            bool can_add = true;
            if (!occupied) {
                for (int e : cfg)
                    if (conflict[static_cast<size_t>(u) * n + e]) {
                        can_add = false;
                        break;
                    }
            }
            if (!occupied && !can_add) {
                // occupied move has zero measure: stay unoccupied
                chain.p(s, s) += site_prob;
                continue;
            }
            // both branches valid; the conditional only sees lambda_u
            const double p_occ = m.fugacity()[u] / (1.0 + m.fugacity()[u]);
            int s_occ, s_un;
            if (occupied) {
                s_occ = s;
                buf.assign(cfg.begin(), cfg.end());
                buf.erase(std::find(buf.begin(), buf.end(), u));
                s_un = index.find(buf);
            } else {
                s_un = s;
                buf.assign(cfg.begin(), cfg.end());
                buf.insert(std::upper_bound(buf.begin(), buf.end(), u), u);
                s_occ = index.find(buf);
            }
            chain.p(s, s_occ) += site_prob * p_occ;
            chain.p(s, s_un) += site_prob * (1.0 - p_occ);
        }
    }
    return chain;
}

ChainResiduals chain_residuals(const GlauberChain& c) {
    ChainResiduals r;
    const int n = c.n_states();
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += c.p(i, j);
        r.row_sum = std::max(r.row_sum, std::abs(row - 1.0));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r.detailed_balance = std::max(
                r.detailed_balance, std::abs(c.pi[i] * c.p(i, j) - c.pi[j] * c.p(j, i)));
    std::vector<double> pi_p(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) pi_p[j] += c.pi[i] * c.p(i, j);
    for (int j = 0; j < n; ++j) r.stationarity += std::abs(pi_p[j] - c.pi[j]);
    return r;
}

namespace {

constexpr int kDenseGapCutoff = 600;

double gap_dense(const GlauberChain& c) {
    const int n = c.n_states();
    Matrix sym(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            sym(i, j) = std::sqrt(c.pi[i] / c.pi[j]) * c.p(i, j);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double avg = 0.5 * (sym(i, j) + sym(j, i));
            sym(i, j) = avg;
            sym(j, i) = avg;
        }
    auto spec = eig_sym(sym);
    return 1.0 - spec.eigenvalues[1];
}

// Sparse deflated power iteration: the symmetrized Glauber operator is an
// average of projections, hence PSD, so after removing the top eigenvector
// sqrt(pi) the Rayleigh quotient climbs to lambda_2.
double gap_sparse(const GlauberChain& c) {
    const int n = c.n_states();
    struct Entry { int col; double val; };
    std::vector<std::vector<Entry>> rows(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (c.p(i, j) == 0.0 && c.p(j, i) == 0.0) continue;
            const double a = std::sqrt(c.pi[i] / c.pi[j]) * c.p(i, j);
            const double b = std::sqrt(c.pi[j] / c.pi[i]) * c.p(j, i);
            rows[i].push_back({j, 0.5 * (a + b)});
        }
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = std::sqrt(c.pi[i]);

    std::vector<double> x(n), y(n);
    Rng rng(12345);
    for (int i = 0; i < n; ++i) x[i] = rng.symmetric_unit();
    auto orth = [&](std::vector<double>& w) {
        const double d = dot(w, v);
        for (int i = 0; i < n; ++i) w[i] -= d * v[i];
    };
    orth(x);
    double q_prev = -1.0;
    int stable = 0;
    for (int it = 0; it < 300000; ++it) {
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (const auto& e : rows[i]) s += e.val * x[e.col];
            y[i] = s;
        }
        orth(y);
        const double norm = std::sqrt(dot(y, y));
        if (norm == 0.0) return 1.0;
        for (int i = 0; i < n; ++i) y[i] /= norm;
        double q = 0.0;
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (const auto& e : rows[i]) s += e.val * y[e.col];
            q += y[i] * s;
        }
        x.swap(y);
        if (std::abs(q - q_prev) < 1e-14 * std::max(1.0, std::abs(q))) {
            if (++stable >= 5) return 1.0 - q;
        } else {
            stable = 0;
        }
        q_prev = q;
    }
    return 1.0 - q_prev;  // monotone from below; remaining error is < 1e-12
}

}  // namespace

double spectral_gap(const GlauberChain& c) {
    ChainResiduals r = chain_residuals(c);
    if (r.detailed_balance > 1e-12)
        throw NotReversible("spectral_gap: detailed balance residual too large");
    return c.n_states() <= kDenseGapCutoff ? gap_dense(c) : gap_sparse(c);
}

namespace {

double worst_start_tv(const Matrix& pt, const std::vector<double>& pi) {
    const int n = pt.rows();
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += std::abs(pt(i, j) - pi[j]);
        worst = std::max(worst, 0.5 * s);
    }
    return worst;
}

void renormalize_rows(Matrix& m) {
    for (int i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (int j = 0; j < m.cols(); ++j) s += m(i, j);
        for (int j = 0; j < m.cols(); ++j) m(i, j) /= s;
    }
}

}  // namespace

long mixing_time(const GlauberChain& c, double eps, long step_cap) {
    const int n = c.n_states();
    // t = 0: the identity
    double d0 = 0.0;
    for (int i = 0; i < n; ++i) d0 = std::max(d0, 1.0 - c.pi[i]);
    if (d0 < eps) return 0;

    // doubling phase: powers[k] = P^(2^k)
    std::vector<Matrix> powers{c.p};
    long t = 1;
    while (worst_start_tv(powers.back(), c.pi) >= eps) {
        if (t * 2 > step_cap) throw NoConvergence("mixing_time: step cap exceeded");
        Matrix sq = powers.back() * powers.back();
        renormalize_rows(sq);
        powers.push_back(std::move(sq));
        t *= 2;
    }
    if (t == 1) return 1;

    // binary search in (t/2, t]; TV from a worst start is nonincreasing in t
    long lo = t / 2 + 1, hi = t;
    while (lo < hi) {
        const long mid = lo + (hi - lo) / 2;
        Matrix acc = Matrix::identity(n);
        long bits = mid;
        for (size_t k = 0; bits != 0; ++k, bits >>= 1)
            if (bits & 1) {
                acc = acc * powers[k];
                renormalize_rows(acc);
            }
        if (worst_start_tv(acc, c.pi) < eps)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

namespace {

// Partition of the support by the configuration outside S.
std::vector<std::vector<int>> classes_off(const GibbsOracle& oracle,
                                          std::span<const int> s) {
    std::vector<char> in_s(oracle.n_elements(), 0);
    for (int e : s) in_s[e] = 1;
    std::map<std::vector<int>, std::vector<int>> groups;
    std::vector<int> key;
    for (int idx = 0; idx < oracle.size(); ++idx) {
        key.clear();
        for (int e : oracle.config(idx))
            if (!in_s[e]) key.push_back(e);
        groups[key].push_back(idx);
    }
    std::vector<std::vector<int>> out;
    out.reserve(groups.size());
    for (auto& [k, v] : groups) out.push_back(std::move(v));
    return out;
}

}  // namespace

double local_variance(const GibbsOracle& oracle, std::span<const double> f,
                      std::span<const int> s) {
    double acc = 0.0;
    for (const auto& cls : classes_off(oracle, s)) {
        double w = 0.0, m1 = 0.0, m2 = 0.0;
        for (int idx : cls) {
            w += oracle.weight(idx);
            m1 += oracle.weight(idx) * f[idx];
            m2 += oracle.weight(idx) * f[idx] * f[idx];
        }
        acc += w * (m2 / w - (m1 / w) * (m1 / w));
    }
    return acc / oracle.z();
}

double variance(const GibbsOracle& oracle, std::span<const double> f) {
    double m1 = 0.0, m2 = 0.0;
    for (int idx = 0; idx < oracle.size(); ++idx) {
        const double w = oracle.weight(idx) / oracle.z();
        m1 += w * f[idx];
        m2 += w * f[idx] * f[idx];
    }
    return m2 - m1 * m1;
}

std::vector<double> mu_projection(const GibbsOracle& oracle, std::span<const double> f,
                                  std::span<const int> s) {
    std::vector<double> out(oracle.size(), 0.0);
    for (const auto& cls : classes_off(oracle, s)) {
        double w = 0.0, m1 = 0.0;
        for (int idx : cls) {
            w += oracle.weight(idx);
            m1 += oracle.weight(idx) * f[idx];
        }
        for (int idx : cls) out[idx] = m1 / w;
    }
    return out;
}

double total_variance_check(const GibbsOracle& oracle, std::span<const double> f,
                            std::span<const int> s) {
    const double lhs = variance(oracle, f);
    auto proj = mu_projection(oracle, f, s);
    const double rhs = local_variance(oracle, f, s) + variance(oracle, proj);
    return std::abs(lhs - rhs);
}

double tensorization_constant(const ModelInstance& m, long config_cap) {
    GibbsOracle oracle = enumerate_support(m, config_cap);
    const int ns = oracle.size();
    if (ns < 2) throw SingularMatrix("tensorization_constant: trivial support");

    std::vector<double> pi(ns);
    for (int i = 0; i < ns; ++i) pi[i] = oracle.weight(i) / oracle.z();

    Matrix a(ns, ns);
    for (int i = 0; i < ns; ++i) {
        a(i, i) += pi[i];
        for (int j = 0; j < ns; ++j) a(i, j) -= pi[i] * pi[j];
    }

    Matrix b(ns, ns);
    std::vector<int> site(1);
    for (int u = 0; u < m.n_elements(); ++u) {
        if (m.is_pinned(u)) continue;
        site[0] = u;
        for (const auto& cls : classes_off(oracle, site)) {
            double w = 0.0;
            for (int idx : cls) w += oracle.weight(idx);
            for (int idx : cls) b(idx, idx) += oracle.weight(idx) / oracle.z();
            for (int i1 : cls)
                for (int i2 : cls)
                    b(i1, i2) -=
                        oracle.weight(i1) * oracle.weight(i2) / (oracle.z() * w);
        }
    }

    // Helmert basis of the complement of constants (both forms kill 1).
    const int k = ns - 1;
    Matrix v(ns, k);
    for (int c = 1; c <= k; ++c) {
        const double norm = std::sqrt(static_cast<double>(c) * (c + 1));
        for (int r = 0; r < c; ++r) v(r, c - 1) = 1.0 / norm;
        v(c, c - 1) = -static_cast<double>(c) / norm;
    }
    Matrix vt = transpose(v);
    Matrix ar = vt * (a * v);
    Matrix br = vt * (b * v);
    // the projected forms are symmetric up to matmul roundoff
    auto symmetrize = [](Matrix& m) {
        for (int i = 0; i < m.rows(); ++i)
            for (int j = i + 1; j < m.cols(); ++j) {
                const double avg = 0.5 * (m(i, j) + m(j, i));
                m(i, j) = avg;
                m(j, i) = avg;
            }
    };
    symmetrize(ar);
    symmetrize(br);

    auto spec_b = eig_sym(br, true);
    const double scale = std::max(1.0, spec_b.lambda_max());
    if (spec_b.lambda_min() <= 1e-12 * scale)
        throw SingularMatrix("tensorization_constant: local form singular off constants");
    // br^{-1/2} from its spectrum
    Matrix b_inv_root(k, k);
    const Matrix& evec = *spec_b.eigenvectors;
    for (int t = 0; t < k; ++t) {
        const double r = 1.0 / std::sqrt(spec_b.eigenvalues[t]);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) b_inv_root(i, j) += r * evec(i, t) * evec(j, t);
    }
    Matrix prod = b_inv_root * (ar * b_inv_root);
    symmetrize(prod);
    return eig_sym(prod).lambda_max();
}

TensorizationCheckReport matching_tensorization_check(const RootedTree& tree,
                                                      const std::vector<double>& fugacity,
                                                      int trials, uint64_t seed,
                                                      long config_cap) {
    const Multigraph& g = tree.graph();
    auto deg = g.degrees();
    if (deg[tree.root()] != 1)
        throw HypothesisFailed("matching_tensorization_check: root degree must be 1");
    for (double f : fugacity)
        if (f > 0.1)
            throw HypothesisFailed("matching_tensorization_check: fugacity above 0.1");

    ModelInstance m(ModelKind::MonomerDimer, g, fugacity);
    GibbsOracle oracle = enumerate_support(m, config_cap);
    const int ns = oracle.size();

    // per-edge class partition, reused across trials
    std::vector<std::vector<std::vector<int>>> classes(g.n_edges());
    std::vector<int> site(1);
    for (int e = 0; e < g.n_edges(); ++e) {
        site[0] = e;
        classes[e] = classes_off(oracle, site);
    }
    std::vector<double> coeff(g.n_edges());
    for (int e = 0; e < g.n_edges(); ++e) {
        auto [u, v] = g.edge(e);
        const bool leaf_edge = deg[u] == 1 || deg[v] == 1;
        coeff[e] = (leaf_edge ? 3.0 : 6.0) * (1.0 + fugacity[e]);
    }

    TensorizationCheckReport rep;
    rep.trials = trials;
    rep.worst_slack = std::numeric_limits<double>::infinity();
    Rng rng(seed);
    std::vector<double> f(ns);
    for (int t = 0; t < trials; ++t) {
        for (double& x : f) x = rng.symmetric_unit();
        const double lhs = variance(oracle, f);
        double rhs = 0.0;
        for (int e = 0; e < g.n_edges(); ++e) {
            double acc = 0.0;
            for (const auto& cls : classes[e]) {
                double w = 0.0, m1 = 0.0, m2 = 0.0;
                for (int idx : cls) {
                    w += oracle.weight(idx);
                    m1 += oracle.weight(idx) * f[idx];
                    m2 += oracle.weight(idx) * f[idx] * f[idx];
                }
                acc += w * (m2 / w - (m1 / w) * (m1 / w));
            }
            rhs += coeff[e] * acc / oracle.z();
        }
        rep.worst_slack = std::min(rep.worst_slack, rhs - lhs);
    }
    rep.ok = rep.worst_slack >= -default_tols().verification;
    return rep;
}

}  // namespace silab

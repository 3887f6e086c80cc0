#include "silab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "silab/errors.hpp"

namespace silab {

namespace {

double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

}  // namespace

SymmetricSpectrum eig_sym(const Matrix& a, bool want_vectors, const Tolerances& tols) {
    const int n = a.rows();
    if (n == 0) throw ParamError("eig_sym: empty matrix");
    if (n != a.cols()) throw NotSymmetric("eig_sym: matrix not square");

    double scale = std::max(1.0, max_abs(a));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(a(i, j) - a(j, i)) > tols.symmetry * scale)
                throw NotSymmetric("eig_sym: asymmetry beyond tolerance");

    Matrix w(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w(i, j) = 0.5 * (a(i, j) + a(j, i));

    Matrix v = Matrix::identity(n);
    const double fnorm = std::max(frobenius_norm(w), 1e-300);
    const double target = tols.convergence * fnorm;
    // rotations on entries this small cannot push the off-diagonal Frobenius
    // norm above a hundredth of the target, so skip them
    const double skip = 0.01 * target / n;

    const int max_sweeps = 100;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(w) < target) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = w(p, q);
                if (std::abs(apq) <= skip) continue;
                const double app = w(p, p);
                const double aqq = w(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                w(p, p) = app - t * apq;
                w(q, q) = aqq + t * apq;
                w(p, q) = 0.0;
                w(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = w(k, p);
                    const double akq = w(k, q);
                    w(k, p) = akp - s * (akq + tau * akp);
                    w(p, k) = w(k, p);
                    w(k, q) = akq + s * (akp - tau * akq);
                    w(q, k) = w(k, q);
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = vkp - s * (vkq + tau * vkp);
                    v(k, q) = vkq + s * (vkp - tau * vkq);
                }
            }
        }
    }
    if (sweep == max_sweeps && off_diagonal_norm(w) >= target)
        throw NoConvergence("eig_sym: Jacobi sweeps exhausted");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return w(i, i) > w(j, j); });

    SymmetricSpectrum out;
    out.eigenvalues.resize(n);
    for (int i = 0; i < n; ++i) out.eigenvalues[i] = w(order[i], order[i]);
    if (want_vectors) {
        Matrix vs(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) vs(i, j) = v(i, order[j]);
        out.eigenvectors = std::move(vs);
    }
    return out;
}

Matrix invert(const Matrix& a, const Tolerances& tols) {
    const int n = a.rows();
    if (n != a.cols()) throw SingularMatrix("invert: matrix not square");
    Matrix w = a;
    Matrix inv = Matrix::identity(n);
    const double scale = std::max(max_abs(a), 1e-300);

    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(w(r, col)) > std::abs(w(piv, col))) piv = r;
        if (std::abs(w(piv, col)) <= tols.pivot * scale)
            throw SingularMatrix("invert: pivot below threshold");
        if (piv != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(w(piv, j), w(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        }
        const double d = w(col, col);
        for (int j = 0; j < n; ++j) {
            w(col, j) /= d;
            inv(col, j) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = w(r, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                w(r, j) -= f * w(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

namespace {

// LU with partial pivoting; returns false when a pivot is exactly unusable.
bool lu_factor(Matrix& w, std::vector<int>& perm, int& sign, double pivot_floor) {
    const int n = w.rows();
    perm.resize(n);
    std::iota(perm.begin(), perm.end(), 0);
    sign = 1;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(w(r, col)) > std::abs(w(piv, col))) piv = r;
        if (std::abs(w(piv, col)) <= pivot_floor) return false;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(w(piv, j), w(col, j));
            std::swap(perm[piv], perm[col]);
            sign = -sign;
        }
        for (int r = col + 1; r < n; ++r) {
            w(r, col) /= w(col, col);
            const double f = w(r, col);
            if (f == 0.0) continue;
            for (int j = col + 1; j < n; ++j) w(r, j) -= f * w(col, j);
        }
    }
    return true;
}

}  // namespace

double lu_det(const Matrix& a) {
    Matrix w = a;
    std::vector<int> perm;
    int sign = 1;
    if (!lu_factor(w, perm, sign, 0.0)) return 0.0;
    double d = sign;
    for (int i = 0; i < w.rows(); ++i) d *= w(i, i);
    return d;
}

std::vector<double> lu_solve(const Matrix& a, const std::vector<double>& b,
                             const Tolerances& tols) {
    const int n = a.rows();
    Matrix w = a;
    std::vector<int> perm;
    int sign = 1;
    const double scale = std::max(max_abs(a), 1e-300);
    if (!lu_factor(w, perm, sign, tols.pivot * scale))
        throw SingularMatrix("lu_solve: pivot below threshold");
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) {
        double s = b[perm[i]];
        for (int j = 0; j < i; ++j) s -= w(i, j) * y[j];
        y[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = y[i];
        for (int j = i + 1; j < n; ++j) s -= w(i, j) * y[j];
        y[i] = s / w(i, i);
    }
    return y;
}

Matrix sherman_morrison(const Matrix& lambda_inv, const std::vector<double>& x,
                        const std::vector<double>& y, const Tolerances& tols) {
    const int n = lambda_inv.rows();
    std::vector<double> lx = lambda_inv * x;
    // y^T Lambda^{-1}: row vector
    std::vector<double> yl(n, 0.0);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += y[i] * lambda_inv(i, j);
        yl[j] = s;
    }
    const double denom = 1.0 + dot(y, lx);
    if (std::abs(denom) <= tols.pivot)
        throw DenominatorZero("sherman_morrison: 1 + y^T Lambda^{-1} x vanishes");
    Matrix out = lambda_inv;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) -= lx[i] * yl[j] / denom;
    return out;
}

double det_rank_one_update(const Matrix& lambda, const std::vector<double>& x,
                           const std::vector<double>& y, const Tolerances& tols) {
    std::vector<double> lx = lu_solve(lambda, x, tols);
    return lu_det(lambda) * (1.0 + dot(y, lx));
}

InterlacingReport interlacing_check(const Matrix& a, int drop_index,
                                    const Tolerances& tols) {
    const int n = a.rows();
    Matrix b(n - 1, n - 1);
    for (int i = 0, bi = 0; i < n; ++i) {
        if (i == drop_index) continue;
        for (int j = 0, bj = 0; j < n; ++j) {
            if (j == drop_index) continue;
            b(bi, bj) = a(i, j);
            ++bj;
        }
        ++bi;
    }
    auto sa = eig_sym(a, false, tols).eigenvalues;
    auto sb = eig_sym(b, false, tols).eigenvalues;

    InterlacingReport rep;
    double worst = 0.0;
    for (int i = 0; i < n - 1; ++i) {
        worst = std::min(worst, sa[i] - sb[i]);      // lambda_i(A) >= lambda_i(B)
        worst = std::min(worst, sb[i] - sa[i + 1]);  // lambda_i(B) >= lambda_{i+1}(A)
    }
    rep.worst_violation = worst;
    rep.ok = worst >= -tols.verification;
    return rep;
}

WeylReport weyl_check(const Matrix& a, const Matrix& b, const Tolerances& tols) {
    const int n = a.rows();
    auto sa = eig_sym(a, false, tols).eigenvalues;
    auto sb = eig_sym(b, false, tols).eigenvalues;
    auto sab = eig_sym(a + b, false, tols).eigenvalues;

    WeylReport rep;
    double worst = 0.0;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            const double sum = sa[i - 1] + sb[j - 1];
            if (i + j - 1 <= n) worst = std::min(worst, sum - sab[i + j - 2]);
            if (i + j - n >= 1) worst = std::min(worst, sab[i + j - n - 1] - sum);
        }
    }
    rep.worst_violation = worst;
    rep.ok = worst >= -tols.verification;
    return rep;
}

Matrix spd_sqrt(const Matrix& a, const Tolerances& tols) {
    auto spec = eig_sym(a, true, tols);
    const int n = a.rows();
    const Matrix& v = *spec.eigenvectors;
    Matrix out(n, n);
    for (int k = 0; k < n; ++k) {
        double ev = spec.eigenvalues[k];
        if (ev < -tols.verification)
            throw SingularMatrix("spd_sqrt: matrix has a negative eigenvalue");
        const double r = std::sqrt(std::max(ev, 0.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out(i, j) += r * v(i, k) * v(j, k);
    }
    return out;
}

double power_iteration_lambda_max(const Matrix& a, double tol, int max_iters) {
    const int n = a.rows();
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = 1.0 + 0.5 * std::sin(i + 1.0);
    double prev = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        std::vector<double> y = a * x;
        double norm = std::sqrt(dot(y, y));
        if (norm == 0.0) return 0.0;
        for (double& v : y) v /= norm;
        const double q = dot(y, a * y) / dot(y, y);
        x = std::move(y);
        if (it > 2 && std::abs(q - prev) <= tol * std::max(1.0, std::abs(q))) return q;
        prev = q;
    }
    throw NoConvergence("power_iteration_lambda_max: no convergence");
}

}  // namespace silab

#ifndef SILAB_LINALG_HPP
#define SILAB_LINALG_HPP

#include <optional>
#include <vector>

#include "silab/matrix.hpp"
#include "silab/tolerances.hpp"

namespace silab {

// Eigenvalues sorted descending; eigenvectors (when requested) are the
// orthonormal columns of V in the same order.
struct SymmetricSpectrum {
    std::vector<double> eigenvalues;
    std::optional<Matrix> eigenvectors;

    double lambda_max() const { return eigenvalues.front(); }
    double lambda_min() const { return eigenvalues.back(); }
};

// Full spectrum of a symmetric matrix by cyclic-by-row Jacobi rotations.
// A may deviate from symmetry by at most tols.symmetry (it is averaged);
// larger deviations throw NotSymmetric. Throws NoConvergence after 100 sweeps.
SymmetricSpectrum eig_sym(const Matrix& a, bool want_vectors = false,
                          const Tolerances& tols = default_tols());

// Gauss-Jordan inverse with partial pivoting. Throws SingularMatrix.
Matrix invert(const Matrix& a, const Tolerances& tols = default_tols());

// LU determinant (partial pivoting); returns 0 when a pivot vanishes.
double lu_det(const Matrix& a);

// Solve a x = b by LU with partial pivoting. Throws SingularMatrix.
std::vector<double> lu_solve(const Matrix& a, const std::vector<double>& b,
                             const Tolerances& tols = default_tols());

// (Lambda + x y^T)^{-1} from Lambda^{-1} by the rank-one update formula.
// Throws DenominatorZero when |1 + y^T Lambda^{-1} x| <= tols.pivot.
Matrix sherman_morrison(const Matrix& lambda_inv, const std::vector<double>& x,
                        const std::vector<double>& y,
                        const Tolerances& tols = default_tols());

// det(Lambda + x y^T) = det(Lambda) (1 + y^T Lambda^{-1} x).
double det_rank_one_update(const Matrix& lambda, const std::vector<double>& x,
                           const std::vector<double>& y,
                           const Tolerances& tols = default_tols());

struct InterlacingReport {
    bool ok = false;
    double worst_violation = 0.0;  // most negative slack in the chain
};

// Checks the eigenvalue interlacing chain between A and the principal
// submatrix obtained by deleting row/column drop_index.
InterlacingReport interlacing_check(const Matrix& a, int drop_index,
                                    const Tolerances& tols = default_tols());

struct WeylReport {
    bool ok = false;
    double worst_violation = 0.0;
};

// Checks lambda_{i+j-1}(A+B) <= lambda_i(A) + lambda_j(B) <= lambda_{i+j-n}(A+B)
// over all index pairs where the subscripts are valid.
WeylReport weyl_check(const Matrix& a, const Matrix& b,
                      const Tolerances& tols = default_tols());

// Symmetric square root of a positive semidefinite matrix (eigenvalues are
// clamped at zero below -tols.verification, which throws).
Matrix spd_sqrt(const Matrix& a, const Tolerances& tols = default_tols());

// Dominant eigenvalue of a general square matrix by power iteration with a
// deterministic start. Intended as a cross-check path, not the main solver.
double power_iteration_lambda_max(const Matrix& a, double tol = 1e-10,
                                  int max_iters = 100000);

}  // namespace silab

#endif

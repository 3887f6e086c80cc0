#include <doctest.h>

#include <array>
#include <cmath>

#include "silab/errors.hpp"
#include "silab/linalg.hpp"
#include "silab/rng.hpp"

using namespace silab;

namespace {

Matrix random_symmetric(int n, Rng& rng, double scale = 1.0) {
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double v = scale * rng.symmetric_unit();
            a(i, j) = v;
            a(j, i) = v;
        }
    return a;
}

Matrix random_spd(int n, Rng& rng) {
    Matrix a = random_symmetric(n, rng);
    Matrix b = transpose(a) * a;
    for (int i = 0; i < n; ++i) b(i, i) += 0.5;
    return b;
}

// Roots of the characteristic polynomial of a 3x3 symmetric matrix by the
// trigonometric cubic formula; the independent oracle for eig_sym.
std::array<double, 3> cubic_eigs(const Matrix& a) {
    const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    const double q = (a(0, 0) + a(1, 1) + a(2, 2)) / 3.0;
    const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                      (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    Matrix b(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b(i, j) = (a(i, j) - (i == j ? q : 0.0)) / p;
    const double detb = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                        b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                        b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    double r = detb / 2.0;
    r = std::min(1.0, std::max(-1.0, r));
    const double phi = std::acos(r) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
    const double e2 = 3.0 * q - e1 - e3;
    return {e1, e2, e3};
}

}  // namespace

TEST_CASE("eig_sym on the identity") {
    auto spec = eig_sym(Matrix::identity(5));
    for (double ev : spec.eigenvalues) CHECK(ev == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eig_sym on the swap matrix") {
    Matrix a(2, 2);
    a(0, 1) = 1.0;
    a(1, 0) = 1.0;
    auto spec = eig_sym(a);
    CHECK(spec.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(spec.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("eig_sym matches the cubic-formula oracle on random 3x3") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Matrix a = random_symmetric(3, rng);
        auto spec = eig_sym(a);
        auto expect = cubic_eigs(a);
        for (int i = 0; i < 3; ++i)
            CHECK(spec.eigenvalues[i] == doctest::Approx(expect[i]).epsilon(1e-10));
    }
}

TEST_CASE("eig_sym reconstructs the matrix from its spectrum") {
    Rng rng(11);
    Matrix a = random_symmetric(8, rng);
    auto spec = eig_sym(a, true);
    const Matrix& v = *spec.eigenvectors;
    Matrix rebuilt(8, 8);
    for (int k = 0; k < 8; ++k)
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                rebuilt(i, j) += spec.eigenvalues[k] * v(i, k) * v(j, k);
    CHECK(max_abs(rebuilt - a) < 1e-9 * std::max(1.0, max_abs(a)));
}

TEST_CASE("eig_sym trace and determinant identities") {
    Rng rng(13);
    Matrix a = random_symmetric(6, rng);
    auto spec = eig_sym(a);
    double trace = 0.0, sum = 0.0, prod = 1.0;
    for (int i = 0; i < 6; ++i) trace += a(i, i);
    for (double ev : spec.eigenvalues) {
        sum += ev;
        prod *= ev;
    }
    CHECK(sum == doctest::Approx(trace).epsilon(1e-9));
    CHECK(prod == doctest::Approx(lu_det(a)).epsilon(1e-8));
}

TEST_CASE("eig_sym rejects asymmetric input") {
    Matrix a(2, 2);
    a(0, 1) = 1.0;
    a(1, 0) = 0.5;
    CHECK_THROWS_AS(eig_sym(a), NotSymmetric);
}

TEST_CASE("invert on closed forms") {
    CHECK(max_abs(invert(Matrix::identity(4)) - Matrix::identity(4)) < 1e-15);

    Matrix a(2, 2);
    a(0, 0) = 1.0;
    a(0, 1) = -0.5;
    a(1, 0) = -0.5;
    a(1, 1) = 1.0;
    Matrix inv = invert(a);
    CHECK(inv(0, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(inv(0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

    Matrix d(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = 4.0;
    Matrix dinv = invert(d);
    CHECK(dinv(0, 0) == doctest::Approx(0.5));
    CHECK(dinv(1, 1) == doctest::Approx(0.25));
}

TEST_CASE("invert round trip on random matrices") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix a = random_spd(5, rng);
        CHECK(max_abs(a * invert(a) - Matrix::identity(5)) < 1e-9);
    }
}

TEST_CASE("invert throws on singular input") {
    Matrix a(2, 2);
    a(0, 0) = 1.0;
    a(0, 1) = 2.0;
    a(1, 0) = 2.0;
    a(1, 1) = 4.0;
    CHECK_THROWS_AS(invert(a), SingularMatrix);
}

TEST_CASE("sherman_morrison closed forms") {
    // x = 0 leaves the inverse unchanged
    Matrix id = Matrix::identity(3);
    std::vector<double> zero(3, 0.0), e1{1.0, 0.0, 0.0};
    CHECK(max_abs(sherman_morrison(id, zero, e1) - id) < 1e-15);

    // Lambda = I, x = y = e_1: (1,1) entry becomes 1/2
    Matrix m = sherman_morrison(id, e1, e1);
    CHECK(m(0, 0) == doctest::Approx(0.5));
    CHECK(m(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("sherman_morrison matches the generic inverse") {
    Rng rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix lam = random_spd(4, rng);
        std::vector<double> x(4), y(4);
        for (int i = 0; i < 4; ++i) {
            x[i] = rng.symmetric_unit();
            y[i] = rng.symmetric_unit();
        }
        Matrix updated = lam;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) updated(i, j) += x[i] * y[j];
        Matrix via_formula = sherman_morrison(invert(lam), x, y);
        CHECK(max_abs(via_formula - invert(updated)) < 1e-9);
        CHECK(max_abs(via_formula * updated - Matrix::identity(4)) < 1e-9);
    }
}

TEST_CASE("det_rank_one_update") {
    Matrix i2 = Matrix::identity(2);
    std::vector<double> e1{1.0, 0.0}, zero{0.0, 0.0};
    CHECK(det_rank_one_update(i2, e1, e1) == doctest::Approx(2.0));
    CHECK(det_rank_one_update(i2, zero, e1) == doctest::Approx(1.0));

    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix lam = random_spd(4, rng);
        std::vector<double> x(4), y(4);
        for (int i = 0; i < 4; ++i) {
            x[i] = rng.symmetric_unit();
            y[i] = rng.symmetric_unit();
        }
        Matrix updated = lam;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) updated(i, j) += x[i] * y[j];
        const double expect = lu_det(updated);
        CHECK(det_rank_one_update(lam, x, y) ==
              doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("interlacing on diagonal and random matrices") {
    Matrix d(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = 2.0;
    d(2, 2) = 1.0;
    CHECK(interlacing_check(d, 1).ok);

    Rng rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix a = random_symmetric(5, rng);
        for (int drop = 0; drop < 5; ++drop) CHECK(interlacing_check(a, drop).ok);
    }
}

TEST_CASE("weyl inequalities") {
    Rng rng(31);
    Matrix a = random_symmetric(4, rng);
    Matrix zero(4, 4);
    CHECK(weyl_check(a, zero).ok);
    Matrix neg = zero - a;
    CHECK(weyl_check(a, neg).ok);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix x = random_symmetric(4, rng);
        Matrix y = random_symmetric(4, rng);
        CHECK(weyl_check(x, y).ok);
    }
}

TEST_CASE("spd_sqrt squares back") {
    Rng rng(37);
    Matrix a = random_spd(5, rng);
    Matrix r = spd_sqrt(a);
    CHECK(max_abs(r * r - a) < 1e-9 * std::max(1.0, max_abs(a)));
}

TEST_CASE("power iteration agrees with eig_sym on SPD") {
    Rng rng(41);
    Matrix a = random_spd(6, rng);
    CHECK(power_iteration_lambda_max(a) ==
          doctest::Approx(eig_sym(a).lambda_max()).epsilon(1e-8));
}

namespace {

// Pivoted Cholesky attempt: the classical positive-definiteness probe.
bool cholesky_succeeds(Matrix a) {
    const int n = a.rows();
    for (int k = 0; k < n; ++k) {
        if (a(k, k) <= 1e-12) return false;
        const double root = std::sqrt(a(k, k));
        for (int i = k; i < n; ++i) a(i, k) /= root;
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j <= i; ++j) a(i, j) -= a(i, k) * a(j, k);
    }
    return true;
}

}  // namespace

TEST_CASE("positive spectrum iff Cholesky succeeds") {
    Rng rng(43);
    int definite = 0, indefinite = 0;
    for (int trial = 0; trial < 60; ++trial) {
        Matrix a = random_symmetric(5, rng);
        // mix in clearly definite cases
        if (trial % 3 == 0)
            for (int i = 0; i < 5; ++i) a(i, i) += 4.0;
        const bool positive = eig_sym(a).lambda_min() > 1e-10;
        CHECK(positive == cholesky_succeeds(a));
        (positive ? definite : indefinite) += 1;
    }
    CHECK(definite > 5);
    CHECK(indefinite > 5);
}

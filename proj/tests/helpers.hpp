#pragma once

// Shared fixtures and independent oracles for the test suites.  Oracles here
// never call into the code paths they check: quadratic formulas, bisection
// on frozen polynomials, 2x2 eigenvalue arithmetic in plain doubles.

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <dynmix/catalog.hpp>
#include <dynmix/correlation.hpp>
#include <dynmix/mixing.hpp>

namespace testutil {

using namespace dynmix;

inline GaussMat gmat2(int a, int b, int c, int d) {
    GaussMat m(2, 2);
    m(0, 0) = GaussInt(a);
    m(0, 1) = GaussInt(b);
    m(1, 0) = GaussInt(c);
    m(1, 1) = GaussInt(d);
    return m;
}

inline GaussMat gmat2c(std::array<std::array<int, 2>, 4> entries) {
    GaussMat m(2, 2);
    m(0, 0) = GaussInt(entries[0][0], entries[0][1]);
    m(0, 1) = GaussInt(entries[1][0], entries[1][1]);
    m(1, 0) = GaussInt(entries[2][0], entries[2][1]);
    m(1, 1) = GaussInt(entries[3][0], entries[3][1]);
    return m;
}

inline TorusAutomorphism cat_map() { return torus_from_matrix(gmat2(2, 1, 1, 1), "cat-map"); }
inline TorusAutomorphism torus_3211() { return torus_from_matrix(gmat2(3, 2, 1, 1), "torus-3211"); }
// A = [[1+i, 1], [i, 1]], det = 1
inline TorusAutomorphism torus_gauss() {
    return torus_from_matrix(gmat2c({{{1, 1}, {1, 0}, {0, 1}, {1, 0}}}), "torus-gauss");
}
inline TorusAutomorphism torus_shear() { return torus_from_matrix(gmat2(1, 1, 0, 1), "shear"); }
inline TorusAutomorphism torus_identity() { return torus_from_matrix(gmat2(1, 0, 0, 1), "id"); }

inline CRatMat rat_diag(std::vector<Rat> d) {
    CRatMat m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = CRat(d[i]);
    return m;
}

inline CRatMat int_mat(std::vector<std::vector<long>> rows) {
    CRatMat m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[0].size(); ++j) m(i, j) = CRat(Rat(rows[i][j]));
    return m;
}

// Toy full actions: all off-diagonal blocks are the 1x1 identity and the
// diagonal blocks are supplied; satisfies every HodgeAction invariant.
inline HodgeAction toy_hodge(int k, std::vector<CRatMat> diagonal) {
    HodgeAction h(k, "toy");
    for (int r = 0; r <= k; ++r)
        for (int s = 0; s <= k; ++s) h.block(r, s) = CRatMat::identity(1);
    for (int q = 0; q <= k; ++q) h.block(q, q) = diagonal[q];
    h.validate();
    return h;
}

// degrees (1, 2, 4, 1) with the inverse profile reversed
inline HodgeAction toy_k3_1241() {
    return toy_hodge(3, {CRatMat::identity(1), rat_diag({Rat(2), make_rat(1, 4)}),
                         rat_diag({Rat(4), make_rat(1, 2)}), CRatMat::identity(1)});
}

// plateau degrees (1, 2, 2, 1): product-with-identity shape
inline HodgeAction toy_k3_plateau() {
    return toy_hodge(3, {CRatMat::identity(1), rat_diag({Rat(2), make_rat(1, 2)}),
                         rat_diag({Rat(2), make_rat(1, 2)}), CRatMat::identity(1)});
}

// ---------------------------------------------------------------------------
// oracles
// ---------------------------------------------------------------------------

// larger root modulus of x^2 + bx + c with real roots
inline double quadratic_radius_oracle(double b, double c) {
    const double disc = b * b - 4 * c;
    if (disc >= 0) {
        const double r1 = (-b + std::sqrt(disc)) / 2;
        const double r2 = (-b - std::sqrt(disc)) / 2;
        return std::max(std::abs(r1), std::abs(r2));
    }
    return std::sqrt(c);
}

// eigenvalues of a 2x2 complex matrix by the quadratic formula
inline std::array<std::complex<double>, 2> eig2_oracle(std::complex<double> a,
                                                       std::complex<double> b,
                                                       std::complex<double> c,
                                                       std::complex<double> d) {
    const std::complex<double> tr = a + d;
    const std::complex<double> det = a * d - b * c;
    const std::complex<double> disc = std::sqrt(tr * tr - 4.0 * det);
    return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

// descending coefficients of Lehmer's degree-10 polynomial
inline std::vector<double> lehmer_coeffs() {
    return {1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};
}

// bisection on Lehmer's polynomial, independent of the certified machinery
inline double lehmer_root_oracle() {
    auto eval = [](double x) {
        double v = 0;
        for (double c : lehmer_coeffs()) v = v * x + c;
        return v;
    };
    double lo = 1.17, hi = 1.18;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (eval(lo) * eval(mid) <= 0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

// random words in the elementary generators of the unit-determinant
// Gaussian matrices; entries kept small
inline GaussMat random_torus_matrix(std::mt19937_64& rng) {
    const std::array<GaussInt, 8> small{GaussInt(1),     GaussInt(-1),   GaussInt(0, 1),
                                        GaussInt(0, -1), GaussInt(1, 1), GaussInt(1, -1),
                                        GaussInt(2),     GaussInt(-2)};
    for (;;) {
        GaussMat m = GaussMat::identity(2);
        const int len = 2 + static_cast<int>(rng() % 4);
        for (int w = 0; w < len; ++w) {
            GaussMat e = GaussMat::identity(2);
            const GaussInt& g = small[rng() % small.size()];
            switch (rng() % 3) {
                case 0: e(0, 1) = g; break;
                case 1: e(1, 0) = g; break;
                default: {
                    const std::array<GaussInt, 3> units{GaussInt(-1), GaussInt(0, 1),
                                                        GaussInt(0, -1)};
                    e(0, 0) = units[rng() % units.size()];
                    break;
                }
            }
            m = m * e;
        }
        bool bounded = true;
        for (std::size_t i = 0; i < 2 && bounded; ++i)
            for (std::size_t j = 0; j < 2 && bounded; ++j)
                bounded = abs(m(i, j).re) <= 60 && abs(m(i, j).im) <= 60;
        if (bounded) return m;
    }
}

}  // namespace testutil

#pragma once

// Exact polynomial arithmetic over Q(i): characteristic polynomials by
// fraction-free elimination, Euclidean gcd, Yun squarefree splitting,
// rational-root extraction.  This is the exact half of the spectral
// certification; the floating half lives in roots.hpp.

#include <optional>
#include <utility>
#include <vector>

#include "dynmix/matrix.hpp"

namespace dynmix {

// Coefficients in ascending order; invariant: leading coefficient nonzero
// (the zero polynomial has an empty coefficient list).
struct Poly {
    std::vector<CRat> c;

    Poly() = default;
    explicit Poly(std::vector<CRat> coeffs) : c(std::move(coeffs)) { trim(); }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const CRat& leading() const { return c.back(); }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }

    CRat eval(const CRat& x) const {
        CRat v(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
        return v;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const CRat& s);
Poly poly_derivative(const Poly& a);
// Quotient and remainder over the field Q(i); divisor must be nonzero.
std::pair<Poly, Poly> poly_divrem(const Poly& a, const Poly& b);
Poly poly_monic(const Poly& a);
// Monic gcd by the Euclidean algorithm (gcd(0,0) := 0).
Poly poly_gcd(Poly a, Poly b);
// p(-x)
Poly poly_negate_arg(const Poly& a);
// x^deg * p(1/x)
Poly poly_reciprocal(const Poly& a);

bool poly_is_real(const Poly& a);
// x^d p(1/x) == +-p, the root multiset is closed under z -> 1/z.
bool poly_is_self_reciprocal(const Poly& a);

// Yun's algorithm: pairwise-coprime squarefree factors with multiplicities,
// product of f^m equal to monic(p).
std::vector<std::pair<Poly, int>> squarefree_decompose(const Poly& p);

// Exact rational roots of a squarefree real polynomial with the cofactor
// after dividing them out.  Divisor enumeration of the end coefficients is
// capped; a miss only downgrades later tie decisions, never falsifies them.
struct RationalRoots {
    std::vector<Rat> roots;
    Poly cofactor;
};
RationalRoots extract_rational_roots(const Poly& squarefree_real);

// Evaluate p at a square matrix (Horner).
CRatMat poly_eval_matrix(const Poly& p, const CRatMat& m);

// Monic characteristic polynomial det(xI - M).  Exact: the matrix is
// cleared to Z[i], det(yI - N) is evaluated by Bareiss elimination at
// integer points and interpolated, then rescaled back.
Poly charpoly(const CRatMat& m);

}  // namespace dynmix

#pragma once

// Exact scalar types: big integers, rationals, Gaussian integers Z[i] and
// Gaussian rationals Q(i).  Everything upstream of the floating-point
// certification layer works in these types.

#include <gmpxx.h>

#include <cstdlib>
#include <string>

#include "dynmix/errors.hpp"

namespace dynmix {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(Int num, Int den) {
    Rat q(std::move(num), std::move(den));
    q.canonicalize();
    return q;
}

// "p/q" with q > 0 canonical; plain "p" accepted on input.
Rat rat_from_string(const std::string& s);
std::string rat_to_string(const Rat& q);

// Gaussian integer a + b·i.
struct GaussInt {
    Int re, im;

    GaussInt() : re(0), im(0) {}
    GaussInt(int v) : re(v), im(0) {}  // NOLINT: implicit by design (scalar literals)
    GaussInt(Int r, Int i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }

    GaussInt operator-() const { return GaussInt(-re, -im); }
    GaussInt& operator+=(const GaussInt& o) { re += o.re; im += o.im; return *this; }
    GaussInt& operator-=(const GaussInt& o) { re -= o.re; im -= o.im; return *this; }

    friend GaussInt operator+(const GaussInt& a, const GaussInt& b) {
        return GaussInt(a.re + b.re, a.im + b.im);
    }
    friend GaussInt operator-(const GaussInt& a, const GaussInt& b) {
        return GaussInt(a.re - b.re, a.im - b.im);
    }
    friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
        return GaussInt(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend bool operator==(const GaussInt& a, const GaussInt& b) {
        return a.re == b.re && a.im == b.im;
    }
};

inline GaussInt conj(const GaussInt& z) { return GaussInt(z.re, -z.im); }
inline Int gauss_norm(const GaussInt& z) { return z.re * z.re + z.im * z.im; }
inline bool is_gauss_unit(const GaussInt& z) { return gauss_norm(z) == 1; }

// Exact quotient a/b in Z[i]; throws if b does not divide a.
GaussInt gauss_exact_div(const GaussInt& a, const GaussInt& b);

// Gaussian rational a + b·i, a field.
struct CRat {
    Rat re, im;

    CRat() : re(0), im(0) {}
    CRat(int v) : re(v), im(0) {}  // NOLINT: implicit by design
    CRat(Rat r) : re(std::move(r)), im(0) {}  // NOLINT
    CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    explicit CRat(const GaussInt& g) : re(g.re), im(g.im) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    CRat operator-() const { return CRat(-re, -im); }
    CRat& operator+=(const CRat& o) { re += o.re; im += o.im; return *this; }
    CRat& operator-=(const CRat& o) { re -= o.re; im -= o.im; return *this; }
    CRat& operator*=(const CRat& o) { *this = *this * o; return *this; }

    friend CRat operator+(const CRat& a, const CRat& b) { return CRat(a.re + b.re, a.im + b.im); }
    friend CRat operator-(const CRat& a, const CRat& b) { return CRat(a.re - b.re, a.im - b.im); }
    friend CRat operator*(const CRat& a, const CRat& b) {
        return CRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend CRat operator/(const CRat& a, const CRat& b) {
        Rat n = b.re * b.re + b.im * b.im;
        if (n == 0) throw hypothesis_error("division by zero in Q(i)");
        return CRat((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
    }
    friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
};

inline CRat conj(const CRat& z) { return CRat(z.re, -z.im); }
inline Rat squared_modulus(const CRat& z) { return z.re * z.re + z.im * z.im; }

// conj() on plain scalars so generic matrix code can conjugate uniformly.
inline Int conj(const Int& x) { return x; }
inline Rat conj(const Rat& x) { return x; }
inline double conj(double x) { return x; }

}  // namespace dynmix

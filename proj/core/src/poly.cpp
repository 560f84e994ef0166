#include "dynmix/poly.hpp"

#include <algorithm>
#include <cassert>

namespace dynmix {

// ---------------------------------------------------------------------------
// exact matrix kernels
// ---------------------------------------------------------------------------

CRatMat invert(const CRatMat& m) {
    if (!m.square()) throw hypothesis_error("inverse of non-square matrix");
    const std::size_t n = m.rows();
    CRatMat w = m;
    CRatMat inv = CRatMat::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && w(piv, col).is_zero()) ++piv;
        if (piv == n) throw hypothesis_error("singular block (automorphism invariant violated)");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(w(piv, j), w(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        }
        const CRat d = w(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            w(col, j) = w(col, j) / d;
            inv(col, j) = inv(col, j) / d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || w(r, col).is_zero()) continue;
            const CRat f = w(r, col);
            for (std::size_t j = 0; j < n; ++j) {
                w(r, j) -= f * w(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

GaussInt bareiss_det(GaussMat w) {
    if (!w.square()) throw hypothesis_error("determinant of non-square matrix");
    const std::size_t n = w.rows();
    if (n == 0) return GaussInt(1);
    int sign = 1;
    GaussInt prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w(k, k).is_zero()) {
            std::size_t piv = k + 1;
            while (piv < n && w(piv, k).is_zero()) ++piv;
            if (piv == n) return GaussInt(0);
            for (std::size_t j = k; j < n; ++j) std::swap(w(k, j), w(piv, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                w(i, j) = gauss_exact_div(w(i, j) * w(k, k) - w(i, k) * w(k, j), prev);
        prev = w(k, k);
    }
    GaussInt d = w(n - 1, n - 1);
    return sign > 0 ? d : -d;
}

namespace {

// Clear denominators: returns D >= 1 and N = D*M over Z[i].
std::pair<Int, GaussMat> clear_denominators(const CRatMat& m) {
    Int d(1);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), m(i, j).re.get_den().get_mpz_t());
            mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), m(i, j).im.get_den().get_mpz_t());
        }
    GaussMat n(m.rows(), m.cols());
    const Rat dq{d};
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rat re = m(i, j).re * dq;
            Rat im = m(i, j).im * dq;
            assert(re.get_den() == 1 && im.get_den() == 1);
            n(i, j) = GaussInt(re.get_num(), im.get_num());
        }
    return {d, n};
}

}  // namespace

CRat det(const CRatMat& m) {
    auto [d, n] = clear_denominators(m);
    GaussInt dn = bareiss_det(n);
    Int dk(1);
    mpz_pow_ui(dk.get_mpz_t(), d.get_mpz_t(), m.rows());
    return CRat(make_rat(dn.re, dk), make_rat(dn.im, dk));
}

// ---------------------------------------------------------------------------
// polynomial arithmetic
// ---------------------------------------------------------------------------

Poly poly_add(const Poly& a, const Poly& b) {
    std::vector<CRat> c(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < a.c.size()) c[i] += a.c[i];
        if (i < b.c.size()) c[i] += b.c[i];
    }
    return Poly(std::move(c));
}

Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, poly_scale(b, CRat(-1))); }

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<CRat> c(a.c.size() + b.c.size() - 1);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
    return Poly(std::move(c));
}

Poly poly_scale(const Poly& a, const CRat& s) {
    std::vector<CRat> c(a.c.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.c[i] * s;
    return Poly(std::move(c));
}

Poly poly_derivative(const Poly& a) {
    if (a.degree() <= 0) return Poly();
    std::vector<CRat> c(a.c.size() - 1);
    for (std::size_t i = 1; i < a.c.size(); ++i) c[i - 1] = a.c[i] * CRat(static_cast<int>(i));
    return Poly(std::move(c));
}

std::pair<Poly, Poly> poly_divrem(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw hypothesis_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(), a};
    std::vector<CRat> rem = a.c;
    std::vector<CRat> quo(a.c.size() - b.c.size() + 1);
    const CRat lead = b.leading();
    for (int k = static_cast<int>(quo.size()) - 1; k >= 0; --k) {
        CRat q = rem[k + b.degree()] / lead;
        quo[k] = q;
        if (q.is_zero()) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) rem[k + j] -= q * b.c[j];
    }
    return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly poly_monic(const Poly& a) {
    if (a.is_zero()) return a;
    return poly_scale(a, CRat(1) / a.leading());
}

Poly poly_gcd(Poly a, Poly b) {
    a = poly_monic(a);
    b = poly_monic(b);
    while (!b.is_zero()) {
        Poly r = poly_divrem(a, b).second;
        a = std::move(b);
        b = poly_monic(r);
    }
    return a;
}

Poly poly_negate_arg(const Poly& a) {
    std::vector<CRat> c = a.c;
    for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
    return Poly(std::move(c));
}

Poly poly_reciprocal(const Poly& a) {
    std::vector<CRat> c(a.c.rbegin(), a.c.rend());
    return Poly(std::move(c));
}

bool poly_is_real(const Poly& a) {
    for (const auto& x : a.c)
        if (!x.is_real()) return false;
    return true;
}

bool poly_is_self_reciprocal(const Poly& a) {
    if (a.is_zero()) return false;
    Poly r = poly_reciprocal(a);
    return r == a || r == poly_scale(a, CRat(-1));
}

std::vector<std::pair<Poly, int>> squarefree_decompose(const Poly& p0) {
    Poly p = poly_monic(p0);
    if (p.degree() <= 0) return {};
    Poly dp = poly_derivative(p);
    Poly u = poly_gcd(p, dp);
    if (u.degree() == 0) return {{p, 1}};
    Poly v = poly_divrem(p, u).first;
    Poly w = poly_divrem(dp, u).first;
    std::vector<std::pair<Poly, int>> out;
    int i = 1;
    while (v.degree() > 0) {
        Poly z = poly_sub(w, poly_derivative(v));
        Poly g = poly_gcd(v, z);
        if (g.degree() > 0) out.emplace_back(g, i);
        v = poly_divrem(v, g).first;
        w = poly_divrem(z, g).first;
        ++i;
    }
    return out;
}

// ---------------------------------------------------------------------------
// rational roots
// ---------------------------------------------------------------------------

namespace {

// Divisors of |n| by trial division.  A composite cofactor beyond the trial
// bound is kept as a single factor; the list may then be incomplete, which
// can only hide a candidate, never admit a wrong one.
std::vector<Int> divisors_capped(Int n, std::size_t cap) {
    n = abs(n);
    std::vector<Int> divs{Int(1)};
    if (n <= 1) return divs;
    std::vector<std::pair<Int, unsigned>> factors;
    Int rest = n;
    auto push_factor = [&](const Int& f) {
        unsigned e = 0;
        while (mpz_divisible_p(rest.get_mpz_t(), f.get_mpz_t())) {
            mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), f.get_mpz_t());
            ++e;
        }
        if (e) factors.emplace_back(f, e);
    };
    push_factor(Int(2));
    for (Int f(3); f * f <= rest && f < 1000000; f += 2) push_factor(f);
    if (rest > 1) factors.emplace_back(rest, 1);
    for (const auto& [f, e] : factors) {
        const std::size_t base = divs.size();
        Int pw(1);
        for (unsigned k = 1; k <= e && divs.size() < cap; ++k) {
            pw *= f;
            for (std::size_t i = 0; i < base && divs.size() < cap; ++i) divs.push_back(divs[i] * pw);
        }
        if (divs.size() >= cap) break;
    }
    std::sort(divs.begin(), divs.end());
    divs.erase(std::unique(divs.begin(), divs.end()), divs.end());
    return divs;
}

}  // namespace

RationalRoots extract_rational_roots(const Poly& f0) {
    RationalRoots out;
    out.cofactor = f0;
    if (!poly_is_real(f0) || f0.degree() < 1) return out;

    // root at zero first
    while (out.cofactor.degree() >= 1 && out.cofactor.c.front().is_zero()) {
        out.roots.emplace_back(0);
        std::vector<CRat> shifted(out.cofactor.c.begin() + 1, out.cofactor.c.end());
        out.cofactor = Poly(std::move(shifted));
    }
    if (out.cofactor.degree() < 1) return out;

    // primitive integer form
    Int den(1);
    for (const auto& x : out.cofactor.c)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.re.get_den().get_mpz_t());
    std::vector<Int> a(out.cofactor.c.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        Rat v = out.cofactor.c[i].re * Rat(den);
        a[i] = v.get_num();
    }
    Int content(0);
    for (const auto& x : a) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
    if (content > 1)
        for (auto& x : a) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), content.get_mpz_t());

    const std::size_t kDivCap = 128;
    std::vector<Int> num_divs = divisors_capped(a.front(), kDivCap);
    std::vector<Int> den_divs = divisors_capped(a.back(), kDivCap);

    std::vector<Rat> candidates;
    candidates.reserve(num_divs.size() * den_divs.size() * 2);
    for (const auto& p : num_divs)
        for (const auto& q : den_divs) {
            Rat r = make_rat(p, q);
            candidates.push_back(r);
            candidates.push_back(-r);
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (const auto& r : candidates) {
        if (out.cofactor.degree() < 1) break;
        if (!out.cofactor.eval(CRat(r)).is_zero()) continue;
        out.roots.push_back(r);
        Poly lin(std::vector<CRat>{CRat(-r), CRat(1)});
        auto [q, rem] = poly_divrem(out.cofactor, lin);
        assert(rem.is_zero());
        out.cofactor = std::move(q);
    }
    return out;
}

CRatMat poly_eval_matrix(const Poly& p, const CRatMat& m) {
    if (!m.square()) throw hypothesis_error("polynomial of non-square matrix");
    const std::size_t n = m.rows();
    CRatMat acc(n, n);
    if (p.is_zero()) return acc;
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) {
        acc = acc * m;
        for (std::size_t i = 0; i < n; ++i) acc(i, i) += *it;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// characteristic polynomial
// ---------------------------------------------------------------------------

Poly charpoly(const CRatMat& m) {
    if (!m.square()) throw hypothesis_error("characteristic polynomial of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return Poly(std::vector<CRat>{CRat(1)});
    if (n == 1) return Poly(std::vector<CRat>{-m(0, 0), CRat(1)});

    auto [d, nm] = clear_denominators(m);

    // q(y) = det(yI - N) sampled at y = 0..n
    std::vector<CRat> values(n + 1);
    for (std::size_t pt = 0; pt <= n; ++pt) {
        GaussMat w(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                GaussInt v = -nm(i, j);
                if (i == j) v.re += static_cast<long>(pt);
                w(i, j) = v;
            }
        values[pt] = CRat(bareiss_det(w));
    }

    // Newton divided differences on the integer grid
    std::vector<CRat> dd = values;
    std::vector<CRat> coeff_newton(n + 1);
    coeff_newton[0] = dd[0];
    for (std::size_t level = 1; level <= n; ++level) {
        for (std::size_t i = 0; i + level <= n; ++i)
            dd[i] = (dd[i + 1] - dd[i]) / CRat(static_cast<int>(level));
        coeff_newton[level] = dd[0];
    }

    // expand Newton form: q = sum_k coeff_newton[k] * prod_{i<k} (y - i)
    Poly q(std::vector<CRat>{coeff_newton[0]});
    Poly basis(std::vector<CRat>{CRat(1)});
    for (std::size_t k = 1; k <= n; ++k) {
        basis = poly_mul(basis, Poly(std::vector<CRat>{CRat(-static_cast<int>(k - 1)), CRat(1)}));
        q = poly_add(q, poly_scale(basis, coeff_newton[k]));
    }
    if (q.degree() != static_cast<int>(n) || !(q.leading() == CRat(1)))
        throw std::logic_error("charpoly interpolation lost monicity");

    // chi_M(x) = sum_k q_k D^{k-n} x^k
    std::vector<CRat> chi(n + 1);
    Int dpow(1);
    for (std::size_t k = 0; k <= n; ++k) {
        const std::size_t idx = n - k;  // D^{-(n-idx)} with growing power of D
        if (q.c[idx].re.get_den() != 1 || q.c[idx].im.get_den() != 1)
            throw std::logic_error("charpoly of the cleared matrix is not integral");
        chi[idx] = CRat(make_rat(q.c[idx].re.get_num(), dpow),
                        make_rat(q.c[idx].im.get_num(), dpow));
        dpow *= d;
    }
    return Poly(std::move(chi));
}

}  // namespace dynmix

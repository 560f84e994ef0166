#include "dynmix/roots.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>

namespace dynmix {

namespace {

// ---------------------------------------------------------------------------
// high-precision complex scratch arithmetic (gmp floats, explicit precision)
// ---------------------------------------------------------------------------

struct HC {
    mpf_class re, im;
};

HC mk_hc(unsigned prec) { return HC{mpf_class(0, prec), mpf_class(0, prec)}; }

// Copy at explicit precision.  Plain copy-assignment of mpf_class keeps the
// destination's precision, so copying a high-precision value into a
// default-constructed member silently truncates it to 64 bits.
HC hc_copy(const HC& a, unsigned prec) {
    HC r = mk_hc(prec);
    r.re = a.re;
    r.im = a.im;
    return r;
}

mpf_class mpf_copy(const mpf_class& a, unsigned prec) {
    mpf_class r(0, prec);
    r = a;
    return r;
}

HC hc_from_crat(const CRat& c, unsigned prec) {
    HC z = mk_hc(prec);
    mpf_set_q(z.re.get_mpf_t(), c.re.get_mpq_t());
    mpf_set_q(z.im.get_mpf_t(), c.im.get_mpq_t());
    return z;
}

HC hc_add(const HC& a, const HC& b, unsigned prec) {
    HC r = mk_hc(prec);
    r.re = a.re + b.re;
    r.im = a.im + b.im;
    return r;
}

HC hc_sub(const HC& a, const HC& b, unsigned prec) {
    HC r = mk_hc(prec);
    r.re = a.re - b.re;
    r.im = a.im - b.im;
    return r;
}

HC hc_mul(const HC& a, const HC& b, unsigned prec) {
    HC r = mk_hc(prec);
    r.re = a.re * b.re - a.im * b.im;
    r.im = a.re * b.im + a.im * b.re;
    return r;
}

HC hc_div(const HC& a, const HC& b, unsigned prec) {
    HC r = mk_hc(prec);
    mpf_class n(0, prec);
    n = b.re * b.re + b.im * b.im;
    r.re = (a.re * b.re + a.im * b.im) / n;
    r.im = (a.im * b.re - a.re * b.im) / n;
    return r;
}

mpf_class hc_abs(const HC& a, unsigned prec) {
    mpf_class n(0, prec);
    n = a.re * a.re + a.im * a.im;
    mpf_class r(0, prec);
    r = sqrt(n);
    return r;
}

bool hc_is_zero(const HC& a) { return a.re == 0 && a.im == 0; }

mpf_class eps_at(unsigned prec, int shift) {
    mpf_class e(0, prec);
    mpf_set_ui(e.get_mpf_t(), 1);
    mpf_div_2exp(e.get_mpf_t(), e.get_mpf_t(), prec - shift);
    return e;  // 2^{-(prec-shift)}
}

// Horner evaluation with a running magnitude sum; the returned err bounds
// |computed - exact| including coefficient-conversion rounding.
struct EvalR {
    HC v;
    mpf_class err;
};

EvalR eval_with_error(const std::vector<HC>& c, const HC& z, unsigned prec) {
    const std::size_t n = c.size();
    HC v = mk_hc(prec);
    mpf_class s(0, prec), az(0, prec);
    az = hc_abs(z, prec);
    for (std::size_t k = n; k-- > 0;) {
        v = hc_add(hc_mul(v, z, prec), c[k], prec);
        s = s * az + hc_abs(c[k], prec);
    }
    EvalR r{v, mpf_class(0, prec)};
    r.err = s * eps_at(prec, 8) * static_cast<unsigned long>(4 * n + 8);
    return r;
}

// ---------------------------------------------------------------------------
// Aberth-Ehrlich iteration with residual disks
// ---------------------------------------------------------------------------

struct NumericRoot {
    HC z;
    mpf_class radius;  // certified: a root lies within radius of z
};

struct AberthOut {
    std::vector<NumericRoot> roots;
    bool certified = false;
};

std::vector<HC> poly_to_hc(const Poly& p, unsigned prec) {
    std::vector<HC> c(p.c.size());
    for (std::size_t i = 0; i < p.c.size(); ++i) c[i] = hc_from_crat(p.c[i], prec);
    return c;
}

AberthOut aberth_solve(const Poly& monic, unsigned prec,
                       const std::vector<std::complex<double>>& warm) {
    const int m = monic.degree();
    AberthOut out;
    if (m < 1) return out;

    std::vector<HC> c = poly_to_hc(monic, prec);
    Poly dmonic = poly_derivative(monic);
    std::vector<HC> dc = poly_to_hc(dmonic, prec);

    // Cauchy bound for initial circle
    double cb = 0.0;
    for (int k = 0; k < m; ++k) {
        double a = std::abs(monic.c[k].re.get_d()) + std::abs(monic.c[k].im.get_d());
        cb = std::max(cb, a);
    }
    const double r0 = 1.0 + cb;

    std::vector<HC> z(m, mk_hc(prec));
    if (static_cast<int>(warm.size()) == m) {
        for (int i = 0; i < m; ++i) {
            z[i].re = warm[i].real();
            z[i].im = warm[i].imag();
        }
    } else {
        for (int i = 0; i < m; ++i) {
            const double th = 2.0 * M_PI * (i + 0.25) / m + 0.61;
            z[i].re = r0 * std::cos(th);
            z[i].im = r0 * std::sin(th);
        }
    }

    mpf_class tol = eps_at(prec, static_cast<int>(prec) - static_cast<int>(0.72 * prec));
    const int max_iters = 64 + 48 * m;
    for (int iter = 0; iter < max_iters; ++iter) {
        mpf_class worst(0, prec);
        for (int i = 0; i < m; ++i) {
            EvalR pv = eval_with_error(c, z[i], prec);
            if (hc_is_zero(pv.v)) continue;
            EvalR dv = eval_with_error(dc, z[i], prec);
            HC w = mk_hc(prec);
            if (hc_is_zero(dv.v)) {
                // sitting on a critical point: nudge
                w.re = eps_at(prec, static_cast<int>(prec) - 2);
                w.im = 0;
            } else {
                HC newton = hc_div(pv.v, dv.v, prec);
                HC s = mk_hc(prec);
                for (int j = 0; j < m; ++j) {
                    if (j == i) continue;
                    HC d = hc_sub(z[i], z[j], prec);
                    if (hc_is_zero(d)) {
                        d.re = eps_at(prec, static_cast<int>(prec) - 2);
                    }
                    HC inv = hc_div(HC{mpf_class(1, prec), mpf_class(0, prec)}, d, prec);
                    s = hc_add(s, inv, prec);
                }
                HC denom = hc_sub(HC{mpf_class(1, prec), mpf_class(0, prec)},
                                  hc_mul(newton, s, prec), prec);
                w = hc_is_zero(denom) ? newton : hc_div(newton, denom, prec);
            }
            z[i] = hc_sub(z[i], w, prec);
            mpf_class aw = hc_abs(w, prec);
            mpf_class scale(0, prec);
            scale = hc_abs(z[i], prec) + 1;
            aw /= scale;
            if (aw > worst) worst = aw;
        }
        if (worst < tol) break;
    }

    // residual disks: a root lies within m*|p(z)|/|p'(z)| of z
    out.roots.reserve(m);
    out.certified = true;
    for (int i = 0; i < m; ++i) {
        EvalR pv = eval_with_error(c, z[i], prec);
        EvalR dv = eval_with_error(dc, z[i], prec);
        mpf_class pnum(0, prec), pden(0, prec);
        pnum = hc_abs(pv.v, prec) + pv.err;
        pden = hc_abs(dv.v, prec) - dv.err;
        NumericRoot nr{hc_copy(z[i], prec), mpf_class(0, prec)};
        if (pden <= 0) {
            out.certified = false;
            nr.radius = 1;
        } else {
            nr.radius = pnum * static_cast<unsigned long>(m) / pden;
        }
        out.roots.push_back(std::move(nr));
    }
    return out;
}

// ---------------------------------------------------------------------------
// enclosure workspace
// ---------------------------------------------------------------------------

struct WorkRoot {
    HC z;
    mpf_class radius;
    int multiplicity = 1;
    int factor_index = -1;
    std::optional<Rat> rational;  // exact real rational root
};

struct Workspace {
    unsigned prec = 0;
    std::vector<WorkRoot> roots;

    // rounding slack for disk geometry at this precision
    mpf_class slack(const mpf_class& scale) const {
        mpf_class s(0, prec);
        s = (scale + 1) * eps_at(prec, 12);
        return s;
    }

    bool disjoint() const {
        for (std::size_t i = 0; i < roots.size(); ++i)
            for (std::size_t j = i + 1; j < roots.size(); ++j) {
                mpf_class d(0, prec);
                d = hc_abs(hc_sub(roots[i].z, roots[j].z, prec), prec);
                mpf_class rr(0, prec);
                rr = roots[i].radius + roots[j].radius + slack(d);
                if (!(d > rr)) return false;
            }
        return true;
    }
};

// index of the unique enclosure within reach of disk (c, r); -1 if not unique.
// The intersection test is slack-inclusive, so a borderline tangency shows
// up as an ambiguous (two-disk) hit rather than a confident wrong one.
int unique_hit(const Workspace& ws, const HC& c, const mpf_class& r) {
    int hit = -1;
    for (std::size_t j = 0; j < ws.roots.size(); ++j) {
        mpf_class d(0, ws.prec);
        d = hc_abs(hc_sub(c, ws.roots[j].z, ws.prec), ws.prec);
        mpf_class rr(0, ws.prec);
        rr = r + ws.roots[j].radius + ws.slack(d);
        if (d <= rr) {
            if (hit >= 0) return -1;
            hit = static_cast<int>(j);
        }
    }
    return hit;
}

// image of the disk (c, r) under z -> 1/z; requires |c| > r
bool invert_disk(const Workspace& ws, const HC& c, const mpf_class& r, HC& out_c,
                 mpf_class& out_r) {
    const unsigned prec = ws.prec;
    mpf_class n2(0, prec);
    n2 = c.re * c.re + c.im * c.im - r * r;
    if (!(n2 > 0)) return false;
    out_c = mk_hc(prec);
    out_c.re = c.re / n2;
    out_c.im = -c.im / n2;
    out_r = mpf_class(0, prec);
    out_r = r / n2 + (hc_abs(out_c, prec) + 1) * eps_at(prec, 12);
    return true;
}

// Certify that selected main roots are roots of aux (aux's roots are a
// subset of the main root set).  Returns per-root flags.
std::vector<bool> match_aux_roots(const Poly& aux, const Workspace& ws) {
    std::vector<bool> marked(ws.roots.size(), false);
    if (aux.degree() < 1) return marked;

    // exact rational roots of aux match exact rational enclosures;
    // numeric aux roots match through disks
    RationalRoots rr = extract_rational_roots(aux);
    for (const auto& r : rr.roots) {
        for (std::size_t i = 0; i < ws.roots.size(); ++i)
            if (ws.roots[i].rational && *ws.roots[i].rational == r) marked[i] = true;
    }
    if (rr.cofactor.degree() >= 1) {
        AberthOut nr = aberth_solve(poly_monic(rr.cofactor), ws.prec, {});
        if (!nr.certified) return std::vector<bool>(ws.roots.size(), false);
        for (const auto& e : nr.roots) {
            int hit = unique_hit(ws, e.z, e.radius);
            if (hit >= 0) marked[hit] = true;
        }
    }
    return marked;
}

double round_down(const mpf_class& x) {
    double d = x.get_d();  // truncates toward zero
    d = std::nextafter(d, -std::numeric_limits<double>::infinity());
    return std::nextafter(d, -std::numeric_limits<double>::infinity());
}

double round_up(const mpf_class& x) {
    double d = x.get_d();
    d = std::nextafter(d, std::numeric_limits<double>::infinity());
    return std::nextafter(d, std::numeric_limits<double>::infinity());
}

}  // namespace

// ---------------------------------------------------------------------------
// certificate queries
// ---------------------------------------------------------------------------

double RootCertificate::max_modulus_lo() const {
    double v = 0;
    for (const auto& r : roots) v = std::max(v, r.modulus.lo);
    return v;
}

double RootCertificate::max_modulus_hi() const {
    double v = 0;
    for (const auto& r : roots) v = std::max(v, r.modulus.hi);
    return v;
}

std::vector<int> RootCertificate::dominant_candidates() const {
    const double floor = max_modulus_lo();
    std::vector<int> c;
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (roots[i].modulus.hi >= floor) c.push_back(static_cast<int>(i));
    return c;
}

bool RootCertificate::equal_modulus_certified(int i, int j) const {
    if (i == j) return true;
    const auto& a = roots[i];
    const auto& b = roots[j];
    if (a.conj_partner == j || a.neg_partner == j) return true;
    if (b.conj_partner == i || b.neg_partner == i) return true;
    if (a.modulus.exact && b.modulus.exact && *a.modulus.exact == *b.modulus.exact) return true;
    return false;
}

std::optional<std::vector<int>> RootCertificate::dominant_set() const {
    std::vector<int> c = dominant_candidates();
    if (c.size() <= 1) return c;
    // union-find closure over pairwise certificates
    std::vector<int> parent(roots.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (equal_modulus_certified(static_cast<int>(i), static_cast<int>(j)))
                parent[find(static_cast<int>(i))] = find(static_cast<int>(j));
    const int cls = find(c[0]);
    for (int i : c)
        if (find(i) != cls) return std::nullopt;
    return c;
}

// ---------------------------------------------------------------------------
// the isolation pipeline
// ---------------------------------------------------------------------------

RootCertificate certify_roots(const Poly& p0, double rel_target) {
    if (p0.is_zero()) throw hypothesis_error("roots of the zero polynomial");
    Poly p = poly_monic(p0);
    RootCertificate cert;
    cert.degree = p.degree();
    cert.real_coeffs = poly_is_real(p);
    cert.self_reciprocal = poly_is_self_reciprocal(p);
    if (p.degree() == 0) return cert;
    cert.factors = squarefree_decompose(p);

    // per-factor split into exact rational roots and a numeric cofactor
    struct FactorWork {
        std::vector<Rat> rational;
        Poly cofactor;
        int multiplicity;
    };
    std::vector<FactorWork> fw;
    for (std::size_t f = 0; f < cert.factors.size(); ++f) {
        RationalRoots rr = extract_rational_roots(cert.factors[f].first);
        fw.push_back({rr.roots, rr.cofactor, cert.factors[f].second});
    }

    const unsigned ladder[] = {256, 512, 1024};
    std::vector<std::vector<std::complex<double>>> warm(fw.size());
    Workspace ws;
    bool isolated = false;

    for (unsigned prec : ladder) {
        ws.prec = prec;
        ws.roots.clear();
        bool ok = true;
        for (std::size_t f = 0; f < fw.size(); ++f) {
            for (const auto& r : fw[f].rational) {
                WorkRoot w;
                w.z = mk_hc(prec);
                mpf_set_q(w.z.re.get_mpf_t(), r.get_mpq_t());
                w.z.im = 0;
                w.radius = eps_at(prec, 12);
                w.radius = w.radius * (hc_abs(w.z, prec) + 1);
                w.multiplicity = fw[f].multiplicity;
                w.factor_index = static_cast<int>(f);
                w.rational = r;
                ws.roots.push_back(std::move(w));
            }
            if (fw[f].cofactor.degree() >= 1) {
                AberthOut nr = aberth_solve(poly_monic(fw[f].cofactor), prec, warm[f]);
                if (!nr.certified) {
                    ok = false;
                    break;
                }
                warm[f].clear();
                for (const auto& e : nr.roots) {
                    warm[f].emplace_back(e.z.re.get_d(), e.z.im.get_d());
                    WorkRoot w;
                    w.z = hc_copy(e.z, prec);
                    w.radius = mpf_copy(e.radius, prec);
                    w.multiplicity = fw[f].multiplicity;
                    w.factor_index = static_cast<int>(f);
                    ws.roots.push_back(std::move(w));
                }
            }
        }
        if (!ok) continue;

        // radii small enough?
        bool tight = true;
        for (const auto& w : ws.roots) {
            mpf_class lim(0, prec);
            lim = hc_abs(w.z, prec) + 1;
            lim *= rel_target;
            if (w.radius > lim) {
                tight = false;
                break;
            }
        }
        if (tight && ws.disjoint()) {
            isolated = true;
            break;
        }
    }
    if (!isolated)
        throw undecidable_error("root isolation failed at maximum working precision");

    const unsigned prec = ws.prec;
    const std::size_t nroots = ws.roots.size();
    cert.roots.resize(nroots);

    // conjugation pairing (real coefficients only)
    std::vector<int> sigma(nroots, -1);
    if (cert.real_coeffs) {
        for (std::size_t i = 0; i < nroots; ++i) {
            HC cz = mk_hc(prec);
            cz.re = ws.roots[i].z.re;
            cz.im = -ws.roots[i].z.im;
            sigma[i] = unique_hit(ws, cz, ws.roots[i].radius);
        }
    }

    // reciprocal and negated-reciprocal pairing through exact gcds
    std::vector<int> tau(nroots, -1), antitau(nroots, -1), nu(nroots, -1);
    if (cert.real_coeffs && p.c.front() != CRat(0) && p.degree() >= 1) {
        Poly sqfree(std::vector<CRat>{CRat(1)});
        for (const auto& [f, m] : cert.factors) sqfree = poly_mul(sqfree, f);
        const Poly rec = poly_monic(poly_reciprocal(sqfree));
        const Poly h_inv = poly_gcd(sqfree, rec);
        const Poly h_anti = poly_gcd(sqfree, poly_negate_arg(rec));
        const Poly h_neg = poly_gcd(sqfree, poly_negate_arg(sqfree));
        std::vector<bool> inv_closed = match_aux_roots(h_inv, ws);
        std::vector<bool> anti_closed = match_aux_roots(h_anti, ws);
        std::vector<bool> neg_closed = match_aux_roots(h_neg, ws);
        for (std::size_t i = 0; i < nroots; ++i) {
            HC ic = mk_hc(prec);
            mpf_class ir(0, prec);
            const bool invertible_disk = invert_disk(ws, ws.roots[i].z, ws.roots[i].radius, ic, ir);
            if (inv_closed[i] && invertible_disk) tau[i] = unique_hit(ws, ic, ir);
            if (anti_closed[i] && invertible_disk) {
                HC nic = mk_hc(prec);
                nic.re = -ic.re;
                nic.im = -ic.im;
                antitau[i] = unique_hit(ws, nic, ir);
            }
            if (neg_closed[i]) {
                HC nz = mk_hc(prec);
                nz.re = -ws.roots[i].z.re;
                nz.im = -ws.roots[i].z.im;
                nu[i] = unique_hit(ws, nz, ws.roots[i].radius);
            }
        }
    }

    for (std::size_t i = 0; i < nroots; ++i) {
        RootEnclosure& e = cert.roots[i];
        const WorkRoot& w = ws.roots[i];
        e.multiplicity = w.multiplicity;
        e.factor_index = w.factor_index;
        e.rational_value = w.rational;
        e.conj_partner = sigma[i];
        e.inv_partner = tau[i];
        e.antiinv_partner = antitau[i];
        e.neg_partner = nu[i];
        e.certified_real = w.rational.has_value() || sigma[i] == static_cast<int>(i);

        e.center = {w.z.re.get_d(), w.z.im.get_d()};
        const double rd = round_up(w.radius);
        e.radius = rd + std::abs(e.center) * 4.5e-16 + 1e-300;

        mpf_class az = hc_abs(w.z, prec);
        mpf_class slack(0, prec);
        slack = (az + 1) * eps_at(prec, 10);
        mpf_class lo(0, prec), hi(0, prec);
        lo = az - w.radius - slack;
        hi = az + w.radius + slack;
        e.modulus.lo = std::max(0.0, round_down(lo));
        e.modulus.hi = round_up(hi);

        if (w.rational) {
            e.modulus.exact = Rat(abs(*w.rational));
        } else if (tau[i] >= 0 && tau[i] == sigma[i]) {
            // conj(z) == 1/z certified, hence |z| == 1 exactly
            e.modulus.exact = Rat(1);
        } else if (antitau[i] >= 0 && antitau[i] == sigma[i]) {
            // conj(z) == -1/z certified, hence |z| == 1 exactly
            e.modulus.exact = Rat(1);
        }
        if (e.modulus.exact) {
            const double v = e.modulus.exact->get_d();
            e.modulus.lo = std::max(0.0, std::nextafter(v, 0.0));
            e.modulus.hi = std::nextafter(v, std::numeric_limits<double>::infinity());
            if (Rat(v) == *e.modulus.exact) e.modulus.lo = e.modulus.hi = v;
        }
    }
    return cert;
}

// ---------------------------------------------------------------------------
// spectral decisions
// ---------------------------------------------------------------------------

namespace {

bool poly_is_power_of_x(const Poly& p) {
    for (int k = 0; k < p.degree(); ++k)
        if (!p.c[k].is_zero()) return false;
    return true;
}

// interval for max_{j in set} |root_j|
ModulusBound max_bound_over(const RootCertificate& cert, const std::vector<int>& set) {
    ModulusBound b;
    if (set.empty()) {
        b.exact = Rat(0);
        return b;
    }
    int arg_lo = set[0];
    for (int j : set) {
        b.lo = std::max(b.lo, cert.roots[j].modulus.lo);
        b.hi = std::max(b.hi, cert.roots[j].modulus.hi);
        if (cert.roots[j].modulus.lo > cert.roots[arg_lo].modulus.lo) arg_lo = j;
    }
    const auto& top = cert.roots[arg_lo];
    if (top.modulus.exact) {
        bool others_below = true;
        for (int j : set)
            if (j != arg_lo && cert.roots[j].modulus.hi > top.modulus.lo) {
                others_below = cert.equal_modulus_certified(arg_lo, j);
                if (!others_below) break;
            }
        if (others_below) b.exact = top.modulus.exact;
    }
    return b;
}

}  // namespace

SpectralRadius spectral_radius_poly(const Poly& p, bool require_invertible) {
    if (p.is_zero()) throw hypothesis_error("spectral radius of zero polynomial");
    if (poly_is_power_of_x(p)) {
        if (require_invertible)
            throw hypothesis_error("nilpotent block where an invertible one is required");
        return {0.0, 0.0};
    }
    RootCertificate cert = certify_roots(p, 2.5e-10);
    std::vector<int> all(cert.roots.size());
    std::iota(all.begin(), all.end(), 0);
    ModulusBound b = max_bound_over(cert, all);
    SpectralRadius out;
    if (b.exact) {
        out.value = b.exact->get_d();
        Rat repr(out.value);
        Rat err = abs(repr - *b.exact);
        if (err == 0) {
            out.error = 0.0;
        } else {
            mpf_class e128(0, 128);
            mpf_set_q(e128.get_mpf_t(), Rat(err).get_mpq_t());
            out.error = round_up(e128);
        }
    } else {
        out.value = 0.5 * (b.lo + b.hi);
        out.error = 0.5 * (b.hi - b.lo) * (1 + 1e-12) + 2.3e-16 * out.value + 1e-300;
    }
    if (out.error > 1e-9 * std::max(1.0, out.value))
        throw undecidable_error("spectral radius certification exceeded tolerance");
    return out;
}

SpectralRadius spectral_radius(const CRatMat& m, bool require_invertible) {
    if (!m.square()) throw hypothesis_error("spectral radius of non-square matrix");
    return spectral_radius_poly(charpoly(m), require_invertible);
}

DominantCheck check_unique_dominant_poly(const Poly& p) {
    DominantCheck out;
    out.cert = certify_roots(p);
    if (out.cert.roots.empty()) throw hypothesis_error("constant polynomial");
    auto dom = out.cert.dominant_set();
    if (!dom)
        throw undecidable_error("equal-modulus tie undecidable at tolerance");
    const std::vector<int>& d = *dom;
    out.dominant_index = d[0];
    out.unique = d.size() == 1 && out.cert.roots[d[0]].multiplicity == 1;
    std::vector<int> rest;
    for (std::size_t i = 0; i < out.cert.roots.size(); ++i) {
        const int ii = static_cast<int>(i);
        if (out.unique && ii == out.dominant_index) continue;
        if (!out.unique && ii == out.dominant_index && out.cert.roots[i].multiplicity == 1 &&
            d.size() > 1)
            continue;  // remove one copy of the dominant value
        rest.push_back(ii);
    }
    out.second_bound = max_bound_over(out.cert, rest);
    out.second_modulus =
        out.second_bound.exact ? out.second_bound.exact->get_d()
                               : 0.5 * (out.second_bound.lo + out.second_bound.hi);
    return out;
}

DominantCheck check_unique_dominant(const CRatMat& m) {
    if (!m.square()) throw hypothesis_error("non-square matrix");
    Poly p = charpoly(m);
    if (p.c.front().is_zero()) throw hypothesis_error("singular matrix (automorphism required)");
    return check_unique_dominant_poly(p);
}

namespace {

constexpr double kGrowthThreshold = 0.5;
constexpr double kGrowthTolerance = 0.25;
constexpr int kGrowthSteps = 200;

double growth_slope(const CRatMat& m, double rho) {
    const std::size_t n = m.rows();
    std::vector<std::complex<double>> a(n * n), pw(n * n, 0.0), nx(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a[i * n + j] = {m(i, j).re.get_d(), m(i, j).im.get_d()};
    for (std::size_t i = 0; i < n; ++i) pw[i * n + i] = 1.0;

    std::vector<double> lx, ly;
    for (int step = 1; step <= kGrowthSteps; ++step) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::complex<double> s = 0.0;
                for (std::size_t k = 0; k < n; ++k) s += a[i * n + k] * pw[k * n + j];
                nx[i * n + j] = s / rho;
            }
        pw.swap(nx);
        double norm = 0.0;
        for (const auto& x : pw) norm = std::max(norm, std::abs(x));
        if (step >= kGrowthSteps / 8 && norm > 0)
            lx.push_back(std::log(static_cast<double>(step))), ly.push_back(std::log(norm));
    }
    // least-squares slope of log(|M^n|/rho^n) against log n
    const double mean_x = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
    const double mean_y = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mean_x) * (lx[i] - mean_x);
        sxy += (lx[i] - mean_x) * (ly[i] - mean_y);
    }
    return sxy / sxx;
}

}  // namespace

JordanCheck check_multiplicity_one(const CRatMat& m) {
    if (!m.square()) throw hypothesis_error("non-square matrix");
    Poly p = charpoly(m);
    if (p.c.front().is_zero()) throw hypothesis_error("singular matrix (automorphism required)");
    RootCertificate cert = certify_roots(p);
    auto dom = cert.dominant_set();
    JordanCheck out;
    if (dom) {
        bool all_simple = true;
        for (int i : *dom) all_simple = all_simple && cert.roots[i].multiplicity == 1;
        if (all_simple) {
            out.multiplicity_one = true;
            out.decided_by = JordanBranch::SimpleRoot;
            return out;
        }
        // annihilator test: dominant factors reduced to exponent one
        std::vector<bool> dominant_factor(cert.factors.size(), false);
        for (int i : *dom) dominant_factor[cert.roots[i].factor_index] = true;
        Poly q(std::vector<CRat>{CRat(1)});
        for (std::size_t f = 0; f < cert.factors.size(); ++f) {
            const int reps = dominant_factor[f] ? 1 : cert.factors[f].second;
            for (int k = 0; k < reps; ++k) q = poly_mul(q, cert.factors[f].first);
        }
        out.multiplicity_one = poly_eval_matrix(q, m).is_zero();
        out.decided_by = JordanBranch::ExactAnnihilator;
        return out;
    }
    // documented fallback: growth of |M^n| / rho^n, slope on log-log axes
    const double rho = 0.5 * (cert.max_modulus_lo() + cert.max_modulus_hi());
    out.growth_slope = growth_slope(m, rho);
    out.decided_by = JordanBranch::GrowthTest;
    if (std::abs(out.growth_slope - kGrowthThreshold) <= kGrowthTolerance)
        throw undecidable_error("Jordan growth test undecidable at tolerance");
    out.multiplicity_one = out.growth_slope < kGrowthThreshold;
    return out;
}

namespace {

// unique exported enclosure of `c` intersecting the disk, or -1
int unique_hit_exported(const RootCertificate& c, std::complex<double> z, double r) {
    int hit = -1;
    for (std::size_t j = 0; j < c.roots.size(); ++j) {
        if (std::abs(z - c.roots[j].center) <= r + c.roots[j].radius) {
            if (hit >= 0) return -1;
            hit = static_cast<int>(j);
        }
    }
    return hit;
}

}  // namespace

std::vector<std::pair<int, int>> shared_roots(const Poly& p1, const RootCertificate& c1,
                                              const Poly& p2, const RootCertificate& c2) {
    std::vector<std::pair<int, int>> out;
    Poly g = poly_gcd(p1, p2);
    if (g.degree() < 1) return out;
    RootCertificate cg = certify_roots(g);
    for (const auto& e : cg.roots) {
        const int i = unique_hit_exported(c1, e.center, e.radius);
        const int j = unique_hit_exported(c2, e.center, e.radius);
        if (i >= 0 && j >= 0) out.emplace_back(i, j);
    }
    return out;
}

bool check_surface_spectrum(const CRatMat& m) {
    if (!m.square()) throw hypothesis_error("non-square matrix");
    if (!is_real(m)) throw hypothesis_error("surface H^{1,1} block must be real");
    Poly p = charpoly(m);
    if (p.c.front().is_zero()) throw hypothesis_error("singular matrix (automorphism required)");
    RootCertificate cert = certify_roots(p);

    if (cert.max_modulus_hi() <= 1.0)
        throw hypothesis_error("surface spectrum check requires d_1 > 1");
    auto dom = cert.dominant_set();
    if (!dom) throw undecidable_error("dominant modulus tie undecidable");
    if (cert.max_modulus_lo() <= 1.0) {
        bool all_one = true;
        for (int i : *dom) {
            const auto& ex = cert.roots[i].modulus.exact;
            all_one = all_one && ex && *ex == 1;
        }
        if (all_one) throw hypothesis_error("surface spectrum check requires d_1 > 1");
        throw undecidable_error("d_1 vs 1 undecidable at tolerance");
    }

    if (dom->size() != 1) return false;  // max modulus attained more than once
    const int i0 = (*dom)[0];
    if (cert.roots[i0].multiplicity != 1) return false;

    // partner of modulus exactly 1/d: certified reciprocal (up to sign)
    int partner = cert.roots[i0].inv_partner;
    if (partner < 0) partner = cert.roots[i0].antiinv_partner;
    if (partner < 0)
        // 1/d or -1/d as exact rational of a rational dominant
        if (cert.roots[i0].rational_value) {
            const Rat inv = 1 / *cert.roots[i0].rational_value;
            for (std::size_t j = 0; j < cert.roots.size(); ++j)
                if (cert.roots[j].rational_value &&
                    (*cert.roots[j].rational_value == inv || *cert.roots[j].rational_value == -inv))
                    partner = static_cast<int>(j);
        }
    if (partner < 0) {
        // no certified reciprocal partner: if no interval even reaches 1/d, refute
        bool candidate = false;
        for (std::size_t j = 0; j < cert.roots.size(); ++j) {
            if (static_cast<int>(j) == i0) continue;
            const auto& mb = cert.roots[j].modulus;
            if (mb.hi >= 1.0 / cert.roots[i0].modulus.hi - 1e-15 &&
                mb.lo <= 1.0 / cert.roots[i0].modulus.lo + 1e-15)
                candidate = true;
        }
        if (!candidate) return false;
        throw undecidable_error("reciprocal partner undecidable at tolerance");
    }
    if (partner == i0 || cert.roots[partner].multiplicity != 1) return false;

    for (std::size_t k = 0; k < cert.roots.size(); ++k) {
        const int kk = static_cast<int>(k);
        if (kk == i0 || kk == partner) continue;
        const auto& e = cert.roots[k];
        if (e.modulus.exact) {
            if (*e.modulus.exact == 1) continue;
            return false;
        }
        if (e.modulus.hi < 1.0 || e.modulus.lo > 1.0) return false;  // certified off the circle
        throw undecidable_error("unit-modulus membership undecidable at tolerance");
    }
    return true;
}

}  // namespace dynmix

#include "dynmix/hodge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

namespace dynmix {

void HodgeAction::validate() const {
    if (dim < 1) throw schema_error("HodgeAction: dim must be positive");
    if (blocks.size() != static_cast<std::size_t>((dim + 1) * (dim + 1)))
        throw schema_error("HodgeAction: wrong number of blocks");
    for (int r = 0; r <= dim; ++r)
        for (int s = 0; s <= dim; ++s) {
            const CRatMat& b = block(r, s);
            if (!b.square() || b.rows() == 0)
                throw schema_error("HodgeAction: blocks must be square and nonempty");
            if (r == s && !is_real(b)) throw schema_error("HodgeAction: (q,q) blocks must be real");
            if (!(block(s, r) == b.conjugate()))
                throw schema_error("HodgeAction: Hodge symmetry violated at (" +
                                   std::to_string(r) + "," + std::to_string(s) + ")");
        }
    const CRatMat one = CRatMat::identity(1);
    if (!(block(0, 0) == one) || !(block(dim, dim) == one))
        throw schema_error("HodgeAction: corner blocks must be the 1x1 identity");
    for (int r = 0; r <= dim; ++r)
        for (int s = 0; s <= dim; ++s)
            if (det(block(r, s)).is_zero())
                throw schema_error("HodgeAction: singular block (not an automorphism action)");
}

namespace {

struct DiagonalSpectrum {
    Poly charpoly_qq;
    RootCertificate cert;
    ModulusBound rho;
};

ModulusBound whole_spectrum_bound(const RootCertificate& cert) {
    ModulusBound b;
    int arg_lo = -1;
    for (std::size_t i = 0; i < cert.roots.size(); ++i) {
        const auto& mb = cert.roots[i].modulus;
        b.lo = std::max(b.lo, mb.lo);
        b.hi = std::max(b.hi, mb.hi);
        if (arg_lo < 0 || mb.lo > cert.roots[arg_lo].modulus.lo) arg_lo = static_cast<int>(i);
    }
    if (arg_lo >= 0 && cert.roots[arg_lo].modulus.exact) {
        bool top = true;
        for (std::size_t i = 0; i < cert.roots.size(); ++i) {
            if (static_cast<int>(i) == arg_lo) continue;
            if (cert.roots[i].modulus.hi > cert.roots[arg_lo].modulus.lo &&
                !cert.equal_modulus_certified(arg_lo, static_cast<int>(i))) {
                top = false;
                break;
            }
        }
        if (top) b.exact = cert.roots[arg_lo].modulus.exact;
    }
    return b;
}

DiagonalSpectrum diagonal_spectrum(const CRatMat& m) {
    DiagonalSpectrum d;
    d.charpoly_qq = charpoly(m);
    if (d.charpoly_qq.c.front().is_zero())
        throw hypothesis_error("singular (q,q) block");
    d.cert = certify_roots(d.charpoly_qq, 2.5e-10);
    d.rho = whole_spectrum_bound(d.cert);
    return d;
}

double bound_value(const ModulusBound& b) {
    return b.exact ? b.exact->get_d() : 0.5 * (b.lo + b.hi);
}

double bound_radius(const ModulusBound& b) {
    const double v = bound_value(b);
    if (b.exact && Rat(v) == *b.exact) return 0.0;
    return 0.5 * (b.hi - b.lo) + 2.3e-16 * v + 1e-300;
}

// Certified equality of the dominant moduli of two diagonal blocks: exact
// values, or a shared dominant root (or a conjugate of one) through the
// gcd of the two characteristic polynomials.
bool degrees_equal_certified(const DiagonalSpectrum& a, const DiagonalSpectrum& b) {
    if (a.rho.exact && b.rho.exact) return *a.rho.exact == *b.rho.exact;
    auto dom_a = a.cert.dominant_set();
    auto dom_b = b.cert.dominant_set();
    if (!dom_a || !dom_b) throw undecidable_error("dominant set undecidable in a (q,q) block");
    for (const auto& [i, j] : shared_roots(a.charpoly_qq, a.cert, b.charpoly_qq, b.cert)) {
        const bool i_dom = std::find(dom_a->begin(), dom_a->end(), i) != dom_a->end();
        const bool j_dom = std::find(dom_b->begin(), dom_b->end(), j) != dom_b->end();
        if (i_dom && j_dom) return true;
    }
    return false;
}

}  // namespace

DegreeProfile degree_profile(const HodgeAction& h) {
    const int k = h.dim;
    std::vector<DiagonalSpectrum> spectra;
    spectra.reserve(k + 1);
    for (int q = 0; q <= k; ++q) spectra.push_back(diagonal_spectrum(h.block(q, q)));

    DegreeProfile out;
    out.degrees.resize(k + 1);
    out.radii.resize(k + 1);
    for (int q = 0; q <= k; ++q) {
        out.degrees[q] = bound_value(spectra[q].rho);
        out.radii[q] = bound_radius(spectra[q].rho);
    }

    double max_lo = 0.0;
    for (int q = 0; q <= k; ++q) max_lo = std::max(max_lo, spectra[q].rho.lo);
    std::vector<int> peak;
    for (int q = 0; q <= k; ++q)
        if (spectra[q].rho.hi >= max_lo) peak.push_back(q);

    if (peak.size() == 1) {
        out.p = peak[0];
        out.is_unique_peak = true;
    } else {
        // every overlap must be a certified tie, otherwise the peak is unknown
        for (std::size_t a = 0; a + 1 < peak.size(); ++a)
            if (!degrees_equal_certified(spectra[peak[a]], spectra[peak[a + 1]]))
                throw undecidable_error("peak degree tie undecidable at tolerance");
        out.p = peak.front();
        out.is_unique_peak = false;
    }

    DominantCheck dom = check_unique_dominant_poly(spectra[out.p].charpoly_qq);
    out.second_modulus = dom.second_modulus;
    JordanCheck jc = check_multiplicity_one(h.block(out.p, out.p));
    out.multiplicity_one = jc.multiplicity_one;

    double dm = 0.0;
    if (out.p > 0) dm = std::max(dm, out.degrees[out.p - 1]);
    if (out.p < k) dm = std::max(dm, out.degrees[out.p + 1]);
    out.delta_minus_floor = dm;
    return out;
}

HodgeAction invert_action(const HodgeAction& h) {
    HodgeAction inv(h.dim, h.label + "^-1");
    for (int r = 0; r <= h.dim; ++r)
        for (int s = 0; s <= h.dim; ++s) inv.block(r, s) = invert(h.block(r, s));
    return inv;
}

std::vector<KunnethBlock> kunneth_action(const HodgeAction& h_finv, const HodgeAction& h_f) {
    if (h_finv.dim != h_f.dim)
        throw hypothesis_error("Kunneth product of actions with different dim");
    const int k = h_f.dim;
    std::vector<KunnethBlock> out;
    out.reserve(k + 1);
    for (int r = 0; r <= k; ++r) {
        const int s = k - r;
        KunnethBlock b;
        b.r = r;
        b.s = s;
        b.left = h_finv.block(s, r);
        b.right = h_f.block(r, s);
        const SpectralRadius rl = spectral_radius(b.left, /*require_invertible=*/true);
        const SpectralRadius rr = spectral_radius(b.right, /*require_invertible=*/true);
        b.radius = rl.value * rr.value;
        b.radius_error = rl.value * rr.error + rr.value * rl.error + rl.error * rr.error +
                         4.4e-16 * b.radius;
        out.push_back(std::move(b));
    }
    return out;
}

GapCertificate gap_certificate(const HodgeAction& h) {
    DegreeProfile prof = degree_profile(h);
    if (!prof.is_unique_peak)
        throw hypothesis_error("gap certificate requires a unique peak degree");
    DominantCheck dom = check_unique_dominant(h.block(prof.p, prof.p));
    JordanCheck jc = check_multiplicity_one(h.block(prof.p, prof.p));

    GapCertificate g;
    g.d_p = prof.degrees[prof.p];
    g.hypothesis_unique_max = dom.unique;
    g.hypothesis_multiplicity_one = jc.multiplicity_one;
    g.delta_plus = dom.second_bound.exact ? dom.second_bound.exact->get_d()
                                          : dom.second_bound.hi;
    g.delta_minus = prof.delta_minus_floor;
    g.lo = std::max(g.delta_plus, g.delta_minus);
    g.hi = g.d_p;
    return g;
}

double entropy(const HodgeAction& h) {
    if (h.dim != 2) throw hypothesis_error("entropy identity is quoted for surfaces only");
    DegreeProfile prof = degree_profile(h);
    return std::log(prof.degrees[1]);
}

// ---------------------------------------------------------------------------
// projector convergence rate
// ---------------------------------------------------------------------------

namespace {

double mpf_log(const mpf_class& x) {
    if (x <= 0) return -std::numeric_limits<double>::infinity();
    long exp2 = 0;
    const double mant = mpf_get_d_2exp(&exp2, x.get_mpf_t());
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

// Newton-polish the dominant (real, simple) eigenvalue to working precision.
mpf_class polish_dominant_root(const Poly& p, double start, unsigned prec) {
    std::vector<mpf_class> c(p.c.size(), mpf_class(0, prec));
    for (std::size_t i = 0; i < p.c.size(); ++i)
        mpf_set_q(c[i].get_mpf_t(), p.c[i].re.get_mpq_t());
    Poly dp = poly_derivative(p);
    std::vector<mpf_class> dc(dp.c.size(), mpf_class(0, prec));
    for (std::size_t i = 0; i < dp.c.size(); ++i)
        mpf_set_q(dc[i].get_mpf_t(), dp.c[i].re.get_mpq_t());

    auto horner = [&](const std::vector<mpf_class>& cs, const mpf_class& z) {
        mpf_class v(0, prec);
        for (auto it = cs.rbegin(); it != cs.rend(); ++it) v = v * z + *it;
        return v;
    };
    mpf_class z(start, prec);
    for (int it = 0; it < 200; ++it) {
        mpf_class pv = horner(c, z);
        mpf_class dv = horner(dc, z);
        if (dv == 0) break;
        mpf_class step(0, prec);
        step = pv / dv;
        z -= step;
        mpf_class bound(0, prec);
        bound = (abs(z) + 1);
        mpf_div_2exp(bound.get_mpf_t(), bound.get_mpf_t(), prec - 16);
        if (abs(step) < bound) break;
    }
    return z;
}

}  // namespace

ConvergenceRate projector_convergence_rate(const CRatMat& m, int n_max) {
    if (!m.square() || m.rows() == 0) throw hypothesis_error("rate of an empty matrix");
    if (!is_real(m)) throw hypothesis_error("rate measurement expects a real block");
    if (n_max < 4) throw hypothesis_error("n_max too small for a rate fit");

    DominantCheck dom = check_unique_dominant(m);
    if (!dom.unique)
        throw hypothesis_error("dominant eigenvalue is not unique; no convergence rate");
    JordanCheck jc = check_multiplicity_one(m);
    if (!jc.multiplicity_one)
        throw hypothesis_error("dominant eigenvalue fails the multiplicity-one condition");

    const RootEnclosure& lead = dom.cert.roots[dom.dominant_index];
    const double second_hi = dom.second_bound.hi;

    ConvergenceRate out;
    out.d_p = std::abs(lead.center.real());
    out.second_modulus = dom.second_modulus;
    out.theoretical = out.second_modulus > 0
                          ? -std::log(out.d_p / out.second_modulus)
                          : -std::numeric_limits<double>::infinity();

    const int n_limit = 2 * n_max + 8;
    double log2_ratio = 1.0;
    if (second_hi > 0 && second_hi < out.d_p)
        log2_ratio = std::log2(out.d_p / second_hi);
    unsigned prec = static_cast<unsigned>(std::ceil((n_limit + 2) * std::max(log2_ratio, 0.0))) + 192;
    prec = std::min(prec, 16384u);

    // signed dominant eigenvalue at full precision
    Poly p = charpoly(m);
    mpf_class lambda = polish_dominant_root(p, lead.center.real(), prec);

    const std::size_t n = m.rows();
    std::vector<mpf_class> a(n * n, mpf_class(0, prec));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            mpf_set_q(a[i * n + j].get_mpf_t(), m(i, j).re.get_mpq_t());

    std::vector<std::vector<mpf_class>> powers;
    powers.reserve(n_max + 1);
    std::vector<mpf_class> cur(n * n, mpf_class(0, prec));
    for (std::size_t i = 0; i < n; ++i) cur[i * n + i] = 1;
    powers.push_back(cur);
    std::vector<mpf_class> nxt(n * n, mpf_class(0, prec));
    for (int step = 1; step <= n_limit; ++step) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                mpf_class s(0, prec);
                for (std::size_t k = 0; k < n; ++k) s += a[i * n + k] * cur[k * n + j];
                nxt[i * n + j] = s / lambda;
            }
        cur.swap(nxt);
        if (step <= n_max) powers.push_back(cur);
    }
    const std::vector<mpf_class>& limit = cur;  // L_inf up to ~ratio^{-n_limit}

    double limit_norm = 0.0;
    for (const auto& x : limit) limit_norm = std::max(limit_norm, std::abs(x.get_d()));

    out.samples.reserve(n_max + 1);
    for (int step = 0; step <= n_max; ++step) {
        mpf_class e(0, prec);
        for (std::size_t i = 0; i < n * n; ++i) {
            mpf_class d(0, prec);
            d = abs(powers[step][i] - limit[i]);
            if (d > e) e = d;
        }
        RateSample smp;
        smp.n = step;
        smp.error_norm = e.get_d();
        smp.log_error = mpf_log(e);
        out.samples.push_back(smp);
    }

    // least-squares slope over the resolved decay window
    const double noise_floor =
        std::log(2.0) * (30.0 - static_cast<double>(prec)) + std::log1p(limit_norm);
    std::vector<double> xs, ys;
    for (const auto& s : out.samples)
        if (s.log_error < std::log(1e-2) && s.log_error > noise_floor) {
            xs.push_back(s.n);
            ys.push_back(s.log_error);
        }
    if (xs.size() < 3) {
        out.slope = -std::numeric_limits<double>::infinity();
        return out;
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
    mx /= xs.size();
    my /= ys.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    out.slope = sxy / sxx;
    return out;
}

// ---------------------------------------------------------------------------
// refined delta threshold and parity pairs
// ---------------------------------------------------------------------------

double refined_delta_threshold(double delta_plus, double delta_minus) {
    if (!(delta_plus > 1.0) || !(delta_minus > 1.0))
        throw std::domain_error("refined threshold needs delta_+ > 1 and delta_- > 1");
    const double a = std::log(delta_plus);
    const double b = std::log(delta_minus);
    return std::exp(2.0 * a * b / (a + b));
}

std::optional<std::pair<int, int>> find_parity_pair(double delta_plus, double delta_minus,
                                                    double delta, int cap) {
    if (!(delta_plus > 1.0) || !(delta_minus > 1.0) || !(delta > 1.0))
        throw std::domain_error("parity pair search needs inputs > 1");
    const double a = std::log(delta_plus);
    const double b = std::log(delta_minus);
    const double c = std::log(delta);
    for (int total = 2; total <= cap; ++total)
        for (int l = 1; l < total; ++l) {
            const int mm = total - l;
            if (std::max(l * a, mm * b) < 0.5 * total * c) return std::make_pair(l, mm);
        }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// JSON round trip
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

json rat_matrix_json(const CRatMat& m, bool imaginary) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(rat_to_string(imaginary ? m(i, j).im : m(i, j).re));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string hodge_to_json_string(const HodgeAction& h) {
    json j;
    j["dim"] = h.dim;
    j["label"] = h.label;
    json blocks = json::array();
    for (int r = 0; r <= h.dim; ++r)
        for (int s = 0; s <= h.dim; ++s) {
            json b;
            b["r"] = r;
            b["s"] = s;
            b["re"] = rat_matrix_json(h.block(r, s), false);
            b["im"] = rat_matrix_json(h.block(r, s), true);
            blocks.push_back(std::move(b));
        }
    j["blocks"] = std::move(blocks);
    return j.dump(2) + "\n";
}

HodgeAction hodge_from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw schema_error(std::string("HodgeAction JSON parse: ") + e.what());
    }
    try {
        HodgeAction h(j.at("dim").get<int>(), j.at("label").get<std::string>());
        if (h.dim < 1) throw schema_error("HodgeAction: dim must be positive");
        std::vector<bool> seen((h.dim + 1) * (h.dim + 1), false);
        for (const auto& b : j.at("blocks")) {
            const int r = b.at("r").get<int>();
            const int s = b.at("s").get<int>();
            if (r < 0 || s < 0 || r > h.dim || s > h.dim)
                throw schema_error("HodgeAction: block index out of range");
            const auto& re = b.at("re");
            const auto& im = b.at("im");
            const std::size_t rows = re.size();
            if (rows == 0 || im.size() != rows)
                throw schema_error("HodgeAction: inconsistent block shape");
            CRatMat m(rows, re.at(0).size());
            for (std::size_t i = 0; i < rows; ++i) {
                if (re.at(i).size() != m.cols() || im.at(i).size() != m.cols())
                    throw schema_error("HodgeAction: ragged block rows");
                for (std::size_t jj = 0; jj < m.cols(); ++jj)
                    m(i, jj) = CRat(rat_from_string(re.at(i).at(jj).get<std::string>()),
                                    rat_from_string(im.at(i).at(jj).get<std::string>()));
            }
            h.block(r, s) = std::move(m);
            seen[r * (h.dim + 1) + s] = true;
        }
        for (bool f : seen)
            if (!f) throw schema_error("HodgeAction: missing blocks in JSON");
        h.validate();
        return h;
    } catch (const json::exception& e) {
        throw schema_error(std::string("HodgeAction JSON shape: ") + e.what());
    }
}

}  // namespace dynmix

#include "dynmix/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <atomic>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

namespace dynmix {

namespace {

using Vec4z = std::array<Int, 4>;

Vec4z transport_step(const IntMat& at, const Vec4z& v) {
    Vec4z w{Int(0), Int(0), Int(0), Int(0)};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) w[i] += at(i, j) * v[j];
    return w;
}

// exact pairing with psi's finite support; out-of-range transported
// frequencies cannot hit it
bool to_freq4(const Vec4z& v, Freq4& out) {
    for (std::size_t i = 0; i < 4; ++i) {
        if (!v[i].fits_slong_p()) return false;
        const long x = v[i].get_si();
        out[i] = x;
    }
    return true;
}

// canonical accumulation: the term multiset determines the sum bit-exactly,
// independent of which side supplied the iteration order
double sum_terms_canonical(std::vector<std::complex<double>>& terms) {
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::complex<double> s = 0.0;
    for (const auto& t : terms) s += t;
    return s.real();
}

}  // namespace

CorrelationSeries correlation_exact(const TorusAutomorphism& t, const TestFunction& phi,
                                    const TestFunction& psi, int n_max) {
    if (!t.hyperbolic)
        throw hypothesis_error("exact correlations expect a hyperbolic instance: '" + t.label +
                               "'");
    if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
    phi.validate();
    psi.validate();

    const IntMat at = t.A_real.transpose();

    CorrelationSeries out;
    out.instance_label = t.label;
    out.phi_id = phi.id;
    out.psi_id = psi.id;
    out.entries.reserve(n_max + 1);

    std::vector<std::pair<Vec4z, std::complex<double>>> transported;
    transported.reserve(phi.coeffs.size());
    for (const auto& [f, c] : phi.coeffs)
        transported.push_back({Vec4z{Int(f[0]), Int(f[1]), Int(f[2]), Int(f[3])}, c});

    for (int n = 0; n <= n_max; ++n) {
        std::vector<std::complex<double>> terms;
        for (const auto& [v, c] : transported) {
            Freq4 key;
            Vec4z neg{-v[0], -v[1], -v[2], -v[3]};
            if (!to_freq4(neg, key)) continue;
            auto it = psi.coeffs.find(key);
            if (it == psi.coeffs.end()) continue;
            terms.push_back(c * it->second);
        }
        CorrelationEntry e;
        e.n = n;
        e.value = sum_terms_canonical(terms);
        e.abs_error = 0.0;  // finite supports: the truncation tail is zero
        e.method = CorrMethod::Exact;
        out.entries.push_back(e);
        if (n < n_max)
            for (auto& [v, c] : transported) v = transport_step(at, v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Monte Carlo on exact dyadic orbits
// ---------------------------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct SupportEntry {
    std::array<std::uint64_t, 4> xi;  // two's-complement frequency
    double re, im;
};

std::vector<SupportEntry> flatten_support(const TestFunction& f) {
    std::vector<SupportEntry> s;
    s.reserve(f.coeffs.size());
    for (const auto& [xi, c] : f.coeffs) {
        SupportEntry e;
        for (std::size_t i = 0; i < 4; ++i) e.xi[i] = static_cast<std::uint64_t>(xi[i]);
        e.re = c.real();
        e.im = c.imag();
        s.push_back(e);
    }
    return s;
}

// f(x) at the dyadic point k / 2^64: phases are exact lattice fractions
double eval_dyadic(const std::vector<SupportEntry>& support, double mean,
                   const std::array<std::uint64_t, 4>& k) {
    constexpr double kScale = 0x1.921fb54442d18p2 * 0x1.0p-64;  // 2*pi / 2^64
    double acc = mean;
    for (const auto& e : support) {
        std::uint64_t dot = e.xi[0] * k[0] + e.xi[1] * k[1] + e.xi[2] * k[2] + e.xi[3] * k[3];
        const double theta = static_cast<double>(dot) * kScale;
        acc += e.re * std::cos(theta) - e.im * std::sin(theta);
    }
    return acc;
}

struct BlockAccum {
    std::vector<double> sum_prod, sumsq_prod, sum_phi;
    double sum_psi = 0.0;

    explicit BlockAccum(int n_max)
        : sum_prod(n_max + 1, 0.0), sumsq_prod(n_max + 1, 0.0), sum_phi(n_max + 1, 0.0) {}

    void merge(const BlockAccum& o) {
        for (std::size_t i = 0; i < sum_prod.size(); ++i) {
            sum_prod[i] += o.sum_prod[i];
            sumsq_prod[i] += o.sumsq_prod[i];
            sum_phi[i] += o.sum_phi[i];
        }
        sum_psi += o.sum_psi;
    }
};

}  // namespace

CorrelationSeries correlation_montecarlo(const TorusAutomorphism& t, const TestFunction& phi,
                                         const TestFunction& psi, int n_max,
                                         std::int64_t samples, std::uint64_t seed) {
    if (samples < 1000)
        throw std::invalid_argument("Monte Carlo sample count too small (need N >= 1000)");
    if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
    phi.validate();
    psi.validate();

    // orbit advance x -> A_real x (mod 1) as wraparound words
    std::array<std::array<std::uint64_t, 4>, 4> a;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            if (!t.A_real(i, j).fits_slong_p())
                throw std::invalid_argument("torus matrix entries too large for orbit words");
            a[i][j] = static_cast<std::uint64_t>(t.A_real(i, j).get_si());
        }

    const std::vector<SupportEntry> sup_phi = flatten_support(phi);
    const std::vector<SupportEntry> sup_psi = flatten_support(psi);

    constexpr std::int64_t kBlock = 8192;
    const std::int64_t nblocks = (samples + kBlock - 1) / kBlock;

    auto run_block = [&](std::int64_t b) {
        BlockAccum acc(n_max);
        std::mt19937_64 rng(splitmix64(seed ^ (0xd1b54a32d192ed03ULL * (b + 1))));
        const std::int64_t lo = b * kBlock;
        const std::int64_t hi = std::min(samples, lo + kBlock);
        for (std::int64_t p = lo; p < hi; ++p) {
            std::array<std::uint64_t, 4> k{rng(), rng(), rng(), rng()};
            const double psi0 = eval_dyadic(sup_psi, psi.mean, k);
            acc.sum_psi += psi0;
            for (int n = 0; n <= n_max; ++n) {
                const double phin = eval_dyadic(sup_phi, phi.mean, k);
                const double prod = phin * psi0;
                acc.sum_prod[n] += prod;
                acc.sumsq_prod[n] += prod * prod;
                acc.sum_phi[n] += phin;
                if (n < n_max) {
                    std::array<std::uint64_t, 4> nk{};
                    for (std::size_t i = 0; i < 4; ++i)
                        nk[i] = a[i][0] * k[0] + a[i][1] * k[1] + a[i][2] * k[2] + a[i][3] * k[3];
                    k = nk;
                }
            }
        }
        return acc;
    };

    // per-block seeds make the result a function of (seed, N, block size)
    // alone; ordered reduction keeps it independent of scheduling
    std::vector<BlockAccum> partials(nblocks, BlockAccum(n_max));
    const unsigned workers =
        std::max(1u, std::min({std::thread::hardware_concurrency(),
                               static_cast<unsigned>(nblocks), 8u}));
    std::atomic<std::int64_t> cursor{0};
    auto worker = [&] {
        for (;;) {
            const std::int64_t b = cursor.fetch_add(1);
            if (b >= nblocks) break;
            partials[b] = run_block(b);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    BlockAccum total(n_max);
    for (const auto& p : partials) total.merge(p);

    const double n_d = static_cast<double>(samples);
    CorrelationSeries out;
    out.instance_label = t.label;
    out.phi_id = phi.id;
    out.psi_id = psi.id;
    out.seed = seed;
    out.samples = samples;
    out.entries.reserve(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        const double mean_prod = total.sum_prod[n] / n_d;
        const double mean_phi = total.sum_phi[n] / n_d;
        const double mean_psi = total.sum_psi / n_d;
        CorrelationEntry e;
        e.n = n;
        e.value = mean_prod - mean_phi * mean_psi;
        const double var =
            std::max(0.0, total.sumsq_prod[n] / n_d - mean_prod * mean_prod) * n_d / (n_d - 1.0);
        e.abs_error = 4.0 * std::sqrt(var / n_d);
        e.method = CorrMethod::MonteCarlo;
        out.entries.push_back(e);
    }
    return out;
}

void write_correlation_csv(const CorrelationSeries& s, std::ostream& os) {
    os << "n,value,abs_error,method\n";
    char buf[128];
    for (const auto& e : s.entries) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%s\n", e.n, e.value, e.abs_error,
                      e.method == CorrMethod::Exact ? "exact" : "montecarlo");
        os << buf;
    }
}

std::string correlation_csv_string(const CorrelationSeries& s) {
    std::ostringstream os;
    write_correlation_csv(s, os);
    return os.str();
}

}  // namespace dynmix

#include "dynmix/test_function.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace dynmix {

namespace {

double freq_norm_sq(const Freq4& f) {
    double s = 0;
    for (auto v : f) s += static_cast<double>(v) * static_cast<double>(v);
    return s;
}

Freq4 negate(const Freq4& f) { return {-f[0], -f[1], -f[2], -f[3]}; }

}  // namespace

double TestFunction::norm_c0_bound() const {
    double s = std::abs(mean);
    for (const auto& [f, c] : coeffs) s += std::abs(c);
    return s;
}

double TestFunction::norm_c2_bound() const {
    constexpr double four_pi_sq = 4.0 * M_PI * M_PI;
    double s = std::abs(mean);
    for (const auto& [f, c] : coeffs) s += (1.0 + four_pi_sq * freq_norm_sq(f)) * std::abs(c);
    return s;
}

double TestFunction::norm_holder_bound() const {
    const double c0 = norm_c0_bound();
    const double c2 = norm_c2_bound();
    return std::pow(c0, 1.0 - holder_beta / 2.0) * std::pow(c2, holder_beta / 2.0);
}

void TestFunction::validate() const {
    if (holder_beta < 0.0 || holder_beta > 2.0)
        throw std::invalid_argument("holder_beta must lie in [0, 2]");
    const Freq4 zero{0, 0, 0, 0};
    for (const auto& [f, c] : coeffs) {
        if (f == zero)
            throw std::invalid_argument("zero frequency belongs in 'mean', not in coeffs");
        auto it = coeffs.find(negate(f));
        if (it == coeffs.end() || it->second != std::conj(c))
            throw std::invalid_argument("coefficients violate c(-xi) == conj(c(xi))");
    }
}

TestFunction make_holder_function(double beta, int radius, std::uint64_t seed) {
    if (!(beta > 0.0) || beta > 2.0) throw std::invalid_argument("beta must lie in (0, 2]");
    if (radius < 1) throw std::invalid_argument("radius must be >= 1");

    TestFunction f;
    f.holder_beta = beta;
    std::mt19937_64 rng(seed);
    const double two_pi = 2.0 * M_PI;

    // canonical representative of {xi, -xi}: first nonzero coordinate positive;
    // lexicographic iteration keeps the construction deterministic
    for (std::int64_t a = -radius; a <= radius; ++a)
        for (std::int64_t b = -radius; b <= radius; ++b)
            for (std::int64_t c = -radius; c <= radius; ++c)
                for (std::int64_t d = -radius; d <= radius; ++d) {
                    const Freq4 xi{a, b, c, d};
                    std::int64_t lead = 0;
                    for (auto v : xi)
                        if (v != 0) {
                            lead = v;
                            break;
                        }
                    if (lead <= 0) continue;
                    const double amp = std::pow(freq_norm_sq(xi), -(2.0 + beta) / 4.0);
                    const double theta =
                        two_pi * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
                    const std::complex<double> coef = amp * std::polar(1.0, theta);
                    f.coeffs[xi] = coef;
                    f.coeffs[negate(xi)] = std::conj(coef);
                }

    char buf[96];
    std::snprintf(buf, sizeof buf, "holder(beta=%.6g,radius=%d,seed=%llu)", beta, radius,
                  static_cast<unsigned long long>(seed));
    f.id = buf;
    f.validate();
    return f;
}

TestFunction cosine_function(const Freq4& xi) {
    TestFunction f;
    f.coeffs[xi] = 0.5;
    f.coeffs[negate(xi)] = 0.5;
    f.holder_beta = 2.0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "cos2pi(%lld,%lld,%lld,%lld)",
                  static_cast<long long>(xi[0]), static_cast<long long>(xi[1]),
                  static_cast<long long>(xi[2]), static_cast<long long>(xi[3]));
    f.id = buf;
    f.validate();
    return f;
}

}  // namespace dynmix

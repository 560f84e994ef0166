#pragma once

// Centered correlations <mu, (phi o f^n) psi> - <mu,phi><mu,psi> against
// Haar measure on torus instances: an exact Fourier oracle driven by
// big-integer frequency transport, and a seeded Monte Carlo estimator on
// exact dyadic orbits.

#include <iosfwd>

#include "dynmix/catalog.hpp"
#include "dynmix/test_function.hpp"

namespace dynmix {

enum class CorrMethod { Exact, MonteCarlo };

struct CorrelationEntry {
    int n = 0;
    double value = 0.0;
    double abs_error = 0.0;
    CorrMethod method = CorrMethod::Exact;
};

struct CorrelationSeries {
    std::vector<CorrelationEntry> entries;
    std::string instance_label;
    std::string phi_id, psi_id;
    std::uint64_t seed = 0;
    std::int64_t samples = 0;
};

// C_n = sum_{xi != 0} phi(xi) * psi(-(A_real^T)^n xi); exact transport,
// empty sums are exact zeros.
CorrelationSeries correlation_exact(const TorusAutomorphism& t, const TestFunction& phi,
                                    const TestFunction& psi, int n_max);

// Seeded estimator on N uniform dyadic points with exact mod-1 orbit
// arithmetic; error bars are 4 * (empirical std) / sqrt(N).
CorrelationSeries correlation_montecarlo(const TorusAutomorphism& t, const TestFunction& phi,
                                         const TestFunction& psi, int n_max,
                                         std::int64_t samples, std::uint64_t seed);

void write_correlation_csv(const CorrelationSeries& s, std::ostream& os);
std::string correlation_csv_string(const CorrelationSeries& s);

}  // namespace dynmix

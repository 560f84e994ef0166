#pragma once

// Bound parameters per the spectral-gap mixing inequality, one-sided
// fitting of empirical decay against them, and report serialization.

#include "dynmix/correlation.hpp"
#include "dynmix/hodge.hpp"

namespace dynmix {

struct BoundParams {
    double base = 1.0;   // (d_p/delta)^{beta*beta'/8}: bound_n = A*scale*base^-n
    double scale = 0.0;  // |phi| * |psi| in the declared Holder norms
    double d_p = 0.0, delta = 0.0, beta = 0.0, beta_prime = 0.0;
};

// Refuses delta outside the admissible open interval of the certificate.
BoundParams theorem_bound(const GapCertificate& gap, double delta, double beta,
                          double beta_prime, double norm_phi, double norm_psi);

struct BoundReport {
    double fitted_A = 0.0;  // smallest constant making the bound hold over the range
    double base = 1.0;
    // least-squares decay rates per parity; -inf marks "decayed to zero
    // before the fit window"
    double empirical_rate_even = 0.0;
    double empirical_rate_odd = 0.0;
    bool holds = false;
    bool decayed_to_zero = false;
    double delta = 0.0, beta = 0.0, beta_prime = 0.0;
};

// Masks entries below max(3*abs_error, 1e-14) before fitting; fits even and
// odd subsequences separately; fitted_A maximizes (|C_n|+err)*base^n/scale.
BoundReport fit_and_check(const CorrelationSeries& series, const BoundParams& bound);

std::string bound_report_json_string(const BoundReport& r);

// log10 |C_n| scatter with the bound line overlaid; static, timestamp-free.
std::string correlation_svg(const CorrelationSeries& series, const BoundParams& bound,
                            double fitted_A);

}  // namespace dynmix

#pragma once

// The bigraded cohomology action of an automorphism and the invariants
// computed from it: dynamical degrees with certified radii, spectral gap
// certificates, Kunneth product blocks (kept factored), projector
// convergence rates, and the refined spectral-gap thresholds.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dynmix/roots.hpp"

namespace dynmix {

// Full action of f* on all H^{r,s}, 0 <= r,s <= dim.  Entries are Gaussian
// rationals; the (q,q) blocks are real in the stored basis.
struct HodgeAction {
    int dim = 0;
    std::string label;
    std::vector<CRatMat> blocks;  // (dim+1)^2 blocks, index r*(dim+1)+s

    HodgeAction() = default;
    HodgeAction(int k, std::string lbl)
        : dim(k), label(std::move(lbl)), blocks((k + 1) * (k + 1)) {}

    CRatMat& block(int r, int s) { return blocks[r * (dim + 1) + s]; }
    const CRatMat& block(int r, int s) const { return blocks[r * (dim + 1) + s]; }

    // Structural invariants: corner blocks are the 1x1 identity, every block
    // is square and invertible, block(s,r) == conj(block(r,s)), and the
    // diagonal blocks are real.  Throws schema_error.
    void validate() const;
};

struct DegreeProfile {
    std::vector<double> degrees;  // d_0..d_k
    std::vector<double> radii;    // certified error radii
    int p = 0;                    // first index attaining the max degree
    bool is_unique_peak = false;
    double second_modulus = 0.0;  // on the (p,p) block, excluding one copy of d_p
    double delta_minus_floor = 0.0;  // max(d_{p-1}, d_{p+1})
    bool multiplicity_one = false;
};

DegreeProfile degree_profile(const HodgeAction& h);

// Blockwise exact inverse; throws on singular blocks.
HodgeAction invert_action(const HodgeAction& h);

// One tensor factor pair of F* on H^{k,k}(X x X); the product matrix is
// never materialized, spectra of tensor products multiply.
struct KunnethBlock {
    int r = 0, s = 0;      // the H^{s,r} x H^{r,s} summand, r + s = k
    CRatMat left;          // (f^{-1})* on H^{s,r}
    CRatMat right;         // f* on H^{r,s}
    double radius = 0.0;   // product of factor spectral radii
    double radius_error = 0.0;
};

std::vector<KunnethBlock> kunneth_action(const HodgeAction& h_finv, const HodgeAction& h_f);

struct GapCertificate {
    double d_p = 0.0;
    double lo = 0.0, hi = 0.0;  // admissible open interval for delta
    bool hypothesis_unique_max = false;
    bool hypothesis_multiplicity_one = false;
    double delta_plus = 0.0;   // bound on non-dominant (p,p) eigenvalue moduli
    double delta_minus = 0.0;  // max(d_{p-1}, d_{p+1})

    bool nonempty() const {
        return hypothesis_unique_max && hypothesis_multiplicity_one && lo < hi;
    }
    bool admits(double delta) const { return nonempty() && lo < delta && delta < hi; }
};

// Requires a unique peak; assembles the admissible open interval of
// exponential mixing rates.
GapCertificate gap_certificate(const HodgeAction& h);

// log d_1; surfaces only (dim == 2).
double entropy(const HodgeAction& h);

struct RateSample {
    int n = 0;
    double error_norm = 0.0;  // may underflow to 0; log_error stays accurate
    double log_error = 0.0;
};

struct ConvergenceRate {
    double slope = 0.0;        // fitted slope of log e_n (-inf if fully decayed)
    double theoretical = 0.0;  // -log(d_p / second_modulus)
    double d_p = 0.0;
    double second_modulus = 0.0;
    std::vector<RateSample> samples;
};

// e_n = |lambda^-n M^n - L_inf| in the max norm, high-precision arithmetic
// with per-step rescaling; hypotheses (unique dominant, multiplicity one)
// are checked and enforced.
ConvergenceRate projector_convergence_rate(const CRatMat& m, int n_max);

// exp of the harmonic mean of log delta_+ and log delta_-; inputs must
// exceed 1 (std::domain_error otherwise).
double refined_delta_threshold(double delta_plus, double delta_minus);

// Smallest (by l+m, then l) positive integers with
// max(delta_+^l, delta_-^m) < delta^{(l+m)/2}, or nullopt within the cap.
std::optional<std::pair<int, int>> find_parity_pair(double delta_plus, double delta_minus,
                                                    double delta, int cap);

// Bit-exact JSON round trip ("p/q" rational strings).
std::string hodge_to_json_string(const HodgeAction& h);
HodgeAction hodge_from_json_string(const std::string& text);

}  // namespace dynmix

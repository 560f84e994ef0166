#pragma once

// Certified root moduli for exact polynomials, and the spectral decisions
// built on them: spectral radius with error radius, uniqueness of the
// dominant eigenvalue, multiplicity-one (Jordan) checks, Salem-type
// surface spectra.
//
// Strategy: Yun squarefree splitting and exact rational-root extraction
// first, then Aberth-Ehrlich iteration in high-precision floats with
// a-posteriori residual disks (each disk provably contains a root; disjoint
// disks isolate).  Equal-modulus ties are settled only by exact
// certificates: conjugation pairing, reciprocal pairing on self-reciprocal
// polynomials, negation pairing through gcd(p(x), p(-x)), or exact rational
// values.  Anything else is reported undecidable, never guessed.

#include <complex>
#include <optional>
#include <vector>

#include "dynmix/poly.hpp"

namespace dynmix {

struct ModulusBound {
    double lo = 0.0, hi = 0.0;        // certified |root| within [lo, hi]
    std::optional<Rat> exact;         // set when |root| is proven equal to a rational

    bool contains_one() const { return lo <= 1.0 && 1.0 <= hi; }
};

struct RootEnclosure {
    std::complex<double> center;
    double radius = 0.0;              // disk certified to contain exactly this root
    int multiplicity = 1;
    int factor_index = -1;            // which squarefree factor owns the root
    ModulusBound modulus;
    bool certified_real = false;
    std::optional<Rat> rational_value;
    int conj_partner = -1;            // j with root_j == conj(root_i), certified
    int inv_partner = -1;             // j with root_j == 1/root_i, certified
    int antiinv_partner = -1;         // j with root_j == -1/root_i, certified
    int neg_partner = -1;             // j with root_j == -root_i, certified
};

struct RootCertificate {
    std::vector<RootEnclosure> roots;            // one entry per distinct root
    std::vector<std::pair<Poly, int>> factors;   // squarefree factors with multiplicities
    bool real_coeffs = false;
    bool self_reciprocal = false;
    int degree = 0;

    double max_modulus_lo() const;
    double max_modulus_hi() const;
    bool equal_modulus_certified(int i, int j) const;
    // Indices that possibly attain the maximal modulus (by interval overlap).
    std::vector<int> dominant_candidates() const;
    // The certified set of roots attaining the max modulus, or nullopt when
    // ties cannot be resolved at the working tolerance.
    std::optional<std::vector<int>> dominant_set() const;
};

// rel_target: requested enclosure radius relative to max(1, |root|).
RootCertificate certify_roots(const Poly& p, double rel_target = 1e-12);

struct SpectralRadius {
    double value = 0.0;
    double error = 0.0;  // certified: |true - value| <= error
};

// Spectral radius of an exact matrix with certified error radius
// <= 1e-9 * max(1, rho).  require_invertible rejects nilpotent input.
SpectralRadius spectral_radius(const CRatMat& m, bool require_invertible = false);
SpectralRadius spectral_radius_poly(const Poly& charpoly, bool require_invertible = false);

struct DominantCheck {
    bool unique = false;           // exactly one eigenvalue (with multiplicity) of max modulus
    double second_modulus = 0.0;   // largest modulus after removing one copy of the dominant
    ModulusBound second_bound;
    int dominant_index = -1;
    RootCertificate cert;
};

DominantCheck check_unique_dominant(const CRatMat& m);
DominantCheck check_unique_dominant_poly(const Poly& p);

enum class JordanBranch { SimpleRoot, ExactAnnihilator, GrowthTest };

struct JordanCheck {
    bool multiplicity_one = false;
    JordanBranch decided_by = JordanBranch::SimpleRoot;
    double growth_slope = 0.0;  // filled for GrowthTest
};

// True iff every eigenvalue of maximal modulus has 1x1 Jordan blocks.
JordanCheck check_multiplicity_one(const CRatMat& m);

// True iff the certified root moduli are {d, 1/d} plus 1's (Salem-type
// surface spectrum).  Requires d > 1 (throws hypothesis_error otherwise).
bool check_surface_spectrum(const CRatMat& m);

// Cross-polynomial root identification: pairs (i, j) such that root i of c1
// provably equals root j of c2, certified through gcd(p1, p2) disk matching.
std::vector<std::pair<int, int>> shared_roots(const Poly& p1, const RootCertificate& c1,
                                              const Poly& p2, const RootCertificate& c2);

}  // namespace dynmix

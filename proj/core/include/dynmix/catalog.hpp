#pragma once

// Concrete automorphisms with exactly known cohomology actions: torus
// automorphisms over the Gaussian integers (full Hodge action derived
// exactly), lattice isometries given by an integer matrix preserving an
// integer form (H^{1,1} fragment only), and the product map (f^{-1}, f).

#include <string>
#include <variant>
#include <vector>

#include "dynmix/hodge.hpp"

namespace dynmix {

struct TorusAutomorphism {
    GaussMat A;        // 2x2 over Z[i], unit determinant
    IntMat A_real;     // real 4x4 representation on R^4/Z^4
    HodgeAction hodge; // dim 2, derived
    bool hyperbolic = false;  // d_1 > 1
    double d1 = 1.0;
    std::string label;
};

// Builds the full action from A.  Convention fixed once: 1-forms and dual
// frequencies transform by A^T, so block(1,0) = A^T.  The (1,1) block is
// block(1,0) (x) conj(block(1,0)) expressed in the Hermitian real basis
// {E11, E22, E12+E21, i(E12-E21)}, which keeps it an exact real matrix.
TorusAutomorphism torus_from_matrix(const GaussMat& a, const std::string& label);

// Exact inverse of a unit-determinant 2x2 Gaussian matrix.
GaussMat torus_inverse_matrix(const GaussMat& a);

struct LatticeIsometry {
    IntMat M;  // integer isometry: M^T G M == G
    IntMat G;  // integer symmetric intersection form
    std::string label;
};

// The H^{1,1} fragment carried by an isometry instance; operations that
// need the full bigraded action refuse fragments.
struct SurfaceFragment {
    CRatMat h11;
    std::string label;
};

// Checks M^T G M == G exactly and wraps M as a (1,1) block.
SurfaceFragment isometry_action(const LatticeIsometry& iso);

struct ProductAutomorphism {
    std::vector<KunnethBlock> kunneth;  // F* on H^{k,k}(X x X), factored
    IntMat real8;                       // A_real^{-1} (+) A_real on R^8/Z^8
    double dominant_radius = 0.0;
    double dominant_error = 0.0;
};

// F(x, y) = (f^{-1}(x), f(y)); requires a hyperbolic instance.
ProductAutomorphism product_automorphism(const TorusAutomorphism& t);

// The rank-10 hyperbolic lattice instance whose Coxeter element realizes
// the smallest known Salem number: returns (M, G) with M^T G M == G and G
// of signature (1,9).
LatticeIsometry coxeter_rank10_isometry();

// -------- catalog files --------

using CatalogInstance = std::variant<TorusAutomorphism, LatticeIsometry>;

struct Catalog {
    std::vector<CatalogInstance> instances;

    const CatalogInstance* find(const std::string& label) const;
};

std::string instance_label(const CatalogInstance& inst);

Catalog load_catalog_file(const std::string& path);
Catalog catalog_from_json_string(const std::string& text);

}  // namespace dynmix

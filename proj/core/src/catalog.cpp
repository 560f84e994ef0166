#include "dynmix/catalog.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dynmix {

namespace {

GaussInt gauss_det2(const GaussMat& a) {
    return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
}

IntMat real_representation(const GaussMat& a) {
    IntMat r(4, 4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            r(2 * i, 2 * j) = a(i, j).re;
            r(2 * i, 2 * j + 1) = -a(i, j).im;
            r(2 * i + 1, 2 * j) = a(i, j).im;
            r(2 * i + 1, 2 * j + 1) = a(i, j).re;
        }
    return r;
}

// Change of basis taking the Hermitian real structure of H^{1,1} to a real
// matrix: columns E11, E22, E12+E21, i(E12-E21) in the (i,j) -> 2i+j basis.
CRatMat hermitian_basis() {
    CRatMat s(4, 4);
    s(0, 0) = CRat(1);
    s(3, 1) = CRat(1);
    s(1, 2) = CRat(1);
    s(2, 2) = CRat(1);
    s(1, 3) = CRat(Rat(0), Rat(1));
    s(2, 3) = CRat(Rat(0), Rat(-1));
    return s;
}

}  // namespace

TorusAutomorphism torus_from_matrix(const GaussMat& a, const std::string& label) {
    if (a.rows() != 2 || a.cols() != 2)
        throw schema_error("torus matrix must be 2x2 over Z[i]");
    const GaussInt d = gauss_det2(a);
    if (!is_gauss_unit(d))
        throw schema_error("torus matrix determinant is not a Gaussian unit: instance '" + label +
                           "'");

    TorusAutomorphism t;
    t.A = a;
    t.label = label;
    t.A_real = real_representation(a);

    const CRatMat m = to_crat(a).transpose();       // block(1,0) = A^T
    const CRatMat mc = m.conjugate();
    const CRat dc{d};
    const CRat dconj = conj(dc);

    HodgeAction h(2, label);
    h.block(0, 0) = CRatMat::identity(1);
    h.block(2, 2) = CRatMat::identity(1);  // |det|^2 = 1
    h.block(1, 0) = m;
    h.block(0, 1) = mc;
    CRatMat det_block(1, 1), det_block_conj(1, 1);
    det_block(0, 0) = dc;
    det_block_conj(0, 0) = dconj;
    h.block(2, 0) = det_block;
    h.block(0, 2) = det_block_conj;
    h.block(2, 1) = mc.scaled(dc);
    h.block(1, 2) = m.scaled(dconj);

    const CRatMat s = hermitian_basis();
    const CRatMat t11 = invert(s) * kron(m, mc) * s;
    if (!is_real(t11))
        throw schema_error("internal: (1,1) block not real in the Hermitian basis");
    h.block(1, 1) = t11;
    h.validate();
    t.hodge = std::move(h);

    const SpectralRadius sr = spectral_radius(t.hodge.block(1, 1), /*require_invertible=*/true);
    t.d1 = sr.value;
    t.hyperbolic = sr.value - sr.error > 1.0;
    if (!t.hyperbolic && sr.error > 0 && sr.value + sr.error > 1.0)
        throw undecidable_error("hyperbolicity of '" + label + "' undecidable at tolerance");
    return t;
}

GaussMat torus_inverse_matrix(const GaussMat& a) {
    if (a.rows() != 2 || a.cols() != 2) throw schema_error("torus matrix must be 2x2");
    const GaussInt d = gauss_det2(a);
    if (!is_gauss_unit(d)) throw schema_error("torus matrix determinant is not a Gaussian unit");
    const GaussInt dinv = conj(d);  // 1/u == conj(u) for Gaussian units
    GaussMat inv(2, 2);
    inv(0, 0) = a(1, 1) * dinv;
    inv(0, 1) = -a(0, 1) * dinv;
    inv(1, 0) = -a(1, 0) * dinv;
    inv(1, 1) = a(0, 0) * dinv;
    return inv;
}

SurfaceFragment isometry_action(const LatticeIsometry& iso) {
    if (!iso.M.square() || !iso.G.square() || iso.M.rows() != iso.G.rows())
        throw schema_error("isometry: M and G must be square of equal size");
    if (!(iso.G == iso.G.transpose()))
        throw schema_error("isometry: form G is not symmetric");
    if (!(iso.M.transpose() * iso.G * iso.M == iso.G))
        throw schema_error("isometry identity M^T G M == G fails for '" + iso.label + "'");
    SurfaceFragment f;
    f.h11 = to_crat(iso.M);
    f.label = iso.label;
    return f;
}

ProductAutomorphism product_automorphism(const TorusAutomorphism& t) {
    if (!t.hyperbolic)
        throw hypothesis_error("product automorphism requires a hyperbolic instance: '" +
                               t.label + "'");
    ProductAutomorphism p;
    p.kunneth = kunneth_action(invert_action(t.hodge), t.hodge);
    for (const auto& b : p.kunneth)
        if (b.radius > p.dominant_radius) {
            p.dominant_radius = b.radius;
            p.dominant_error = b.radius_error;
        }

    const CRatMat ainv = invert(to_crat(t.A_real));
    p.real8 = IntMat(8, 8);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const CRat& v = ainv(i, j);
            if (!v.is_real() || v.re.get_den() != 1)
                throw schema_error("internal: A_real inverse is not integral");
            p.real8(i, j) = v.re.get_num();
            p.real8(4 + i, 4 + j) = t.A_real(i, j);
        }
    return p;
}

LatticeIsometry coxeter_rank10_isometry() {
    // tree with arms of lengths 2, 3 and 7 about the branch node: a chain
    // 0-1-...-8 with node 9 attached to node 2
    const int n = 10;
    IntMat cartan(n, n);
    auto link = [&](int a, int b) {
        cartan(a, b) = -1;
        cartan(b, a) = -1;
    };
    for (int i = 0; i < n; ++i) cartan(i, i) = 2;
    for (int i = 0; i < 8; ++i) link(i, i + 1);
    link(2, 9);

    IntMat w = IntMat::identity(n);
    for (int i = 0; i < n; ++i) {
        // s_i = I - e_i * (row i of the Cartan matrix)
        IntMat s = IntMat::identity(n);
        for (int j = 0; j < n; ++j) s(i, j) -= cartan(i, j);
        w = s * w;
    }

    LatticeIsometry iso;
    iso.M = w;
    iso.G = IntMat(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) iso.G(i, j) = -cartan(i, j);
    iso.label = "coxeter-rank10";
    return iso;
}

// ---------------------------------------------------------------------------
// catalog files
// ---------------------------------------------------------------------------

std::string instance_label(const CatalogInstance& inst) {
    return std::visit([](const auto& x) { return x.label; }, inst);
}

const CatalogInstance* Catalog::find(const std::string& label) const {
    for (const auto& inst : instances)
        if (instance_label(inst) == label) return &inst;
    return nullptr;
}

namespace {

using nlohmann::json;

Int int_from_json(const json& v) {
    if (v.is_number_integer()) return Int(std::to_string(v.get<long long>()));
    if (v.is_string()) return Int(v.get<std::string>());
    throw schema_error("catalog: expected integer");
}

IntMat int_matrix_from_json(const json& rows) {
    if (!rows.is_array() || rows.empty()) throw schema_error("catalog: expected integer matrix");
    IntMat m(rows.size(), rows.at(0).size());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto& row = rows.at(i);
        if (!row.is_array() || row.size() != m.cols())
            throw schema_error("catalog: ragged integer matrix");
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = int_from_json(row.at(j));
    }
    return m;
}

}  // namespace

Catalog catalog_from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw schema_error(std::string("catalog JSON parse: ") + e.what());
    }
    if (!j.is_array()) throw schema_error("catalog: top level must be a list of instances");
    Catalog cat;
    try {
        for (const auto& entry : j) {
            const std::string type = entry.at("type").get<std::string>();
            const std::string label = entry.at("label").get<std::string>();
            if (cat.find(label)) throw schema_error("catalog: duplicate label '" + label + "'");
            if (type == "torus") {
                const auto& rows = entry.at("A");
                if (!rows.is_array() || rows.size() != 2)
                    throw schema_error("catalog: torus A must be 2x2");
                GaussMat a(2, 2);
                for (std::size_t i = 0; i < 2; ++i) {
                    if (!rows.at(i).is_array() || rows.at(i).size() != 2)
                        throw schema_error("catalog: torus A must be 2x2");
                    for (std::size_t jj = 0; jj < 2; ++jj) {
                        const auto& cell = rows.at(i).at(jj);
                        if (!cell.is_array() || cell.size() != 2)
                            throw schema_error("catalog: torus entries are [re, im] pairs");
                        a(i, jj) = GaussInt(int_from_json(cell.at(0)), int_from_json(cell.at(1)));
                    }
                }
                cat.instances.push_back(torus_from_matrix(a, label));
            } else if (type == "isometry") {
                LatticeIsometry iso;
                iso.M = int_matrix_from_json(entry.at("M"));
                iso.G = int_matrix_from_json(entry.at("G"));
                iso.label = label;
                isometry_action(iso);  // validates the isometry identity
                cat.instances.push_back(std::move(iso));
            } else {
                throw schema_error("catalog: unknown instance type '" + type + "'");
            }
        }
    } catch (const json::exception& e) {
        throw schema_error(std::string("catalog JSON shape: ") + e.what());
    }
    return cat;
}

Catalog load_catalog_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw schema_error("cannot open catalog file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return catalog_from_json_string(ss.str());
}

}  // namespace dynmix

// Acceptance suite: one criterion per function, each printing a single
// pass/fail line.  Tolerances and time budgets are pinned here, not
// calibrated later.  Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "../tools/commands.hpp"
#include "helpers.hpp"

using namespace dynmix;
namespace fs = std::filesystem;

namespace {

std::string g_catalog_path = "data/catalog.json";

std::vector<TorusAutomorphism> catalog_tori() {
    return {testutil::cat_map(), testutil::torus_3211(), testutil::torus_gauss(),
            testutil::torus_shear(), testutil::torus_identity()};
}

#define REQUIRE_MSG(cond, ...)                                   \
    do {                                                         \
        if (!(cond)) {                                           \
            char buf_[256];                                      \
            std::snprintf(buf_, sizeof buf_, __VA_ARGS__);       \
            why = buf_;                                          \
            return false;                                        \
        }                                                        \
    } while (0)

// d = (1, (7+3*sqrt 5)/2, 1) to 1e-9
bool degree_exactness(std::string& why) {
    TorusAutomorphism t = testutil::cat_map();
    DegreeProfile prof = degree_profile(t.hodge);
    const double expected = (7.0 + 3.0 * std::sqrt(5.0)) / 2.0;
    REQUIRE_MSG(prof.degrees.size() == 3, "wrong profile length");
    REQUIRE_MSG(std::abs(prof.degrees[0] - 1.0) <= 1e-9, "d_0 off");
    REQUIRE_MSG(std::abs(prof.degrees[1] - expected) <= 1e-9, "d_1 = %.15g vs %.15g",
                prof.degrees[1], expected);
    REQUIRE_MSG(std::abs(prof.degrees[2] - 1.0) <= 1e-9, "d_2 off");
    for (double r : prof.radii) REQUIRE_MSG(r <= 1e-9, "radius above 1e-9");
    return true;
}

// d_q^2 >= d_{q-1} d_{q+1} - 1e-9 on the catalog and 50 random instances
bool log_concavity(std::string& why) {
    std::vector<TorusAutomorphism> pool = catalog_tori();
    std::mt19937_64 rng(20240817);
    for (int i = 0; i < 50; ++i)
        pool.push_back(torus_from_matrix(testutil::random_torus_matrix(rng), "rand"));
    for (const auto& t : pool) {
        DegreeProfile prof = degree_profile(t.hodge);
        for (std::size_t q = 1; q + 1 < prof.degrees.size(); ++q)
            REQUIRE_MSG(prof.degrees[q] * prof.degrees[q] >=
                            prof.degrees[q - 1] * prof.degrees[q + 1] - 1e-9,
                        "log-concavity fails at q=%zu", q);
    }
    return true;
}

// d_q(f) == d_{k-q}(f^{-1}) within combined certification radii
bool poincare_duality(std::string& why) {
    std::vector<TorusAutomorphism> pool = catalog_tori();
    std::mt19937_64 rng(424243);
    for (int i = 0; i < 12; ++i)
        pool.push_back(torus_from_matrix(testutil::random_torus_matrix(rng), "rand"));
    for (const auto& t : pool) {
        DegreeProfile fwd = degree_profile(t.hodge);
        DegreeProfile bwd = degree_profile(invert_action(t.hodge));
        const int k = t.hodge.dim;
        for (int q = 0; q <= k; ++q)
            REQUIRE_MSG(std::abs(fwd.degrees[q] - bwd.degrees[k - q]) <=
                            fwd.radii[q] + bwd.radii[k - q],
                        "duality fails at q=%d on '%s'", q, t.label.c_str());
    }
    return true;
}

// dominant block radius == d_p^2 (1e-6 relative); others <= d_p * delta_0
bool kunneth_dominance(std::string& why) {
    const double margin = 1e-3;
    for (const auto& t :
         {testutil::cat_map(), testutil::torus_3211(), testutil::torus_gauss()}) {
        DegreeProfile prof = degree_profile(t.hodge);
        const double dp = prof.degrees[prof.p];
        const double delta0 = prof.second_modulus * (1.0 + margin);
        ProductAutomorphism pa = product_automorphism(t);
        REQUIRE_MSG(std::abs(pa.dominant_radius - dp * dp) <= 1e-6 * dp * dp,
                    "dominant radius %.12g vs d_p^2 %.12g on '%s'", pa.dominant_radius, dp * dp,
                    t.label.c_str());
        for (const auto& b : pa.kunneth) {
            if (b.r == 1 && b.s == 1) continue;
            REQUIRE_MSG(b.radius <= dp * delta0 + 1e-9,
                        "block (%d,%d) radius %.12g above d_p*delta_0 %.12g on '%s'", b.r, b.s,
                        b.radius, dp * delta0, t.label.c_str());
        }
    }
    return true;
}

// fitted slope of |d_p^{-n} M^n - L_inf| within 5% of -log(d_p/second)
bool projector_rate(std::string& why) {
    struct Case {
        CRatMat m;
        double expected;
        const char* name;
    };
    const double log2 = std::log(2.0);
    std::vector<Case> cases;
    cases.push_back({testutil::cat_map().hodge.block(1, 1),
                     -std::log((7.0 + 3.0 * std::sqrt(5.0)) / 2.0), "cat-map H11"});
    cases.push_back({testutil::int_mat({{2, 0}, {0, 1}}), -log2, "diag(2,1)"});
    cases.push_back({testutil::int_mat({{4, -2, 2}, {0, 2, -1}, {0, 0, 1}}), -log2,
                     "spectrum {4,2,1}"});
    for (const auto& c : cases) {
        ConvergenceRate r = projector_convergence_rate(c.m, 60);
        REQUIRE_MSG(std::abs(r.slope - c.expected) <= 0.05 * std::abs(c.expected),
                    "%s slope %.9g vs %.9g", c.name, r.slope, c.expected);
    }
    return true;
}

// cat-map H^{1,1} moduli are {d_1, 1, 1, 1/d_1}
bool surface_spectrum(std::string& why) {
    TorusAutomorphism t = testutil::cat_map();
    REQUIRE_MSG(check_surface_spectrum(t.hodge.block(1, 1)), "structure check failed");
    DominantCheck dom = check_unique_dominant(t.hodge.block(1, 1));
    REQUIRE_MSG(dom.unique, "dominant not unique");
    REQUIRE_MSG(dom.second_bound.exact && *dom.second_bound.exact == 1,
                "second modulus is not exactly 1");
    return true;
}

// C_0 = 1/2 exactly, C_n = 0 exactly for 1 <= n <= 30
bool exact_mixing_oracle(std::string& why) {
    TorusAutomorphism t = testutil::cat_map();
    TestFunction phi = cosine_function({1, 0, 0, 0});
    CorrelationSeries s = correlation_exact(t, phi, phi, 30);
    REQUIRE_MSG(s.entries[0].value == 0.5, "C_0 != 1/2 exactly");
    for (int n = 1; n <= 30; ++n)
        REQUIRE_MSG(s.entries[n].value == 0.0 && s.entries[n].abs_error == 0.0,
                    "C_%d not exactly zero", n);
    return true;
}

// |C^MC_n - C^exact_n| <= 4/sqrt(N) for n <= 12, N = 1e5, three instances
bool monte_carlo_consistency(std::string& why) {
    const std::int64_t N = 100000;
    const double tol = 4.0 / std::sqrt(static_cast<double>(N));
    TestFunction phi = cosine_function({1, 0, 0, 0});
    int which = 0;
    for (const auto& t :
         {testutil::cat_map(), testutil::torus_3211(), testutil::torus_gauss()}) {
        CorrelationSeries exact = correlation_exact(t, phi, phi, 12);
        CorrelationSeries mc = correlation_montecarlo(t, phi, phi, 12, N, 123456 + which++);
        for (int n = 0; n <= 12; ++n)
            REQUIRE_MSG(std::abs(mc.entries[n].value - exact.entries[n].value) <= tol,
                        "disagreement at n=%d on '%s': %.6g", n, t.label.c_str(),
                        std::abs(mc.entries[n].value - exact.entries[n].value));
    }
    return true;
}

// power-law pair, beta = beta' = 2, delta = 2: finite A, bound at every n
bool theorem_bound_check(std::string& why) {
    TorusAutomorphism t = testutil::cat_map();
    GapCertificate gap = gap_certificate(t.hodge);
    TestFunction phi = make_holder_function(2.0, 2, 7);
    TestFunction psi = make_holder_function(2.0, 2, 8);
    BoundParams bound =
        theorem_bound(gap, 2.0, 2.0, 2.0, phi.norm_holder_bound(), psi.norm_holder_bound());
    const double expected_base = std::sqrt(gap.d_p / 2.0);
    REQUIRE_MSG(std::abs(bound.base - expected_base) <= 1e-12, "base mismatch");

    CorrelationSeries s = correlation_exact(t, phi, psi, 30);
    BoundReport r = fit_and_check(s, bound);
    REQUIRE_MSG(std::isfinite(r.fitted_A), "fitted_A not finite");
    REQUIRE_MSG(r.holds, "bound does not hold");
    for (const auto& e : s.entries) {
        const double rhs = r.fitted_A * bound.scale * std::pow(bound.base, -e.n);
        REQUIRE_MSG(std::abs(e.value) + e.abs_error <= rhs * (1 + 1e-12),
                    "bound violated at n=%d (parity %d)", e.n, e.n % 2);
    }
    return true;
}

// refined threshold degeneracy + parity-pair existence across a grid
bool refined_delta_suite(std::string& why) {
    std::mt19937_64 rng(5150);
    for (int i = 0; i < 20; ++i) {
        const double a = 1.0 + 9.0 * ((rng() >> 11) * 0x1.0p-53);
        if (a <= 1.0) continue;
        REQUIRE_MSG(std::abs(refined_delta_threshold(a, a) - a) <= 1e-12,
                    "threshold(a,a) != a at a=%.17g", a);
    }
    for (int i = 1; i <= 10; ++i)
        for (int j = 1; j <= 10; ++j) {
            const double dp = 1.1 + (8.0 - 1.1) * i / 10.0;
            const double dm = 1.1 + (8.0 - 1.1) * j / 10.0;
            const double thr = refined_delta_threshold(dp, dm);
            auto above = find_parity_pair(dp, dm, thr * 1.05, 200);
            REQUIRE_MSG(above.has_value(), "no pair above threshold at (%.3g, %.3g)", dp, dm);
            const auto [l, m] = *above;
            REQUIRE_MSG(std::max(l * std::log(dp), m * std::log(dm)) <
                            0.5 * (l + m) * std::log(thr * 1.05),
                        "returned pair violates the inequality");
            auto below = find_parity_pair(dp, dm, thr * 0.95, 200);
            REQUIRE_MSG(!below.has_value(), "pair below threshold at (%.3g, %.3g)", dp, dm);
        }
    return true;
}

// repeated cmd_mix runs produce byte-identical CSV/JSON
bool determinism(std::string& why) {
    namespace cli = dynmix::cli;
    auto run_once = [&](const fs::path& dir) {
        cli::RunConfig cfg;
        cfg.catalog_path = g_catalog_path;
        cfg.instance = "cat-map";
        cfg.n_max = 16;
        cfg.samples = 2000;
        cfg.seed = 99;
        cfg.delta = 2.0;
        cfg.beta = 2.0;
        cfg.beta_prime = 2.0;
        cfg.radius = 1;
        cfg.out_dir = dir.string();
        cfg.svg = true;
        std::ostringstream sink;
        return cli::cmd_mix(cfg, sink);
    };
    const fs::path d1 = fs::temp_directory_path() / "dynmix_acc_det1";
    const fs::path d2 = fs::temp_directory_path() / "dynmix_acc_det2";
    fs::remove_all(d1);
    fs::remove_all(d2);
    REQUIRE_MSG(run_once(d1) == 0, "first run failed");
    REQUIRE_MSG(run_once(d2) == 0, "second run failed");
    for (const char* name : {"mix_cat-map.json", "mix_cat-map.csv", "mix_cat-map.svg"}) {
        std::ifstream fa(d1 / name, std::ios::binary), fb(d2 / name, std::ios::binary);
        std::ostringstream sa, sb;
        sa << fa.rdbuf();
        sb << fb.rdbuf();
        REQUIRE_MSG(!sa.str().empty(), "missing output %s", name);
        REQUIRE_MSG(sa.str() == sb.str(), "outputs differ: %s", name);
    }
    return true;
}

struct Criterion {
    const char* name;
    std::function<bool(std::string&)> fn;
    double budget_seconds;
};

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_catalog_path = argv[1];

    const std::vector<Criterion> criteria = {
        {"degree-exactness", degree_exactness, 1.0},
        {"log-concavity", log_concavity, 10.0},
        {"poincare-duality", poincare_duality, 10.0},
        {"kunneth-dominance", kunneth_dominance, 5.0},
        {"projector-rate", projector_rate, 30.0},
        {"surface-spectrum", surface_spectrum, 1.0},
        {"exact-mixing-oracle", exact_mixing_oracle, 1.0},
        {"monte-carlo-consistency", monte_carlo_consistency, 60.0},
        {"theorem-bound", theorem_bound_check, 120.0},
        {"refined-delta", refined_delta_suite, 10.0},
        {"determinism", determinism, 120.0},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        std::string why;
        bool ok = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            ok = c.fn(why);
        } catch (const std::exception& e) {
            why = e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok && secs > c.budget_seconds) {
            ok = false;
            why = "over time budget";
        }
        std::printf("[%s] %-24s (%.3f s%s)\n", ok ? "PASS" : "FAIL", c.name, secs,
                    why.empty() ? "" : (std::string("; ") + why).c_str());
        if (!ok) ++failures;
    }
    return failures;
}

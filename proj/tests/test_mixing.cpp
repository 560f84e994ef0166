#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace dynmix;

TEST_CASE("test function norms and validation") {
    TestFunction c = cosine_function({1, 0, 0, 0});
    CHECK(c.norm_c0_bound() == 1.0);
    CHECK(c.norm_c2_bound() == doctest::Approx(1.0 + 4 * M_PI * M_PI).epsilon(1e-12));
    CHECK(c.norm_c0_bound() <= c.norm_c2_bound());

    // interpolation endpoints and log-linearity in beta
    TestFunction f = c;
    f.holder_beta = 0;
    CHECK(f.norm_holder_bound() == f.norm_c0_bound());
    f.holder_beta = 2;
    CHECK(f.norm_holder_bound() == f.norm_c2_bound());
    double prev = 0;
    for (double beta = 0; beta <= 2.0001; beta += 0.25) {
        f.holder_beta = beta;
        const double cur = f.norm_holder_bound();
        CHECK(cur >= prev);  // monotone between the endpoint bounds
        const double expected = std::pow(f.norm_c0_bound(), 1 - beta / 2) *
                                std::pow(f.norm_c2_bound(), beta / 2);
        CHECK(cur == doctest::Approx(expected).epsilon(1e-12));
        prev = cur;
    }

    TestFunction broken;
    broken.coeffs[{1, 0, 0, 0}] = {0.5, 0.25};
    CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
}

TEST_CASE("holder function generator") {
    TestFunction f = make_holder_function(2.0, 1, 9001);
    CHECK(f.coeffs.size() == 80);  // 3^4 - 1 nonzero frequencies in the radius-1 box
    f.validate();
    CHECK(f.norm_holder_bound() == f.norm_c2_bound());  // beta = 2 endpoint

    TestFunction g = make_holder_function(2.0, 1, 9001);
    CHECK(f.id == g.id);
    CHECK(f.coeffs == g.coeffs);  // bit-exact reproducibility

    TestFunction h = make_holder_function(2.0, 1, 9002);
    CHECK(f.coeffs != h.coeffs);

    CHECK_THROWS_AS(make_holder_function(0.0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_holder_function(2.5, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_holder_function(1.0, 0, 1), std::invalid_argument);
}

TEST_CASE("exact correlations: finite-support oracle") {
    TorusAutomorphism t = testutil::cat_map();
    TestFunction phi = cosine_function({1, 0, 0, 0});

    CorrelationSeries s = correlation_exact(t, phi, phi, 30);
    REQUIRE(s.entries.size() == 31);
    CHECK(s.entries[0].value == 0.5);
    for (int n = 1; n <= 30; ++n) {
        CHECK(s.entries[n].value == 0.0);
        CHECK(s.entries[n].abs_error == 0.0);
    }

    // centering: constant psi correlates to zero
    TestFunction constant;
    constant.mean = 3.25;
    CorrelationSeries sc = correlation_exact(t, phi, constant, 10);
    for (const auto& e : sc.entries) CHECK(e.value == 0.0);

    // single-frequency transport: psi at A^T e_1 = (2,0,1,0) fires only at n=1
    TestFunction psi = cosine_function({2, 0, 1, 0});
    CorrelationSeries st = correlation_exact(t, phi, psi, 12);
    CHECK(st.entries[0].value == 0.0);
    CHECK(st.entries[1].value == 0.5);
    for (int n = 2; n <= 12; ++n) CHECK(st.entries[n].value == 0.0);

    CHECK_THROWS_AS(correlation_exact(testutil::torus_shear(), phi, phi, 5), hypothesis_error);
}

TEST_CASE("correlation symmetry under inversion") {
    for (const auto& t : {testutil::cat_map(), testutil::torus_gauss()}) {
        TorusAutomorphism ti = torus_from_matrix(torus_inverse_matrix(t.A), t.label + "-inv");
        TestFunction phi = make_holder_function(2.0, 1, 5);
        TestFunction psi = make_holder_function(1.5, 1, 6);
        CorrelationSeries fwd = correlation_exact(t, phi, psi, 14);
        CorrelationSeries bwd = correlation_exact(ti, psi, phi, 14);
        for (int n = 0; n <= 14; ++n) CHECK(fwd.entries[n].value == bwd.entries[n].value);
    }
}

TEST_CASE("finite supports always decay to exact zero") {
    for (const auto& t :
         {testutil::cat_map(), testutil::torus_3211(), testutil::torus_gauss()}) {
        TestFunction phi = make_holder_function(2.0, 2, 17);
        TestFunction psi = make_holder_function(2.0, 2, 18);
        CorrelationSeries s = correlation_exact(t, phi, psi, 25);
        int first_zero_tail = 0;
        for (int n = 25; n >= 0 && s.entries[n].value == 0.0; --n) first_zero_tail = n;
        CHECK(first_zero_tail > 0);
        CHECK(first_zero_tail <= 20);  // the transported support leaves the box quickly
        for (int n = first_zero_tail; n <= 25; ++n) CHECK(s.entries[n].value == 0.0);
    }
}

TEST_CASE("Monte Carlo estimator") {
    TorusAutomorphism t = testutil::cat_map();
    TestFunction phi = cosine_function({1, 0, 0, 0});

    CHECK_THROWS_AS(correlation_montecarlo(t, phi, phi, 4, 100, 1), std::invalid_argument);

    CorrelationSeries exact = correlation_exact(t, phi, phi, 8);
    CorrelationSeries mc = correlation_montecarlo(t, phi, phi, 8, 20000, 424242);
    const double tol = 4.0 / std::sqrt(20000.0);
    for (int n = 0; n <= 8; ++n) {
        CHECK(std::abs(mc.entries[n].value - exact.entries[n].value) <= tol);
        CHECK(mc.entries[n].abs_error >= 0.0);
    }

    // centering kills constants up to floating cancellation noise
    TestFunction constant;
    constant.mean = 2.5;
    CorrelationSeries cc = correlation_montecarlo(t, phi, constant, 6, 20000, 31415);
    for (const auto& e : cc.entries) CHECK(std::abs(e.value) <= tol);

    // determinism: same seed, bitwise identical values and error bars
    CorrelationSeries mc2 = correlation_montecarlo(t, phi, phi, 8, 20000, 424242);
    for (int n = 0; n <= 8; ++n) {
        CHECK(mc.entries[n].value == mc2.entries[n].value);
        CHECK(mc.entries[n].abs_error == mc2.entries[n].abs_error);
    }

    // root-N law: quadrupling the sample count halves the bars within x1.5
    TestFunction rough = make_holder_function(1.0, 1, 77);
    CorrelationSeries small = correlation_montecarlo(t, rough, rough, 6, 4000, 5);
    CorrelationSeries big = correlation_montecarlo(t, rough, rough, 6, 16000, 5);
    for (int n = 0; n <= 6; ++n) {
        if (small.entries[n].abs_error == 0.0) continue;
        const double ratio = big.entries[n].abs_error / small.entries[n].abs_error;
        CHECK(ratio <= 0.5 * 1.5);
        CHECK(ratio >= 0.5 / 1.5);
    }
}

TEST_CASE("theorem bound parameters") {
    TorusAutomorphism t = testutil::cat_map();
    GapCertificate gap = gap_certificate(t.hodge);

    BoundParams b = theorem_bound(gap, 2.0, 2.0, 2.0, 1.0, 1.0);
    CHECK(b.base == doctest::Approx(1.851229586821916).epsilon(1e-12));
    CHECK(b.scale == 1.0);

    // beta' = 0 degenerates to a non-decaying but valid bound
    BoundParams flat = theorem_bound(gap, 2.0, 2.0, 0.0, 1.0, 1.0);
    CHECK(flat.base == 1.0);

    CHECK_THROWS_AS(theorem_bound(gap, gap.d_p * 1.01, 2, 2, 1, 1), hypothesis_error);
    CHECK_THROWS_AS(theorem_bound(gap, 0.5, 2, 2, 1, 1), hypothesis_error);
    CHECK_THROWS_AS(theorem_bound(gap, 2.0, 3.0, 2.0, 1, 1), std::domain_error);
}

TEST_CASE("fit and check") {
    TorusAutomorphism t = testutil::cat_map();
    GapCertificate gap = gap_certificate(t.hodge);

    // finite-support pair: everything vanishes after n = 0
    TestFunction phi = cosine_function({1, 0, 0, 0});
    BoundParams bound =
        theorem_bound(gap, 2.0, 2.0, 2.0, phi.norm_holder_bound(), phi.norm_holder_bound());
    CorrelationSeries s = correlation_exact(t, phi, phi, 20);
    BoundReport r = fit_and_check(s, bound);
    CHECK(r.holds);
    CHECK(r.decayed_to_zero);
    CHECK(std::isinf(r.empirical_rate_odd));

    // power-law pair: the one-sided inequality holds with a finite constant
    TestFunction f = make_holder_function(2.0, 2, 7);
    TestFunction g = make_holder_function(2.0, 2, 8);
    BoundParams pb = theorem_bound(gap, 2.0, 2.0, 2.0, f.norm_holder_bound(),
                                   g.norm_holder_bound());
    CorrelationSeries ps = correlation_exact(t, f, g, 30);
    BoundReport pr = fit_and_check(ps, pb);
    CHECK(pr.holds);
    CHECK(std::isfinite(pr.fitted_A));
    for (const auto& e : ps.entries)
        CHECK(std::abs(e.value) + e.abs_error <=
              pr.fitted_A * pb.scale * std::pow(pb.base, -e.n) * (1 + 1e-12));

    CHECK_THROWS_AS(fit_and_check(CorrelationSeries{}, pb), hypothesis_error);
}

TEST_CASE("bound holds across Holder classes and admissible deltas") {
    TorusAutomorphism t = testutil::cat_map();
    GapCertificate gap = gap_certificate(t.hodge);
    const double betas[] = {0.5, 1.0, 1.5, 2.0};
    const double deltas[] = {1.5, 3.0, 6.0};
    TestFunction f = make_holder_function(1.5, 1, 11);
    TestFunction g = make_holder_function(1.0, 1, 12);
    CorrelationSeries s = correlation_exact(t, f, g, 20);
    for (double beta : betas)
        for (double delta : deltas) {
            f.holder_beta = beta;
            BoundParams b =
                theorem_bound(gap, delta, beta, g.holder_beta, f.norm_holder_bound(),
                              g.norm_holder_bound());
            BoundReport r = fit_and_check(s, b);
            CHECK(r.holds);
            for (const auto& e : s.entries)
                CHECK(std::abs(e.value) + e.abs_error <=
                      r.fitted_A * b.scale * std::pow(b.base, -e.n) * (1 + 1e-12));
        }
}

TEST_CASE("report serialization and plots are deterministic") {
    TorusAutomorphism t = testutil::cat_map();
    GapCertificate gap = gap_certificate(t.hodge);
    TestFunction f = make_holder_function(2.0, 1, 7);
    BoundParams b = theorem_bound(gap, 2.0, 2.0, 2.0, f.norm_holder_bound(),
                                  f.norm_holder_bound());
    CorrelationSeries s = correlation_exact(t, f, f, 16);
    BoundReport r = fit_and_check(s, b);

    CHECK(bound_report_json_string(r) == bound_report_json_string(r));
    CHECK(bound_report_json_string(r).find("\"schema\": \"v1\"") != std::string::npos);

    const std::string svg = correlation_svg(s, b, r.fitted_A);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg == correlation_svg(s, b, r.fitted_A));

    const std::string csv = correlation_csv_string(s);
    CHECK(csv.rfind("n,value,abs_error,method", 0) == 0);
    CHECK(csv == correlation_csv_string(s));
}

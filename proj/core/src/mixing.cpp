#include "dynmix/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dynmix {

BoundParams theorem_bound(const GapCertificate& gap, double delta, double beta,
                          double beta_prime, double norm_phi, double norm_psi) {
    if (beta < 0.0 || beta > 2.0 || beta_prime < 0.0 || beta_prime > 2.0)
        throw std::domain_error("beta and beta' must lie in [0, 2]");
    if (!(norm_phi > 0.0) || !(norm_psi > 0.0))
        throw std::domain_error("test function norms must be positive");
    if (!gap.admits(delta))
        throw hypothesis_error("delta outside the admissible spectral-gap interval");
    BoundParams p;
    p.base = std::pow(gap.d_p / delta, beta * beta_prime / 8.0);
    p.scale = norm_phi * norm_psi;
    p.d_p = gap.d_p;
    p.delta = delta;
    p.beta = beta;
    p.beta_prime = beta_prime;
    return p;
}

namespace {

constexpr double kCorrelationFloor = 1e-14;

double fit_rate(const std::vector<std::pair<int, double>>& pts) {
    if (pts.size() < 2) return -std::numeric_limits<double>::infinity();
    double mx = 0, my = 0;
    for (const auto& [n, y] : pts) mx += n, my += y;
    mx /= pts.size();
    my /= pts.size();
    double sxx = 0, sxy = 0;
    for (const auto& [n, y] : pts) {
        sxx += (n - mx) * (n - mx);
        sxy += (n - mx) * (y - my);
    }
    if (sxx == 0) return -std::numeric_limits<double>::infinity();
    return sxy / sxx;
}

}  // namespace

BoundReport fit_and_check(const CorrelationSeries& series, const BoundParams& bound) {
    if (series.entries.empty()) throw hypothesis_error("empty correlation series");
    BoundReport r;
    r.base = bound.base;
    r.delta = bound.delta;
    r.beta = bound.beta;
    r.beta_prime = bound.beta_prime;

    std::vector<std::pair<int, double>> even, odd;
    double fitted = 0.0;
    for (const auto& e : series.entries) {
        fitted = std::max(fitted, (std::abs(e.value) + e.abs_error) *
                                      std::pow(bound.base, e.n) / bound.scale);
        const double floor = std::max(3.0 * e.abs_error, kCorrelationFloor);
        if (std::abs(e.value) > floor) {
            auto& side = (e.n % 2 == 0) ? even : odd;
            side.emplace_back(e.n, std::log(std::abs(e.value)));
        }
    }
    r.fitted_A = fitted;
    r.holds = std::isfinite(fitted);
    // below two usable points per parity there is no fit window left
    r.decayed_to_zero = even.size() < 2 && odd.size() < 2;
    r.empirical_rate_even = fit_rate(even);
    r.empirical_rate_odd = fit_rate(odd);
    return r;
}

std::string bound_report_json_string(const BoundReport& r) {
    nlohmann::json j;
    j["schema"] = "v1";
    j["fitted_A"] = r.fitted_A;
    j["base"] = r.base;
    j["empirical_rate_even"] = r.empirical_rate_even;  // -inf serializes as null
    j["empirical_rate_odd"] = r.empirical_rate_odd;
    j["holds"] = r.holds;
    j["decayed_to_zero"] = r.decayed_to_zero;
    j["delta"] = r.delta;
    j["beta"] = r.beta;
    j["beta_prime"] = r.beta_prime;
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

namespace {

struct Frame {
    static constexpr double w = 640, h = 420;
    static constexpr double ml = 64, mr = 16, mt = 16, mb = 40;
    double x0, x1, y0, y1;  // data ranges

    double px(double x) const { return ml + (x - x0) / (x1 - x0) * (w - ml - mr); }
    double py(double y) const { return h - mb - (y - y0) / (y1 - y0) * (h - mt - mb); }
};

void fmt(std::ostringstream& os, const char* pattern, double a, double b) {
    char buf[128];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    os << buf;
}

}  // namespace

std::string correlation_svg(const CorrelationSeries& series, const BoundParams& bound,
                            double fitted_A) {
    const double kFloorLog = -16.0;
    Frame f;
    f.x0 = 0;
    f.x1 = 1;
    for (const auto& e : series.entries) f.x1 = std::max(f.x1, static_cast<double>(e.n));
    f.y0 = kFloorLog;
    f.y1 = 1.0;
    for (const auto& e : series.entries)
        if (std::abs(e.value) > 0)
            f.y1 = std::max(f.y1, std::log10(std::abs(e.value)) + 0.5);

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" "
          "viewBox=\"0 0 640 420\">\n";
    os << "<rect width=\"640\" height=\"420\" fill=\"white\"/>\n";
    // axes
    fmt(os, "<line x1=\"%.2f\" y1=\"%.2f\" ", f.px(f.x0), f.py(f.y0));
    fmt(os, "x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n", f.px(f.x1), f.py(f.y0));
    fmt(os, "<line x1=\"%.2f\" y1=\"%.2f\" ", f.px(f.x0), f.py(f.y0));
    fmt(os, "x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n", f.px(f.x0), f.py(f.y1));
    os << "<text x=\"300\" y=\"412\" font-size=\"12\" font-family=\"monospace\">n</text>\n";
    os << "<text x=\"8\" y=\"220\" font-size=\"12\" font-family=\"monospace\" "
          "transform=\"rotate(-90 14 220)\">log10 |C_n|</text>\n";

    // bound line log10(A * scale * base^-n)
    if (fitted_A > 0 && bound.scale > 0) {
        os << "<polyline fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"5,3\" points=\"";
        const double lA = std::log10(fitted_A * bound.scale);
        const double lb = std::log10(bound.base);
        for (int n = 0; n <= static_cast<int>(f.x1); ++n) {
            const double y = std::max(lA - n * lb, kFloorLog);
            fmt(os, "%.2f,%.2f ", f.px(n), f.py(y));
        }
        os << "\"/>\n";
    }

    for (const auto& e : series.entries) {
        if (std::abs(e.value) <= 0) continue;
        const double y = std::max(std::log10(std::abs(e.value)), kFloorLog);
        const char* color = e.method == CorrMethod::Exact ? "#1f77b4" : "#ff7f0e";
        fmt(os, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" ", f.px(e.n), f.py(y));
        os << "fill=\"" << color << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace dynmix

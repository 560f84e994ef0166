#include "commands.hpp"

#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include <dynmix/catalog.hpp>
#include <dynmix/correlation.hpp>
#include <dynmix/mixing.hpp>

namespace dynmix::cli {

using nlohmann::json;

void RunConfig::validate() const {
    if (!(tolerance > 0.0)) throw std::invalid_argument("--tolerance must be positive");
    if (!(margin_delta0 > 0.0)) throw std::invalid_argument("--margin-delta0 must be positive");
    if (n_max < 0) throw std::invalid_argument("--n-max must be nonnegative");
    if (radius < 0) throw std::invalid_argument("--radius must be nonnegative");
    if (samples != 0 && samples < 1000)
        throw std::invalid_argument("--samples below the minimum of 1000");
    if (samples > 0 && !seed)
        throw std::invalid_argument("--seed is required whenever Monte Carlo sampling runs");
}

namespace {

const CatalogInstance& find_instance(const Catalog& cat, const std::string& label) {
    const CatalogInstance* inst = cat.find(label);
    if (!inst) throw schema_error("unknown instance label: '" + label + "'");
    return *inst;
}

std::string sanitize(const std::string& s) {
    std::string out;
    for (char c : s) out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '-');
    return out;
}

void write_file(const std::string& dir, const std::string& name, const std::string& text) {
    std::filesystem::create_directories(dir);
    const std::string path = dir + "/" + name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw schema_error("cannot write output file: " + path);
    f << text;
}

json gap_json(const GapCertificate& g) {
    json j;
    j["d_p"] = g.d_p;
    j["lo"] = g.lo;
    j["hi"] = g.hi;
    j["delta_plus"] = g.delta_plus;
    j["delta_minus"] = g.delta_minus;
    j["hypothesis_unique_max"] = g.hypothesis_unique_max;
    j["hypothesis_multiplicity_one"] = g.hypothesis_multiplicity_one;
    j["nonempty"] = g.nonempty();
    // the harmonic-mean refined threshold needs both gap ends above 1; the
    // plain interval above remains the fallback when it does not apply
    if (g.delta_plus > 1.0 && g.delta_minus > 1.0)
        j["refined_threshold"] = refined_delta_threshold(g.delta_plus, g.delta_minus);
    else
        j["refined_threshold"] = nullptr;
    return j;
}

json profile_json(const DegreeProfile& p) {
    json j;
    j["degrees"] = p.degrees;
    j["radii"] = p.radii;
    j["p"] = p.p;
    j["is_unique_peak"] = p.is_unique_peak;
    j["second_modulus"] = p.second_modulus;
    j["delta_minus_floor"] = p.delta_minus_floor;
    j["multiplicity_one"] = p.multiplicity_one;
    return j;
}

}  // namespace

int cmd_degrees(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    Catalog cat = load_catalog_file(cfg.catalog_path);
    const CatalogInstance& inst = find_instance(cat, cfg.instance);

    json j;
    j["schema"] = "v1";
    j["command"] = "degrees";
    j["label"] = cfg.instance;
    int exit_code = 0;

    if (const auto* t = std::get_if<TorusAutomorphism>(&inst)) {
        DegreeProfile prof = degree_profile(t->hodge);
        j["type"] = "torus";
        j["profile"] = profile_json(prof);
        j["hyperbolic"] = t->hyperbolic;
        if (prof.is_unique_peak) {
            GapCertificate g = gap_certificate(t->hodge);
            j["gap"] = gap_json(g);
            j["entropy"] = entropy(t->hodge);
            if (!g.nonempty()) {
                j["status"] = "empty admissible interval";
                exit_code = 2;
            } else {
                j["status"] = "ok";
            }
        } else {
            j["gap"] = nullptr;
            j["status"] = "no unique peak";
            exit_code = 2;
        }
    } else {
        const auto& iso = std::get<LatticeIsometry>(inst);
        SurfaceFragment frag = isometry_action(iso);
        j["type"] = "isometry";
        j["fragment"] = true;
        SpectralRadius sr = spectral_radius(frag.h11, /*require_invertible=*/true);
        j["d1"] = sr.value;
        j["d1_radius"] = sr.error;
        if (sr.value - sr.error > 1.0) {
            // surfaces have d_0 = d_2 = 1; the fragment still certifies a gap
            DominantCheck dom = check_unique_dominant(frag.h11);
            JordanCheck jc = check_multiplicity_one(frag.h11);
            GapCertificate g;
            g.d_p = sr.value;
            g.delta_plus = dom.second_bound.exact ? dom.second_bound.exact->get_d()
                                                  : dom.second_bound.hi;
            g.delta_minus = 1.0;
            g.lo = std::max(g.delta_plus, g.delta_minus);
            g.hi = g.d_p;
            g.hypothesis_unique_max = dom.unique;
            g.hypothesis_multiplicity_one = jc.multiplicity_one;
            j["gap"] = gap_json(g);
            j["entropy"] = std::log(sr.value);
            j["salem_spectrum"] = check_surface_spectrum(frag.h11);
            j["status"] = g.nonempty() ? "ok" : "empty admissible interval";
            if (!g.nonempty()) exit_code = 2;
        } else {
            j["gap"] = nullptr;
            j["entropy"] = 0.0;
            j["status"] = "zero entropy fragment";
            exit_code = 2;
        }
    }

    const std::string text = j.dump(2) + "\n";
    out << text;
    if (!cfg.out_dir.empty())
        write_file(cfg.out_dir, "degrees_" + sanitize(cfg.instance) + ".json", text);
    return exit_code;
}

int cmd_kunneth(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    Catalog cat = load_catalog_file(cfg.catalog_path);
    const CatalogInstance& inst = find_instance(cat, cfg.instance);
    const auto* t = std::get_if<TorusAutomorphism>(&inst);
    if (!t)
        throw hypothesis_error("instance '" + cfg.instance +
                               "' carries only an H^{1,1} fragment; the Kunneth action "
                               "needs the full bigraded action of a torus instance");

    ProductAutomorphism pa = product_automorphism(*t);  // refuses non-hyperbolic
    DegreeProfile prof = degree_profile(t->hodge);
    const double dp2 = prof.degrees[prof.p] * prof.degrees[prof.p];

    json j;
    j["schema"] = "v1";
    j["command"] = "kunneth";
    j["label"] = cfg.instance;
    json blocks = json::array();
    for (const auto& b : pa.kunneth) {
        json bj;
        bj["r"] = b.r;
        bj["s"] = b.s;
        bj["radius"] = b.radius;
        bj["radius_error"] = b.radius_error;
        bj["rows_left"] = b.left.rows();
        bj["rows_right"] = b.right.rows();
        blocks.push_back(std::move(bj));
    }
    j["blocks"] = std::move(blocks);
    j["dominant_radius"] = pa.dominant_radius;
    j["d_p_squared"] = dp2;
    const double rel = std::abs(pa.dominant_radius - dp2) / dp2;
    j["dominant_relative_gap"] = rel;
    j["dominant_matches_dp2"] = rel <= 1e-6;
    j["status"] = "ok";

    const std::string text = j.dump(2) + "\n";
    out << text;
    if (!cfg.out_dir.empty())
        write_file(cfg.out_dir, "kunneth_" + sanitize(cfg.instance) + ".json", text);
    return 0;
}

int cmd_rate(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    Catalog cat = load_catalog_file(cfg.catalog_path);
    const CatalogInstance& inst = find_instance(cat, cfg.instance);

    CRatMat block;
    if (const auto* t = std::get_if<TorusAutomorphism>(&inst)) {
        DegreeProfile prof = degree_profile(t->hodge);
        if (!prof.is_unique_peak)
            throw hypothesis_error("instance '" + cfg.instance +
                                   "' has no unique peak degree; no rate to measure");
        block = t->hodge.block(prof.p, prof.p);
    } else {
        block = isometry_action(std::get<LatticeIsometry>(inst)).h11;
    }

    ConvergenceRate r = projector_convergence_rate(block, cfg.n_max);
    const double delta0 = r.second_modulus * (1.0 + cfg.margin_delta0);
    json j;
    j["schema"] = "v1";
    j["command"] = "rate";
    j["label"] = cfg.instance;
    j["d_p"] = r.d_p;
    j["second_modulus"] = r.second_modulus;
    j["slope"] = r.slope;
    j["theoretical_slope"] = r.theoretical;
    j["delta0"] = delta0;
    j["delta0_slope"] = delta0 > 0 ? -std::log(r.d_p / delta0)
                                   : -std::numeric_limits<double>::infinity();
    json samples = json::array();
    for (const auto& s : r.samples) {
        json sj;
        sj["n"] = s.n;
        sj["error"] = s.error_norm;
        sj["log_error"] = s.log_error;
        samples.push_back(std::move(sj));
    }
    j["samples"] = std::move(samples);
    j["status"] = "ok";

    const std::string text = j.dump(2) + "\n";
    out << text;
    if (!cfg.out_dir.empty())
        write_file(cfg.out_dir, "rate_" + sanitize(cfg.instance) + ".json", text);
    return 0;
}

int cmd_mix(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    if ((cfg.radius > 0 || cfg.samples > 0) && !cfg.seed)
        throw std::invalid_argument("--seed is required for generated pairs and sampling");
    if (!(cfg.delta > 0.0)) throw std::invalid_argument("--delta is required for mix");

    Catalog cat = load_catalog_file(cfg.catalog_path);
    const CatalogInstance& inst = find_instance(cat, cfg.instance);
    const auto* t = std::get_if<TorusAutomorphism>(&inst);
    if (!t)
        throw hypothesis_error("mixing runs need a torus instance (fragments carry no measure)");

    GapCertificate gap = gap_certificate(t->hodge);

    TestFunction phi, psi;
    if (cfg.radius == 0) {
        phi = cosine_function({1, 0, 0, 0});
        psi = cosine_function({1, 0, 0, 0});
        phi.holder_beta = cfg.beta;
        psi.holder_beta = cfg.beta_prime;
    } else {
        phi = make_holder_function(cfg.beta, cfg.radius, *cfg.seed);
        psi = make_holder_function(cfg.beta_prime, cfg.radius, *cfg.seed + 1);
    }

    BoundParams bound = theorem_bound(gap, cfg.delta, cfg.beta, cfg.beta_prime,
                                      phi.norm_holder_bound(), psi.norm_holder_bound());
    CorrelationSeries exact = correlation_exact(*t, phi, psi, cfg.n_max);
    BoundReport report = fit_and_check(exact, bound);

    CorrelationSeries all = exact;
    double mc_max_gap = 0.0;
    if (cfg.samples > 0) {
        CorrelationSeries mc =
            correlation_montecarlo(*t, phi, psi, cfg.n_max, cfg.samples, *cfg.seed);
        for (std::size_t i = 0; i < mc.entries.size(); ++i)
            mc_max_gap = std::max(mc_max_gap,
                                  std::abs(mc.entries[i].value - exact.entries[i].value));
        all.entries.insert(all.entries.end(), mc.entries.begin(), mc.entries.end());
        all.seed = mc.seed;
        all.samples = mc.samples;
    }

    json j = json::parse(bound_report_json_string(report));
    j["command"] = "mix";
    j["label"] = cfg.instance;
    j["phi"] = phi.id;
    j["psi"] = psi.id;
    j["norm_phi"] = phi.norm_holder_bound();
    j["norm_psi"] = psi.norm_holder_bound();
    j["n_max"] = cfg.n_max;
    j["samples"] = cfg.samples;
    j["seed"] = cfg.seed ? json(*cfg.seed) : json(nullptr);
    j["mc_max_abs_gap"] = cfg.samples > 0 ? json(mc_max_gap) : json(nullptr);

    const std::string text = j.dump(2) + "\n";
    out << text;
    const std::string stem = "mix_" + sanitize(cfg.instance);
    if (!cfg.out_dir.empty()) {
        write_file(cfg.out_dir, stem + ".json", text);
        write_file(cfg.out_dir, stem + ".csv", correlation_csv_string(all));
        if (cfg.svg)
            write_file(cfg.out_dir, stem + ".svg",
                       correlation_svg(all, bound, report.fitted_A));
    }
    return report.holds ? 0 : 2;
}

int cmd_validate_catalog(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    Catalog cat = load_catalog_file(cfg.catalog_path);

    json j;
    j["schema"] = "v1";
    j["command"] = "validate-catalog";
    json list = json::array();
    for (const auto& inst : cat.instances) {
        json e;
        e["label"] = instance_label(inst);
        if (const auto* t = std::get_if<TorusAutomorphism>(&inst)) {
            e["type"] = "torus";
            e["valid"] = true;  // construction enforces the unit-determinant invariant
            e["hyperbolic"] = t->hyperbolic;
            e["d1"] = t->d1;
            const GaussInt det = t->A(0, 0) * t->A(1, 1) - t->A(0, 1) * t->A(1, 0);
            e["det"] = {det.re.get_str(), det.im.get_str()};
            DegreeProfile prof = degree_profile(t->hodge);
            e["degrees"] = prof.degrees;
            if (!cfg.out_dir.empty())
                write_file(cfg.out_dir, "hodge_" + sanitize(t->label) + ".json",
                           hodge_to_json_string(t->hodge));
        } else {
            const auto& iso = std::get<LatticeIsometry>(inst);
            e["type"] = "isometry";
            e["valid"] = true;  // isometry identity checked at load time
            e["rank"] = iso.M.rows();
            SpectralRadius sr = spectral_radius(to_crat(iso.M), /*require_invertible=*/true);
            e["d1"] = sr.value;
        }
        list.push_back(std::move(e));
    }
    j["instances"] = std::move(list);
    j["status"] = "ok";

    const std::string text = j.dump(2) + "\n";
    out << text;
    return 0;
}

int run_guarded(int (*cmd)(const RunConfig&, std::ostream&), const RunConfig& cfg,
                std::ostream& out, std::ostream& err) {
    try {
        return cmd(cfg, out);
    } catch (const undecidable_error& e) {
        err << "undecidable: " << e.what() << "\n";
        return 2;
    } catch (const hypothesis_error& e) {
        err << "hypothesis failure: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const schema_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace dynmix::cli

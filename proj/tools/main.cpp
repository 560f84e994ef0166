#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using dynmix::cli::RunConfig;

void add_common(CLI::App* cmd, RunConfig& cfg, bool needs_instance) {
    cmd->add_option("--catalog", cfg.catalog_path, "catalog JSON file")
        ->required()
        ->envname("DYNMIX_CATALOG");
    auto* inst = cmd->add_option("--instance", cfg.instance, "instance label")
                     ->envname("DYNMIX_INSTANCE");
    if (needs_instance) inst->required();
    cmd->add_option("--out", cfg.out_dir, "output directory for reports")
        ->envname("DYNMIX_OUT");
    cmd->add_option("--tolerance", cfg.tolerance, "certification tolerance (reporting)")
        ->envname("DYNMIX_TOLERANCE");
    cmd->add_option("--margin-delta0", cfg.margin_delta0,
                    "relative margin placing delta_0 above the second modulus")
        ->envname("DYNMIX_MARGIN_DELTA0");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamical degrees, spectral gaps and mixing experiments on catalog automorphisms"};
    app.require_subcommand(1);

    RunConfig cfg;

    CLI::App* degrees = app.add_subcommand("degrees", "dynamical degree profile and gap certificate");
    add_common(degrees, cfg, true);

    CLI::App* kunneth = app.add_subcommand("kunneth", "product action blocks on middle cohomology");
    add_common(kunneth, cfg, true);

    CLI::App* rate = app.add_subcommand("rate", "projector convergence rate of the dominant block");
    add_common(rate, cfg, true);
    rate->add_option("--n-max", cfg.n_max, "largest iterate for the rate series")
        ->envname("DYNMIX_N_MAX");

    CLI::App* mix = app.add_subcommand("mix", "correlation decay against the admissible bound");
    add_common(mix, cfg, true);
    mix->add_option("--n-max", cfg.n_max, "largest iterate")->envname("DYNMIX_N_MAX");
    mix->add_option("--samples", cfg.samples, "Monte Carlo sample count (0 = exact only)")
        ->envname("DYNMIX_SAMPLES");
    mix->add_option("--seed", cfg.seed, "deterministic seed (required when sampling)")
        ->envname("DYNMIX_SEED");
    mix->add_option("--delta", cfg.delta, "spectral gap parameter inside the admissible interval")
        ->required()
        ->envname("DYNMIX_DELTA");
    mix->add_option("--beta", cfg.beta, "Holder class of phi in [0,2]")->envname("DYNMIX_BETA");
    mix->add_option("--beta-prime", cfg.beta_prime, "Holder class of psi in [0,2]")
        ->envname("DYNMIX_BETA_PRIME");
    mix->add_option("--radius", cfg.radius,
                    "frequency radius of generated test functions (0 = cosine pair)")
        ->envname("DYNMIX_RADIUS");
    mix->add_flag("--svg", cfg.svg, "also write a log-scale decay plot")->envname("DYNMIX_SVG");

    CLI::App* validate = app.add_subcommand("validate-catalog", "validate and echo derived invariants");
    add_common(validate, cfg, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    using dynmix::cli::run_guarded;
    if (degrees->parsed()) return run_guarded(dynmix::cli::cmd_degrees, cfg, std::cout, std::cerr);
    if (kunneth->parsed()) return run_guarded(dynmix::cli::cmd_kunneth, cfg, std::cout, std::cerr);
    if (rate->parsed()) return run_guarded(dynmix::cli::cmd_rate, cfg, std::cout, std::cerr);
    if (mix->parsed()) return run_guarded(dynmix::cli::cmd_mix, cfg, std::cout, std::cerr);
    if (validate->parsed())
        return run_guarded(dynmix::cli::cmd_validate_catalog, cfg, std::cout, std::cerr);
    return 1;
}

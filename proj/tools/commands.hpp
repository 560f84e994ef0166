#pragma once

// Batch commands behind the CLI: each one is a pure function of
// (config, catalog) writing machine-readable reports.  Exit codes:
// 0 success, 1 I/O or schema error, 2 mathematical-hypothesis failure.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace dynmix::cli {

struct RunConfig {
    std::string catalog_path;
    std::string instance;
    int n_max = 30;
    std::int64_t samples = 0;  // 0 skips Monte Carlo
    std::optional<std::uint64_t> seed;
    double delta = 0.0;
    double beta = 2.0;
    double beta_prime = 2.0;
    int radius = 2;  // 0 selects the built-in single-frequency cosine pair
    std::string out_dir;
    double tolerance = 1e-9;
    double margin_delta0 = 1e-3;
    bool svg = false;

    void validate() const;  // tolerances positive, seed present when sampling
};

int cmd_degrees(const RunConfig& cfg, std::ostream& out);
int cmd_kunneth(const RunConfig& cfg, std::ostream& out);
int cmd_rate(const RunConfig& cfg, std::ostream& out);
int cmd_mix(const RunConfig& cfg, std::ostream& out);
int cmd_validate_catalog(const RunConfig& cfg, std::ostream& out);

// Exception-to-exit-code mapping shared by the binary and the tests.
int run_guarded(int (*cmd)(const RunConfig&, std::ostream&), const RunConfig& cfg,
                std::ostream& out, std::ostream& err);

}  // namespace dynmix::cli

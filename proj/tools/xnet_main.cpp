// xnet command-line front end.
//
//   xnet simulate --scheme scheme2 --pattern "ND,DN,PP" --trials 10000 --seed 1
//   xnet simulate --scheme kuser --k 3 --sweep 1e2:1e6:5 --trials 200
//   xnet patterns --slots 3
//   xnet region --format rows --out region.txt
//
// The default seed comes from XNET_SEED when set.

#include <CLI11.hpp>

#include "xnet/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"SISO X-network simulator: creation/resurrection schemes, "
                 "CSIT pattern analysis, and the DoF region"};
    app.require_subcommand(1);

    xnet::cli::RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out_path, "output file (default: stdout)");
        sub->add_option("--format", cfg.format, "output format: structured | rows")
            ->check(CLI::IsMember({"structured", "rows"}));
        sub->add_option("--seed", cfg.seed, "RNG seed")->envname("XNET_SEED");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "run decode trials and optional power sweep");
    simulate->add_option("--scheme", cfg.scheme,
                         "scheme1[m] | scheme2[m] | scheme3[m] | threeuser | kuser | kx2 | 2xk")
        ->required();
    simulate->add_option("--k", cfg.k, "population parameter for kuser/kx2/2xk");
    simulate->add_option("--pattern", cfg.pattern, "CSIT pattern, e.g. \"ND,DN,PP\" (default: minimal)");
    simulate->add_option("--trials", cfg.trials, "trials (per sweep point when sweeping)");
    simulate->add_option("--noise-variance", cfg.noise_variance, "noise variance (0 = noiseless)");
    simulate->add_option("--sweep", cfg.sweep, "geometric power sweep lo:hi:points");
    add_common(simulate);

    CLI::App* patterns = app.add_subcommand("patterns", "census of CSIT patterns");
    patterns->add_option("--slots", cfg.slots, "channel extension length");
    add_common(patterns);

    CLI::App* region = app.add_subcommand("region", "DoF outer bound, vertices and sum optimum");
    add_common(region);

    CLI11_PARSE(app, argc, argv);

    if (simulate->parsed()) cfg.command = "simulate";
    if (patterns->parsed()) cfg.command = "patterns";
    if (region->parsed()) cfg.command = "region";

    return xnet::cli::run_command(cfg);
}

// permrips command line: approx, lowerbound, compare, embed.
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "permrips/runner.hpp"

namespace {

void add_io_options(CLI::App* cmd, permrips::run_config& cfg) {
    cmd->add_option("--input", cfg.input, "input file (CSV points or distance matrix)")
        ->required();
    cmd->add_option("--format", cfg.format, "input format: points | matrix")
        ->check(CLI::IsMember({"points", "matrix"}));
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_option("--seed", cfg.seed, "root seed for all randomized stages");
    cmd->add_flag("--bourgain", cfg.bourgain, "embed the metric via random subsets first");
    cmd->add_option("--bourgain-c", cfg.bourgain_c, "repetition multiplier for the embedding");
    cmd->add_option("--project", cfg.projection, "projection stage: none | jl | matousek")
        ->check(CLI::IsMember({"none", "jl", "matousek"}));
    cmd->add_option("--jl-lambda", cfg.jl_lambda, "JL dimension constant");
    cmd->add_option("--jl-eps", cfg.jl_eps, "JL distortion parameter");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"permutahedral-lattice approximation of Rips filtrations"};
    app.require_subcommand(1);

    permrips::run_config cfg;
    std::string config_path;

    auto* approx = app.add_subcommand("approx", "build the multi-scale approximation tower");
    add_io_options(approx, cfg);
    approx->add_option("--config", config_path, "re-run from an emitted config.json (overrides flags)");
    approx->add_option("--k", cfg.k, "skeleton dimension");
    approx->add_option("--hom-dims", cfg.hom_dims, "homology dimensions to report");
    approx->add_option("--beta0", cfg.beta0, "base scale (0 = derive from closest pair)");
    approx->add_option("--scales", cfg.scales, "scale count (0 = derive from spread)");
    approx->add_option("--size-cap", cfg.size_cap, "refuse runs predicted to exceed this many simplices");
    approx->add_option("--exact-max-n", cfg.exact_max_n, "skip exact Rips verification above this size");
    bool no_exact = false;
    approx->add_flag("--no-exact", no_exact, "skip the exact Rips baseline and interleaving check");

    int lb_d = 5, lb_ell = 2;
    std::string lb_out = ".";
    bool lb_no_barcode = false;
    auto* lowerbound = app.add_subcommand("lowerbound", "build and verify the lower-bound instance");
    lowerbound->add_option("--d", lb_d, "lattice dimension (d+1 <= 8 for full verification)");
    lowerbound->add_option("--ell", lb_ell, "good-partition block size (must divide d+1)");
    lowerbound->add_option("--out", lb_out, "output directory");
    lowerbound->add_flag("--skip-barcode", lb_no_barcode, "skip the full filtration reduction");

    std::string cmp_a, cmp_b, cmp_out;
    bool cmp_log = false;
    double cmp_threshold = -1;
    auto* compare = app.add_subcommand("compare", "bottleneck distance between barcode files");
    compare->add_option("a", cmp_a, "first barcode JSON")->required();
    compare->add_option("b", cmp_b, "second barcode JSON")->required();
    compare->add_flag("--log-scale", cmp_log, "compare on the logarithmic scale");
    compare->add_option("--threshold", cmp_threshold, "pass/fail threshold");
    compare->add_option("--out", cmp_out, "write the comparison report here");

    auto* embed = app.add_subcommand("embed", "run the embedding stages only");
    add_io_options(embed, cfg);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(approx)) {
            if (!config_path.empty()) {
                cfg = permrips::config_from_json(permrips::read_json(config_path));
            }
            if (no_exact) cfg.with_exact = false;
            return permrips::run_approx(cfg, std::cout);
        }
        if (app.got_subcommand(lowerbound))
            return permrips::run_lowerbound(lb_d, lb_ell, lb_out, !lb_no_barcode, std::cout);
        if (app.got_subcommand(compare)) {
            std::optional<double> thr;
            if (cmp_threshold >= 0) thr = cmp_threshold;
            return permrips::run_compare(cmp_a, cmp_b, cmp_log, thr, cmp_out, std::cout);
        }
        if (app.got_subcommand(embed)) return permrips::run_embed(cfg, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

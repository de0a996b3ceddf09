// Reproducible experiment runs tying the pipeline together: configuration,
// staged embeddings, tower construction, verification, and file output.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "permrips/io.hpp"

namespace permrips {

struct run_config {
    std::string input;
    std::string format = "points";  // "points" | "matrix"
    std::string out_dir = ".";
    bool bourgain = false;
    double bourgain_c = 1.0;
    std::string projection = "none";  // "none" | "jl" | "matousek"
    double jl_lambda = 8.0;
    double jl_eps = 0.5;
    int k = 2;
    std::vector<int> hom_dims = {0, 1};
    double beta0 = 0.0;  // 0 = derive from the cloud
    int scales = 0;      // 0 = derive from the spread
    std::uint64_t seed = 0;
    std::uint64_t size_cap = 100000000;
    bool with_exact = true;
    int exact_max_n = 40;
};

ordered_json config_to_json(const run_config& c);
run_config config_from_json(const ordered_json& j);

// approx: builds the (optionally embedded/projected) tower, writes
// config.json, tower.json, sizes.json, barcode_tower.json and, when exact
// verification runs, barcode_rips.json + interleaving.json. Returns 0 iff
// every enabled verification passed.
int run_approx(const run_config& cfg, std::ostream& log);

// lowerbound: writes points.csv and report.json, prints the summary table.
int run_lowerbound(int d, int ell, const std::string& out_dir, bool with_barcode,
                   std::ostream& log);

// compare: bottleneck distances per dimension between two barcode files.
int run_compare(const std::string& file_a, const std::string& file_b, bool log_scale,
                std::optional<double> threshold, const std::string& out_json, std::ostream& log);

// embed: writes embedded.csv and distortion.json.
int run_embed(const run_config& cfg, std::ostream& log);

}  // namespace permrips

#include "permrips/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <set>

#include "permrips/embeddings.hpp"

namespace permrips {

ordered_json config_to_json(const run_config& c) {
    ordered_json j;
    j["input"] = c.input;
    j["format"] = c.format;
    j["out_dir"] = c.out_dir;
    j["bourgain"] = c.bourgain;
    j["bourgain_c"] = c.bourgain_c;
    j["projection"] = c.projection;
    j["jl_lambda"] = c.jl_lambda;
    j["jl_eps"] = c.jl_eps;
    j["k"] = c.k;
    j["hom_dims"] = c.hom_dims;
    j["beta0"] = c.beta0;
    j["scales"] = c.scales;
    j["seed"] = c.seed;
    j["size_cap"] = c.size_cap;
    j["with_exact"] = c.with_exact;
    j["exact_max_n"] = c.exact_max_n;
    return j;
}

run_config config_from_json(const ordered_json& j) {
    run_config c;
    c.input = j.at("input").get<std::string>();
    c.format = j.value("format", std::string("points"));
    c.out_dir = j.value("out_dir", std::string("."));
    c.bourgain = j.value("bourgain", false);
    c.bourgain_c = j.value("bourgain_c", 1.0);
    c.projection = j.value("projection", std::string("none"));
    c.jl_lambda = j.value("jl_lambda", 8.0);
    c.jl_eps = j.value("jl_eps", 0.5);
    c.k = j.value("k", 2);
    c.hom_dims = j.value("hom_dims", std::vector<int>{0, 1});
    c.beta0 = j.value("beta0", 0.0);
    c.scales = j.value("scales", 0);
    c.seed = j.value("seed", std::uint64_t{0});
    c.size_cap = j.value("size_cap", std::uint64_t{100000000});
    c.with_exact = j.value("with_exact", true);
    c.exact_max_n = j.value("exact_max_n", 40);
    return c;
}

namespace {

point_cloud load_input(const run_config& cfg) {
    if (cfg.format == "points") return read_points_csv(cfg.input);
    if (cfg.format == "matrix") return read_distance_matrix(cfg.input);
    throw std::runtime_error("unknown input format: " + cfg.format);
}

struct pipeline_result {
    point_cloud cloud;            // the cloud the approximation runs on
    bool embedded = false;        // any stage applied
    double xi1 = 1.0, xi2 = 1.0;  // measured distortion vs the input metric
    ordered_json stages = ordered_json::array();
};

pipeline_result run_pipeline(const run_config& cfg, const point_cloud& input, std::ostream& log) {
    pipeline_result res;
    res.cloud = input;
    if (input.metric_only() && !cfg.bourgain && cfg.projection == "none")
        throw std::runtime_error("coordinates required: metric input needs the bourgain stage");
    if (input.metric_only() && !cfg.bourgain && cfg.projection != "none")
        throw std::runtime_error("coordinates required: projection cannot run on metric input");

    if (cfg.bourgain) {
        bourgain_spec bs{cfg.seed, cfg.bourgain_c};
        point_cloud emb = bourgain_embed(res.cloud, bs);
        point_cloud centered = center_distortion(res.cloud, emb);
        auto [x1, x2] = measure_distortion(res.cloud, centered);
        ordered_json st;
        st["stage"] = "bourgain";
        st["target_dim"] = centered.dim();
        st["c_b"] = cfg.bourgain_c;
        st["xi1"] = x1;
        st["xi2"] = x2;
        res.stages.push_back(std::move(st));
        log << "bourgain: " << res.cloud.size() << " points -> R^" << centered.dim()
            << ", distortion " << x2 / x1 << "\n";
        res.cloud = std::move(centered);
        res.embedded = true;
    }
    if (cfg.projection != "none") {
        const int n = res.cloud.size();
        const int d = res.cloud.dim();
        int m = cfg.projection == "jl" ? jl_target_dim(n, cfg.jl_lambda, cfg.jl_eps)
                                       : matousek_target_dim(n);
        if (m >= d) {
            ordered_json st;
            st["stage"] = "projection";
            st["mode"] = cfg.projection;
            st["skipped"] = "target dimension >= source dimension";
            res.stages.push_back(std::move(st));
            log << "projection skipped: target " << m << " >= source " << d << "\n";
        } else {
            projection_spec ps{m, cfg.seed + 1};
            point_cloud proj = random_projection(res.cloud, ps);
            point_cloud centered = center_distortion(res.cloud, proj);
            auto [x1, x2] = measure_distortion(res.cloud, centered);
            ordered_json st;
            st["stage"] = "projection";
            st["mode"] = cfg.projection;
            st["target_dim"] = m;
            st["xi1"] = x1;
            st["xi2"] = x2;
            res.stages.push_back(std::move(st));
            log << "projection (" << cfg.projection << "): R^" << d << " -> R^" << m
                << ", distortion " << x2 / x1 << "\n";
            res.cloud = std::move(centered);
            res.embedded = true;
        }
    }
    if (res.embedded) {
        auto [x1, x2] = measure_distortion(input, res.cloud);
        res.xi1 = x1;
        res.xi2 = x2;
    }
    return res;
}

}  // namespace

int run_approx(const run_config& cfg_in, std::ostream& log) {
    namespace fs = std::filesystem;
    run_config cfg = cfg_in;
    if (cfg.hom_dims.empty()) cfg.hom_dims = {0, 1};
    fs::create_directories(cfg.out_dir);
    point_cloud input = load_input(cfg);
    log << "input: " << input.size() << " points, "
        << (input.metric_only() ? "metric" : "R^" + std::to_string(input.dim())) << "\n";

    pipeline_result pipe = run_pipeline(cfg, input, log);
    const point_cloud& cloud = pipe.cloud;
    const int d = cloud.dim();

    scale_grid grid = default_scale_grid(cloud);
    if (cfg.beta0 > 0) grid.beta0 = cfg.beta0;
    if (cfg.scales > 0) grid.count = cfg.scales;

    // refusal before construction when the worst-case prediction blows up
    const std::uint64_t edge_prediction =
        static_cast<std::uint64_t>(cloud.size()) *
        (d + 1 <= 62 ? (std::uint64_t{1} << (d + 1)) : std::uint64_t{1} << 62);
    if (cfg.size_cap && edge_prediction > cfg.size_cap) {
        log << "refusing: predicted vertex+edge work " << edge_prediction << " exceeds size cap "
            << cfg.size_cap << "\n";
        return 2;
    }

    run_config resolved = cfg;
    resolved.beta0 = grid.beta0;
    resolved.scales = grid.count;
    write_json(cfg.out_dir + "/config.json", config_to_json(resolved));

    tower t;
    try {
        t = build_tower(cloud, grid, cfg.k, cfg.size_cap);
    } catch (const size_cap_exceeded& e) {
        log << "refusing: " << e.what() << " (cap " << cfg.size_cap << ")\n";
        return 2;
    }
    write_json(cfg.out_dir + "/tower.json", tower_to_json(t));
    ordered_json sizes = sizes_to_json(t, cloud.size());
    write_json(cfg.out_dir + "/sizes.json", sizes);
    bool ok = sizes.at("all_within_bound").get<bool>();
    log << "tower: " << grid.count << " scales from beta0 = " << grid.beta0
        << (ok ? ", size bounds ok" : ", SIZE BOUND VIOLATION") << "\n";

    barcode tower_bc;
    for (int p : cfg.hom_dims) {
        barcode b = tower_barcode(t, p);
        tower_bc.bars.insert(tower_bc.bars.end(), b.bars.begin(), b.bars.end());
    }
    tower_bc.sort();
    write_json(cfg.out_dir + "/barcode_tower.json",
               barcode_to_json(tower_bc, "tower", t.scales.front(), kInf));

    if (cfg.with_exact && cloud.size() <= cfg.exact_max_n) {
        const int max_dim = *std::max_element(cfg.hom_dims.begin(), cfg.hom_dims.end());
        barcode rips = rips_barcode(cloud, max_dim);
        write_json(cfg.out_dir + "/barcode_rips.json",
                   barcode_to_json(rips, "rips", 0.0, kInf));
        ordered_json rep;
        rep["window_lo"] = t.scales.front();
        rep["threshold"] = std::log(6.0 * (d + 1));
        ordered_json per = ordered_json::array();
        bool all_pass = true;
        for (int p : cfg.hom_dims) {
            interleaving_report ir = verify_interleaving(cloud, t, p);
            ordered_json e;
            e["hom_dim"] = p;
            e["distance"] = ir.distance;
            e["threshold"] = ir.threshold;
            e["pass"] = ir.pass;
            all_pass = all_pass && ir.pass;
            per.push_back(std::move(e));
            log << "interleaving dim " << p << ": log-bottleneck " << ir.distance << " vs "
                << ir.threshold << (ir.pass ? " (pass)" : " (FAIL)") << "\n";
        }
        rep["per_dim"] = std::move(per);
        if (pipe.embedded) {
            rep["pipeline_stages"] = pipe.stages;
            rep["pipeline_threshold_extra"] = std::log(pipe.xi2 / pipe.xi1);
        }
        rep["pass"] = all_pass;
        write_json(cfg.out_dir + "/interleaving.json", rep);
        ok = ok && all_pass;
    }
    return ok ? 0 : 1;
}

int run_lowerbound(int d, int ell, const std::string& out_dir, bool with_barcode,
                   std::ostream& log) {
    namespace fs = std::filesystem;
    if (ell > d + 1) throw std::runtime_error("lowerbound: ell exceeds d+1");
    fs::create_directories(out_dir);
    lower_bound_instance inst = build_lower_bound_instance(d, ell);
    write_points_csv(out_dir + "/points.csv", inst.cloud);
    lower_bound_report rep = verify_good_simplices(inst, with_barcode);
    write_json(out_dir + "/report.json", lower_bound_report_to_json(rep, true));
    log << "lower bound instance: d = " << d << ", ell = " << ell << ", n = " << rep.n << "\n"
        << "good " << (rep.k - 1) << "-simplices: " << rep.count << " (expected "
        << rep.expected_count << ")\n"
        << "min L = " << format_double(rep.min_L)
        << ", min L* (splits) = " << format_double(rep.min_L_star_delaunay)
        << ", min L* (all cofacets) = " << format_double(rep.min_L_star_unrestricted) << "\n"
        << "bound = " << rep.bound << ", significance delta = " << rep.significance_delta << "\n";
    bool ok = rep.counts_match && rep.alphas_match && rep.splitting_exact_all &&
              rep.cyclic_shift_all;
    if (!rep.simplices.empty() && rep.n <= 100) ok = ok && rep.bounds_pass;
    if (rep.barcode_computed) ok = ok && rep.significance_all && rep.pairing_bounds_all;
    log << (ok ? "all verifications passed" : "VERIFICATION FAILURES (see report.json)") << "\n";
    return ok ? 0 : 1;
}

int run_compare(const std::string& file_a, const std::string& file_b, bool log_scale,
                std::optional<double> threshold, const std::string& out_json, std::ostream& log) {
    ordered_json ja = read_json(file_a), jb = read_json(file_b);
    barcode a = barcode_from_json(ja), b = barcode_from_json(jb);

    // windows: compare on the intersection when both files carry one
    auto window_of = [](const ordered_json& j) -> std::pair<double, double> {
        if (!j.contains("scale_window")) return {0.0, kInf};
        const auto& w = j.at("scale_window");
        auto rd = [](const ordered_json& v) {
            return v.is_string() ? kInf : v.get<double>();
        };
        return {rd(w.at(0)), rd(w.at(1))};
    };
    auto [alo, ahi] = window_of(ja);
    auto [blo, bhi] = window_of(jb);
    const double lo = std::max(alo, blo), hi = std::min(ahi, bhi);
    if (lo > hi) {
        log << "warning: disjoint scale windows, nothing to compare\n";
        if (!out_json.empty()) {
            ordered_json j;
            j["disjoint_windows"] = true;
            write_json(out_json, j);
        }
        return 0;
    }
    if (lo > 0) {
        a = clamp_below(a, lo);
        b = clamp_below(b, lo);
    }

    std::set<int> dims;
    for (const bar& x : a.bars) dims.insert(x.dim);
    for (const bar& x : b.bars) dims.insert(x.dim);
    ordered_json per = ordered_json::array();
    bool ok = true;
    for (int p : dims) {
        double dist = bottleneck_distance(restrict_dim(a, p), restrict_dim(b, p), log_scale);
        log << "dim " << p << ": bottleneck" << (log_scale ? " (log scale)" : "") << " = "
            << format_double(dist) << "\n";
        ordered_json e;
        e["hom_dim"] = p;
        e["distance"] = dist == kInf ? ordered_json("inf") : ordered_json(dist);
        if (threshold) {
            e["threshold"] = *threshold;
            e["pass"] = dist <= *threshold;
            ok = ok && dist <= *threshold;
        }
        per.push_back(std::move(e));
    }
    if (!out_json.empty()) {
        ordered_json j;
        j["log_scale"] = log_scale;
        j["window"] = ordered_json::array(
            {ordered_json(lo), hi == kInf ? ordered_json("inf") : ordered_json(hi)});
        j["per_dim"] = std::move(per);
        write_json(out_json, j);
    }
    return ok ? 0 : 1;
}

int run_embed(const run_config& cfg, std::ostream& log) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    point_cloud input = load_input(cfg);
    run_config staged = cfg;
    if (!staged.bourgain && staged.projection == "none")
        throw std::runtime_error("embed: choose --bourgain and/or --project");
    pipeline_result pipe = run_pipeline(staged, input, log);
    write_points_csv(cfg.out_dir + "/embedded.csv", pipe.cloud);
    ordered_json j;
    j["stages"] = pipe.stages;
    j["xi1"] = pipe.xi1;
    j["xi2"] = pipe.xi2;
    j["ratio"] = pipe.xi2 / pipe.xi1;
    write_json(cfg.out_dir + "/distortion.json", j);
    write_json(cfg.out_dir + "/config.json", config_to_json(cfg));
    log << "distortion: xi1 = " << pipe.xi1 << ", xi2 = " << pipe.xi2 << ", ratio = "
        << pipe.xi2 / pipe.xi1 << "\n";
    return 0;
}

}  // namespace permrips

#include "permrips/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace permrips {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    out.push_back(cur);
    while (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

bool parse_double(const std::string& s, double& v) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc() && p == s.data() + s.size();
}

}  // namespace

point_cloud read_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::vector<vec> pts;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        auto cells = split_csv(line);
        if (cells.empty()) continue;
        vec p;
        bool ok = true;
        for (const auto& c : cells) {
            double v;
            if (!parse_double(c, v)) {
                ok = false;
                break;
            }
            p.push_back(v);
        }
        if (!ok) {
            if (first) {
                first = false;
                continue;  // header row
            }
            throw std::runtime_error("malformed CSV row in " + path + ": " + line);
        }
        first = false;
        pts.push_back(std::move(p));
    }
    if (pts.empty()) throw std::runtime_error("empty input file: " + path);
    return make_point_cloud(std::move(pts));
}

void write_points_csv(const std::string& path, const point_cloud& pc) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    for (const vec& p : pc.points) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i) out << ",";
            out << format_double(p[i]);
        }
        out << "\n";
    }
}

point_cloud read_distance_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    int n = 0;
    if (!(in >> n) || n < 1) throw std::runtime_error("distance matrix: bad point count");
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            double v;
            if (!(in >> v)) throw std::runtime_error("distance matrix: truncated file");
            d[i][j] = d[j][i] = v;
        }
    return make_metric_cloud(std::move(d));
}

std::string format_double(double v) {
    if (v == kInf) return "inf";
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

namespace {

ordered_json json_value(double v) {
    if (v == kInf) return ordered_json("inf");
    return ordered_json(v);
}

double value_json(const ordered_json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return kInf;
        throw std::runtime_error("barcode json: bad value");
    }
    return j.get<double>();
}

}  // namespace

ordered_json barcode_to_json(const barcode& bc, const std::string& source, double window_lo,
                             double window_hi) {
    ordered_json j;
    j["source"] = source;
    j["scale_window"] = ordered_json::array({json_value(window_lo), json_value(window_hi)});
    ordered_json arr = ordered_json::array();
    barcode sorted = bc;
    sorted.sort();
    for (const bar& b : sorted.bars) {
        ordered_json e;
        e["hom_dim"] = b.dim;
        e["birth"] = b.birth;
        e["death"] = json_value(b.death);
        arr.push_back(std::move(e));
    }
    j["intervals"] = std::move(arr);
    return j;
}

barcode barcode_from_json(const ordered_json& j) {
    barcode bc;
    for (const auto& e : j.at("intervals")) {
        bar b;
        b.dim = e.at("hom_dim").get<int>();
        b.birth = e.at("birth").get<double>();
        b.death = value_json(e.at("death"));
        bc.bars.push_back(b);
    }
    return bc;
}

ordered_json tower_to_json(const tower& t) {
    ordered_json j;
    j["d"] = t.grid.d;
    j["k"] = t.k;
    j["beta0"] = t.grid.beta0;
    j["scale_count"] = t.grid.count;
    j["scales"] = t.scales;
    ordered_json phis = ordered_json::array(), psis = ordered_json::array();
    for (double b : t.scales) {
        phis.push_back(phi_source_scale(b, t.grid.d));
        psis.push_back(psi_target_scale(b, t.grid.d));
    }
    j["phi_source_scales"] = std::move(phis);
    j["psi_target_scales"] = std::move(psis);
    ordered_json complexes = ordered_json::array();
    for (const approx_complex& ac : t.complexes) {
        ordered_json c;
        c["scale"] = ac.beta;
        ordered_json verts = ordered_json::array();
        for (const lattice_point& v : ac.vertices) verts.push_back(v.num);
        c["vertices"] = std::move(verts);
        ordered_json simp;
        for (int p = 0; p <= ac.K.top_dim(); ++p) {
            ordered_json rows = ordered_json::array();
            for (std::size_t r = 0; r < ac.K.count(p); ++r) {
                auto s = ac.K.simplex(p, r);
                rows.push_back(std::vector<std::int32_t>(s.begin(), s.end()));
            }
            simp[std::to_string(p)] = std::move(rows);
        }
        c["simplices"] = std::move(simp);
        complexes.push_back(std::move(c));
    }
    j["complexes"] = std::move(complexes);
    ordered_json maps = ordered_json::array();
    for (const auto& m : t.theta) maps.push_back(m);
    j["vertex_maps"] = std::move(maps);
    return j;
}

ordered_json sizes_to_json(const tower& t, int n) {
    ordered_json j;
    j["n"] = n;
    j["d"] = t.grid.d;
    j["k"] = t.k;
    bool all_ok = true;
    ordered_json per = ordered_json::array();
    for (const approx_complex& ac : t.complexes) {
        ordered_json e;
        e["scale"] = ac.beta;
        e["vertices"] = ac.vertices.size();
        e["requested_k"] = ac.requested_k;
        e["effective_k"] = ac.effective_k;
        std::vector<std::size_t> counts;
        for (int p = 0; p <= ac.K.top_dim(); ++p) counts.push_back(ac.K.count(p));
        e["counts_by_dim"] = counts;
        e["total"] = ac.size;
        e["bound"] = ac.size_bound;
        e["within_bound"] = ac.within_bound;
        all_ok = all_ok && ac.within_bound;
        per.push_back(std::move(e));
    }
    j["per_scale"] = std::move(per);
    j["all_within_bound"] = all_ok;
    return j;
}

ordered_json lower_bound_report_to_json(const lower_bound_report& rep, bool with_simplices) {
    ordered_json j;
    j["d"] = rep.d;
    j["ell"] = rep.ell;
    j["k"] = rep.k;
    j["n"] = rep.n;
    j["expected_count"] = rep.expected_count;
    j["count"] = rep.count;
    j["counts_match"] = rep.counts_match;
    j["bound"] = rep.bound;
    j["alt_bound"] = rep.alt_bound;
    j["significance_delta"] = rep.significance_delta;
    j["diameter"] = rep.diameter;
    j["diameter_bound"] = rep.diameter_bound;
    j["min_L"] = json_value(rep.min_L);
    j["min_L_star_delaunay"] = json_value(rep.min_L_star_delaunay);
    j["min_L_star_unrestricted"] = json_value(rep.min_L_star_unrestricted);
    j["max_alpha_diff"] = rep.max_alpha_diff;
    j["alphas_match"] = rep.alphas_match;
    j["splitting_identity_exact_all"] = rep.splitting_exact_all;
    j["splitting_identity_stated_all"] = rep.splitting_stated_all;
    j["bounds_pass"] = rep.bounds_pass;
    j["cyclic_shift_all"] = rep.cyclic_shift_all;
    j["barcode_computed"] = rep.barcode_computed;
    j["significance_all"] = rep.significance_all;
    j["pairing_bounds_all"] = rep.pairing_bounds_all;
    if (with_simplices) {
        ordered_json arr = ordered_json::array();
        for (const good_simplex_record& r : rep.simplices) {
            ordered_json e;
            ordered_json blocks = ordered_json::array();
            for (std::uint64_t b : r.partition.blocks) {
                std::vector<int> members;
                for (int i = 0; i <= r.partition.d; ++i)
                    if ((b >> i) & 1) members.push_back(i + 1);
                blocks.push_back(members);
            }
            e["partition"] = std::move(blocks);
            e["simplex"] = r.simplex;
            e["alpha_closed_form"] = r.alpha_closed_form;
            e["alpha_miniball"] = r.alpha_miniball;
            e["L"] = json_value(r.L);
            e["L_star_delaunay"] = json_value(r.L_star_delaunay);
            e["L_star_unrestricted"] = json_value(r.L_star_unrestricted);
            e["splitting_identity_exact"] = r.splitting_identity_exact;
            e["splitting_identity_stated"] = r.splitting_identity_stated;
            e["cyclic_shift_good"] = r.cyclic_shift_good;
            if (r.has_interval) {
                e["positive"] = r.positive;
                e["birth"] = r.birth;
                e["death"] = json_value(r.death);
                e["significant"] = r.significant;
                e["pairing_bound_ok"] = r.pairing_bound_ok;
            }
            arr.push_back(std::move(e));
        }
        j["simplices"] = std::move(arr);
    }
    return j;
}

void write_json(const std::string& path, const ordered_json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

ordered_json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    ordered_json j;
    in >> j;
    return j;
}

}  // namespace permrips

// Python bindings for the main operations: lattice decoding, permutahedron
// counts, approximation complexes and towers, barcodes, bottleneck distance,
// embeddings, and the lower-bound verifier.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "permrips/approx.hpp"
#include "permrips/embeddings.hpp"
#include "permrips/exact.hpp"
#include "permrips/lattice.hpp"
#include "permrips/miniball.hpp"
#include "permrips/permutahedron.hpp"
#include "permrips/persistence.hpp"
#include "permrips/tower.hpp"

namespace py = pybind11;
using namespace permrips;

namespace {

point_cloud cloud_from_points(const std::vector<std::vector<double>>& pts) {
    return make_point_cloud(pts);
}

py::list bars_to_list(const barcode& bc) {
    py::list out;
    for (const bar& b : bc.bars) out.append(py::make_tuple(b.dim, b.birth, b.death));
    return out;
}

barcode bars_from_list(const py::sequence& seq) {
    barcode bc;
    for (auto item : seq) {
        auto t = item.cast<py::tuple>();
        bc.bars.push_back({t[0].cast<int>(), t[1].cast<double>(), t[2].cast<double>()});
    }
    return bc;
}

py::dict complex_to_dict(const approx_complex& ac) {
    py::dict out;
    py::list verts;
    for (const lattice_point& v : ac.vertices) verts.append(v.num);
    out["vertices"] = verts;
    py::dict simplices;
    for (int p = 0; p <= ac.K.top_dim(); ++p) {
        py::list rows;
        for (std::size_t r = 0; r < ac.K.count(p); ++r) {
            auto s = ac.K.simplex(p, r);
            rows.append(std::vector<int>(s.begin(), s.end()));
        }
        simplices[py::int_(p)] = rows;
    }
    out["simplices"] = simplices;
    out["beta"] = ac.beta;
    out["size"] = ac.size;
    out["size_bound"] = ac.size_bound;
    out["within_bound"] = ac.within_bound;
    out["effective_k"] = ac.effective_k;
    return out;
}

tower make_tower(const std::vector<std::vector<double>>& pts, int k, double beta0, int scales) {
    point_cloud pc = cloud_from_points(pts);
    scale_grid g = default_scale_grid(pc);
    if (beta0 > 0) g.beta0 = beta0;
    if (scales > 0) g.count = scales;
    return build_tower(pc, g, k);
}

}  // namespace

PYBIND11_MODULE(permrips, m) {
    m.doc() = "Permutahedral-lattice approximation of Rips filtrations: complexes, "
              "towers, barcodes, and verification utilities.";

    m.def("embed_point", &embed_point, py::arg("x"),
          "Isometric embedding of R^d into the zero-sum hyperplane of R^{d+1}.");

    m.def(
        "closest_lattice_point",
        [](const std::vector<double>& x, double beta) {
            const int d = static_cast<int>(x.size());
            return closest_lattice_point(scaled_lattice{d, beta}, embed_point(x)).num;
        },
        py::arg("x"), py::arg("beta") = 1.0,
        "Integer numerator (over d+1) of the closest lattice point to x in R^d.");

    m.def(
        "delaunay_neighbors",
        [](const std::vector<std::int64_t>& num) {
            const int d = static_cast<int>(num.size()) - 1;
            std::vector<std::vector<std::int64_t>> out;
            for (const auto& q : delaunay_neighbors(make_lattice_point(num, d)))
                out.push_back(q.num);
            return out;
        },
        py::arg("numerator"), "All 2^{d+1}-2 Delaunay neighbor numerators.");

    m.def(
        "face_count", [](int d, int dim) { return faces_of_dim(d, dim).size(); }, py::arg("d"),
        py::arg("dim"), "Number of faces of the given dimension.");
    m.def("circumradius", &circumradius, py::arg("d"));
    m.def("good_partition_count", &uniform_good_count, py::arg("d"), py::arg("ell"));

    m.def(
        "build_approx_complex",
        [](const std::vector<std::vector<double>>& pts, double beta, int k) {
            return complex_to_dict(build_approx_complex(cloud_from_points(pts), beta, k));
        },
        py::arg("points"), py::arg("beta"), py::arg("k"));

    m.def(
        "rips_barcode",
        [](const std::vector<std::vector<double>>& pts, int max_dim) {
            return bars_to_list(rips_barcode(cloud_from_points(pts), max_dim));
        },
        py::arg("points"), py::arg("max_dim") = 1);

    m.def(
        "cech_barcode",
        [](const std::vector<std::vector<double>>& pts, int max_dim) {
            return bars_to_list(cech_barcode(cloud_from_points(pts), max_dim));
        },
        py::arg("points"), py::arg("max_dim") = 1);

    m.def(
        "tower_barcode",
        [](const std::vector<std::vector<double>>& pts, int hom_dim, int k, double beta0,
           int scales) {
            tower t = make_tower(pts, k, beta0, scales);
            py::dict out;
            out["scales"] = t.scales;
            out["bars"] = bars_to_list(tower_barcode(t, hom_dim));
            return out;
        },
        py::arg("points"), py::arg("hom_dim") = 1, py::arg("k") = 2, py::arg("beta0") = 0.0,
        py::arg("scales") = 0);

    m.def(
        "verify_interleaving",
        [](const std::vector<std::vector<double>>& pts, int hom_dim, int k) {
            point_cloud pc = cloud_from_points(pts);
            tower t = build_tower(pc, default_scale_grid(pc), k);
            interleaving_report r = verify_interleaving(pc, t, hom_dim);
            py::dict out;
            out["distance"] = r.distance;
            out["threshold"] = r.threshold;
            out["pass"] = r.pass;
            out["window_lo"] = r.window_lo;
            return out;
        },
        py::arg("points"), py::arg("hom_dim") = 1, py::arg("k") = 2);

    m.def(
        "bottleneck_distance",
        [](const py::sequence& a, const py::sequence& b, bool log_scale) {
            return bottleneck_distance(bars_from_list(a), bars_from_list(b), log_scale);
        },
        py::arg("a"), py::arg("b"), py::arg("log_scale") = false,
        "Bars are (dim, birth, death) tuples; death may be inf.");

    m.def(
        "random_projection",
        [](const std::vector<std::vector<double>>& pts, int m_dim, std::uint64_t seed) {
            return random_projection(cloud_from_points(pts), {m_dim, seed}).points;
        },
        py::arg("points"), py::arg("target_dim"), py::arg("seed") = 0);

    m.def(
        "bourgain_embed",
        [](const std::vector<std::vector<double>>& dists, std::uint64_t seed, double c_b) {
            return bourgain_embed(make_metric_cloud(dists), {seed, c_b}).points;
        },
        py::arg("distance_matrix"), py::arg("seed") = 0, py::arg("c_b") = 1.0);

    m.def(
        "measure_distortion",
        [](const std::vector<std::vector<double>>& before,
           const std::vector<std::vector<double>>& after) {
            return measure_distortion(cloud_from_points(before), cloud_from_points(after));
        },
        py::arg("before"), py::arg("after"));

    m.def(
        "miniball",
        [](const std::vector<std::vector<double>>& pts) {
            ball b = miniball(pts);
            return py::make_tuple(b.center, b.radius);
        },
        py::arg("points"), "Smallest enclosing ball: (center, radius).");

    m.def(
        "lower_bound_summary",
        [](int d, int ell, bool with_barcode) {
            lower_bound_report rep =
                verify_good_simplices(build_lower_bound_instance(d, ell), with_barcode);
            py::dict out;
            out["n"] = rep.n;
            out["count"] = rep.count;
            out["expected_count"] = rep.expected_count;
            out["bound"] = rep.bound;
            out["min_L"] = rep.min_L;
            out["min_L_star_delaunay"] = rep.min_L_star_delaunay;
            out["min_L_star_unrestricted"] = rep.min_L_star_unrestricted;
            out["alphas_match"] = rep.alphas_match;
            out["splitting_identity_exact"] = rep.splitting_exact_all;
            out["splitting_identity_stated"] = rep.splitting_stated_all;
            out["significance_all"] = rep.significance_all;
            return out;
        },
        py::arg("d"), py::arg("ell"), py::arg("with_barcode") = false);
}

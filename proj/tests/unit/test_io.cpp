#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "permrips/io.hpp"
#include "permrips/runner.hpp"

using namespace permrips;
namespace fs = std::filesystem;

namespace {

struct temp_dir {
    fs::path path;
    temp_dir() {
        path = fs::temp_directory_path() / ("permrips_test_" + std::to_string(::getpid()) + "_" +
                                            std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~temp_dir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("io: points CSV round trip with optional header") {
    temp_dir tmp;
    {
        std::ofstream out(tmp.file("pts.csv"));
        out << "x,y\n1.5,2\n-0.25,3e-1\n";
    }
    point_cloud pc = read_points_csv(tmp.file("pts.csv"));
    REQUIRE(pc.size() == 2);
    CHECK(pc.points[1][1] == doctest::Approx(0.3));
    write_points_csv(tmp.file("copy.csv"), pc);
    point_cloud rt = read_points_csv(tmp.file("copy.csv"));
    CHECK(rt.points == pc.points);

    {
        std::ofstream out(tmp.file("bad.csv"));
        out << "1,2\noops,3\n";
    }
    CHECK_THROWS(read_points_csv(tmp.file("bad.csv")));
    {
        std::ofstream out(tmp.file("empty.csv"));
    }
    CHECK_THROWS(read_points_csv(tmp.file("empty.csv")));
}

TEST_CASE("io: lower-triangular distance matrix") {
    temp_dir tmp;
    {
        std::ofstream out(tmp.file("d.txt"));
        out << "3\n1.0\n2.0 1.5\n";
    }
    point_cloud pc = read_distance_matrix(tmp.file("d.txt"));
    CHECK(pc.metric_only());
    CHECK(pc.distance(1, 0) == doctest::Approx(1.0));
    CHECK(pc.distance(2, 1) == doctest::Approx(1.5));
    {
        std::ofstream out(tmp.file("short.txt"));
        out << "3\n1.0\n";
    }
    CHECK_THROWS(read_distance_matrix(tmp.file("short.txt")));
}

TEST_CASE("io: barcode JSON round trip with infinities") {
    barcode bc;
    bc.bars = {{0, 0.0, kInf}, {1, 0.5, 1.25}};
    ordered_json j = barcode_to_json(bc, "rips", 0.25, kInf);
    CHECK(j["source"] == "rips");
    CHECK(j["scale_window"][1] == "inf");
    barcode rt = barcode_from_json(j);
    bc.sort();
    CHECK(rt == bc);
}

TEST_CASE("io: config JSON round trip") {
    run_config c;
    c.input = "points.csv";
    c.k = 3;
    c.hom_dims = {0, 1, 2};
    c.seed = 12345;
    c.projection = "jl";
    run_config rt = config_from_json(config_to_json(c));
    CHECK(rt.input == c.input);
    CHECK(rt.k == c.k);
    CHECK(rt.hom_dims == c.hom_dims);
    CHECK(rt.seed == c.seed);
    CHECK(rt.projection == c.projection);
}

TEST_CASE("io: approx run emits files and reruns byte-identically") {
    temp_dir tmp;
    {
        std::ofstream out(tmp.file("pts.csv"));
        out << "0,0\n1,0\n0,1\n1.1,1\n0.2,3\n3,3\n";
    }
    run_config cfg;
    cfg.input = tmp.file("pts.csv");
    cfg.out_dir = tmp.file("run1");
    cfg.k = 2;
    std::ostringstream log;
    CHECK(run_approx(cfg, log) == 0);
    for (const char* f : {"config.json", "tower.json", "sizes.json", "barcode_tower.json",
                          "barcode_rips.json", "interleaving.json"})
        CHECK(fs::exists(fs::path(cfg.out_dir) / f));

    // re-execute from the emitted config into a second directory
    run_config cfg2 = config_from_json(read_json(tmp.file("run1") + "/config.json"));
    cfg2.out_dir = tmp.file("run2");
    std::ostringstream log2;
    CHECK(run_approx(cfg2, log2) == 0);
    for (const char* f : {"tower.json", "sizes.json", "barcode_tower.json", "barcode_rips.json",
                          "interleaving.json"})
        CHECK(slurp(tmp.file("run1") + "/" + f) == slurp(tmp.file("run2") + "/" + f));
}

TEST_CASE("io: compare reports zero against itself and honors thresholds") {
    temp_dir tmp;
    barcode bc;
    bc.bars = {{0, 0.5, kInf}, {1, 1.0, 2.0}};
    write_json(tmp.file("a.json"), barcode_to_json(bc, "tower", 0.5, kInf));
    std::ostringstream log;
    CHECK(run_compare(tmp.file("a.json"), tmp.file("a.json"), true, 1e-9, "", log) == 0);
    barcode other;
    other.bars = {{0, 0.5, kInf}, {1, 1.0, 8.0}};
    write_json(tmp.file("b.json"), barcode_to_json(other, "tower", 0.5, kInf));
    CHECK(run_compare(tmp.file("a.json"), tmp.file("b.json"), true, 0.1, tmp.file("cmp.json"),
                      log) == 1);
    CHECK(fs::exists(tmp.file("cmp.json")));
}

TEST_CASE("io: metric input without an embedding stage is refused") {
    temp_dir tmp;
    {
        std::ofstream out(tmp.file("d.txt"));
        out << "3\n1.0\n2.0 1.5\n";
    }
    run_config cfg;
    cfg.input = tmp.file("d.txt");
    cfg.format = "matrix";
    cfg.out_dir = tmp.file("out");
    std::ostringstream log;
    CHECK_THROWS_WITH_AS(run_approx(cfg, log),
                         "coordinates required: metric input needs the bourgain stage",
                         std::runtime_error);
}

TEST_CASE("io: size-cap refusal fires before construction") {
    temp_dir tmp;
    {
        std::ofstream out(tmp.file("pts.csv"));
        out << "0,0\n1,0\n0,1\n";
    }
    run_config cfg;
    cfg.input = tmp.file("pts.csv");
    cfg.out_dir = tmp.file("out");
    cfg.size_cap = 2;
    std::ostringstream log;
    CHECK(run_approx(cfg, log) == 2);
    CHECK(log.str().find("refusing") != std::string::npos);
}

TEST_CASE("io: disjoint windows warn and compare nothing") {
    temp_dir tmp;
    barcode a, b;
    a.bars = {{0, 0.5, 1.0}};
    b.bars = {{0, 20.0, 30.0}};
    write_json(tmp.file("a.json"), barcode_to_json(a, "tower", 0.25, 2.0));
    write_json(tmp.file("b.json"), barcode_to_json(b, "tower", 10.0, 50.0));
    std::ostringstream log;
    CHECK(run_compare(tmp.file("a.json"), tmp.file("b.json"), false, {}, tmp.file("out.json"),
                      log) == 0);
    CHECK(log.str().find("disjoint") != std::string::npos);
    CHECK(read_json(tmp.file("out.json")).value("disjoint_windows", false));
}

TEST_CASE("io: lowerbound refuses infeasible block sizes") {
    std::ostringstream log;
    CHECK_THROWS(run_lowerbound(3, 5, "/tmp/permrips_lb_bad", true, log));
}

TEST_CASE("io: size cap also aborts mid-construction") {
    temp_dir tmp;
    {
        std::ofstream out(tmp.file("pts.csv"));
        out << "0,0\n0.01,0\n1,0\n0,1\n1,1\n0.5,0.5\n";
    }
    run_config cfg;
    cfg.input = tmp.file("pts.csv");
    cfg.out_dir = tmp.file("out");
    cfg.size_cap = 10;  // passes the edge prediction, trips during expansion
    std::ostringstream log;
    CHECK(run_approx(cfg, log) == 2);
    CHECK(log.str().find("refusing") != std::string::npos);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "htri/balance.hpp"
#include "htri/io.hpp"
#include "htri/kernel.hpp"
#include "htri/render.hpp"
#include "htri/rng.hpp"
#include "htri/surface.hpp"
#include "htri/triangulation.hpp"

using namespace htri;
using nlohmann::json;

namespace {
const genus2_surface& surf() {
    static genus2_surface s = build_genus2();
    return s;
}

const geodesic_mapping& base() {
    static geodesic_mapping m = build_base_triangulation(surf().domain, surf().group);
    return m;
}

std::filesystem::path scratch() {
    auto dir = std::filesystem::temp_directory_path() / "htri_io_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1)) n++;
    return n;
}
}  // namespace

TEST_CASE("mapping json round trip preserves geometry bitwise") {
    rng r(77);
    geodesic_mapping m = random_embedded_mapping(base(), r);
    auto path = scratch() / "mapping_roundtrip.json";
    save_mapping(path.string(), m, 77);

    geodesic_mapping back = load_mapping(path.string(), surf().group);
    REQUIRE(back.cx->n_vertices == m.cx->n_vertices);
    CHECK(back.cx->same_combinatorics(*m.cx));
    for (int v = 0; v < m.cx->n_vertices; v++) {
        CHECK(back.lift[v].x0 == m.lift[v].x0);
        CHECK(back.lift[v].x1 == m.lift[v].x1);
        CHECK(back.lift[v].x2 == m.lift[v].x2);
    }
    CHECK(mapping_distance(back, m) == 0.0);

    json j = json::parse(slurp(path));
    CHECK(j["seed"] == 77);
    CHECK(j["lifts"].size() == std::size_t(m.cx->n_vertices));
    CHECK(j["complex"]["faces"].size() == m.cx->faces.size());
    // deck words are stored for both directions of every edge
    CHECK(j["deck"].size() == 2 * m.cx->edges.size());
}

TEST_CASE("weights json round trip is exact") {
    const surface_complex& cx = *base().cx;
    rng r(78);
    weight_vector w(cx.eword.size());
    for (auto& x : w) x = r.uniform(0.2, 3.0);

    auto path = scratch() / "weights_roundtrip.json";
    save_weights(path.string(), cx, w, 5);
    weight_vector back = load_weights(path.string(), cx);
    REQUIRE(back.size() == w.size());
    for (std::size_t e = 0; e < w.size(); e++) CHECK(back[e] == w[e]);

    json j = json::parse(slurp(path));
    CHECK(j["seed"] == 5);
    CHECK(j["weights"].size() == w.size());
}

TEST_CASE("malformed artifacts surface as io_error") {
    auto dir = scratch();

    auto garbled = dir / "garbled.json";
    spit(garbled, "{ this is not json");
    CHECK_THROWS_AS(load_mapping(garbled.string(), surf().group), io_error);
    CHECK_THROWS_AS(load_weights(garbled.string(), *base().cx), io_error);

    auto missing = dir / "no_such_file.json";
    std::filesystem::remove(missing);
    CHECK_THROWS_AS(load_mapping(missing.string(), surf().group), io_error);

    // a good weights file, then surgical damage
    auto wpath = dir / "weights_damage.json";
    save_weights(wpath.string(), *base().cx, uniform_weights(*base().cx), 1);
    json good = json::parse(slurp(wpath));

    json dropped = good;
    dropped["weights"].erase(dropped["weights"].begin().key());
    spit(wpath, dropped.dump(2) + "\n");
    CHECK_THROWS_AS(load_weights(wpath.string(), *base().cx), io_error);

    json negative = good;
    negative["weights"].begin().value() = -0.25;
    spit(wpath, negative.dump(2) + "\n");
    CHECK_THROWS_AS(load_weights(wpath.string(), *base().cx), io_error);

    json stringy = good;
    stringy["weights"].begin().value() = "fast";
    spit(wpath, stringy.dump(2) + "\n");
    CHECK_THROWS_AS(load_weights(wpath.string(), *base().cx), io_error);

    // a good mapping file, then a deck word that fails to parse
    auto mpath = dir / "mapping_damage.json";
    save_mapping(mpath.string(), base(), 1);
    json gm = json::parse(slurp(mpath));

    json badword = gm;
    badword["deck"].begin().value() = "ax";
    spit(mpath, badword.dump(2) + "\n");
    CHECK_THROWS_AS(load_mapping(mpath.string(), surf().group), io_error);

    json oneway = gm;
    oneway["deck"].erase("1->0");  // directed edge without its reverse
    spit(mpath, oneway.dump(2) + "\n");
    CHECK_THROWS_AS(load_mapping(mpath.string(), surf().group), io_error);

    json shortlifts = gm;
    shortlifts["lifts"].erase(shortlifts["lifts"].size() - 1);
    spit(mpath, shortlifts.dump(2) + "\n");
    CHECK_THROWS_AS(load_mapping(mpath.string(), surf().group), io_error);
}

TEST_CASE("degeneration json carries the full path") {
    degeneration_path p = degenerate(base(), 14, 3);
    auto path = scratch() / "degeneration.json";
    save_degeneration(path.string(), p, 99);

    json j = json::parse(slurp(path));
    CHECK(j["seed"] == 99);
    CHECK(j["vertex"] == 14);
    REQUIRE(j["waypoints"].size() == p.waypoints.size());
    for (std::size_t k = 0; k < p.waypoints.size(); k++) {
        const json& wp = j["waypoints"][k];
        CHECK(wp["t"].get<double>() == p.waypoints[k].first);
        REQUIRE(wp["lift"].size() == 3);
        CHECK(wp["lift"][0].get<double>() == p.waypoints[k].second.x0);
        CHECK(wp["lift"][1].get<double>() == p.waypoints[k].second.x1);
        CHECK(wp["lift"][2].get<double>() == p.waypoints[k].second.x2);
        CHECK(wp["theta_min"].get<double>() == p.reports[k]);
    }
    CHECK(j["waypoints"].front()["t"].get<double>() == 0.0);
    CHECK(j["waypoints"].back()["t"].get<double>() == 1.0);
}

TEST_CASE("iterations csv lists every logged step after the seed line") {
    std::vector<iteration_record> log;
    solve_options opt;
    opt.log = &log;
    solve_balanced(uniform_weights(*base().cx), base(), opt);
    REQUIRE(!log.empty());

    auto path = scratch() / "iterations.csv";
    save_iterations_csv(path.string(), log, 7);
    std::string text = slurp(path);

    std::istringstream in(text);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "# seed=7");
    REQUIRE(std::getline(in, line));
    CHECK(line == "iteration,residual,tau");

    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string it_s, res_s, tau_s;
        REQUIRE(std::getline(row, it_s, ','));
        REQUIRE(std::getline(row, res_s, ','));
        REQUIRE(std::getline(row, tau_s, ','));
        CHECK(std::stoi(it_s) == log[rows].iteration);
        // 17 significant digits: the printed residual parses back exactly
        CHECK(std::stod(res_s) == log[rows].residual);
        CHECK(std::stod(tau_s) == log[rows].tau);
        rows++;
    }
    CHECK(rows == log.size());
}

TEST_CASE("svg render has the disk, the domain, and one path per edge") {
    std::string svg = render_svg(base(), surf());
    CHECK(svg.find("viewBox=\"-1.05 -1.05 2.1 2.1\"") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(count_occurrences(svg, "class=\"disk\"") == 1);
    CHECK(count_occurrences(svg, "class=\"side\"") == 8);
    CHECK(count_occurrences(svg, "class=\"edge\"") == base().cx->edges.size());
    CHECK(count_occurrences(svg, "class=\"ghost\"") == 0);

    render_options opt;
    opt.ghosts = true;
    std::string ghosted = render_svg(base(), surf(), opt);
    CHECK(count_occurrences(ghosted, "class=\"ghost\"") > 0);
    CHECK(ghosted.size() > svg.size());
}

TEST_CASE("svg render is deterministic for perturbed mappings too") {
    rng r(79);
    geodesic_mapping m = random_embedded_mapping(base(), r);
    std::string a = render_svg(m, surf());
    std::string b = render_svg(m, surf());
    CHECK(a == b);
    CHECK(count_occurrences(a, "class=\"edge\"") == m.cx->edges.size());
}

TEST_CASE("saved artifacts are byte deterministic") {
    auto dir = scratch();
    auto p1 = dir / "det_a.json";
    auto p2 = dir / "det_b.json";
    save_mapping(p1.string(), base(), 42);
    save_mapping(p2.string(), base(), 42);
    CHECK(slurp(p1) == slurp(p2));

    save_weights(p1.string(), *base().cx, mean_value_weights(base()), 42);
    save_weights(p2.string(), *base().cx, mean_value_weights(base()), 42);
    CHECK(slurp(p1) == slurp(p2));
}

// htri: deterministic driver for the genus-2 balanced-triangulation library.
// Exit codes: 0 ok, 1 diagnostic failure, 2 non-convergence, 3 bad input.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "htri/balance.hpp"
#include "htri/io.hpp"
#include "htri/kernel.hpp"
#include "htri/render.hpp"
#include "htri/surface.hpp"
#include "htri/triangulation.hpp"

namespace fs = std::filesystem;
using namespace htri;

namespace {

struct run_config {
    std::uint64_t seed = 42;
    double tol = 1e-10;
    int max_iters = 200000;
    std::string out_dir = ".";
    bool verbose = false;
};

std::string out_path(const run_config& cfg, const std::string& name) {
    fs::create_directories(cfg.out_dir);
    return (fs::path(cfg.out_dir) / name).string();
}

solve_options solver_opts(const run_config& cfg, std::vector<iteration_record>* log) {
    solve_options o;
    o.tol = cfg.tol;
    o.max_iters = cfg.max_iters;
    o.log = log;
    return o;
}

geodesic_mapping load_input_mapping(const run_config& cfg, const genus2_surface& s,
                                    const std::string& file, bool use_base) {
    if (use_base || file.empty()) return build_base_triangulation(s.domain, s.group);
    (void)cfg;
    return load_mapping(file, s.group);
}

int cmd_surface(const run_config& cfg) {
    genus2_surface s = build_genus2();
    double pi = std::acos(-1.0);

    double rel = s.group.relation_residual();
    double cosh_r = std::cosh(s.domain.circumradius);
    double cot = std::cos(pi / 8) / std::sin(pi / 8);
    double radius_resid = std::abs(cosh_r - cot * cot);
    double angle_resid = 0.0;
    for (int k = 0; k < 8; k++) {
        const hpoint& v = s.domain.vertex[k];
        double a = angle(v, s.domain.vertex[(k + 7) % 8], s.domain.vertex[(k + 1) % 8]);
        angle_resid = std::max(angle_resid, std::abs(a - pi / 4));
    }

    std::printf("seed=%llu\n", static_cast<unsigned long long>(cfg.seed));
    std::printf("R=%.4f\n", s.domain.circumradius);
    std::printf("relation_residual=%.3e\n", rel);
    std::printf("corner_angle_residual=%.3e\n", angle_resid);
    std::printf("circumradius_residual=%.3e\n", radius_resid);

    int rc = 0;
    if (rel >= cfg.tol) { std::printf("FAIL relation_residual >= tol\n"); rc = 1; }
    if (angle_resid >= cfg.tol) { std::printf("FAIL corner_angle_residual >= tol\n"); rc = 1; }
    if (radius_resid >= cfg.tol) { std::printf("FAIL circumradius_residual >= tol\n"); rc = 1; }
    return rc;
}

int cmd_balance(const run_config& cfg, const genus2_surface& s, bool uniform,
                const std::string& weights_file, bool base, const std::string& init_file) {
    geodesic_mapping init = load_input_mapping(cfg, s, init_file, base);
    weight_vector w = uniform ? uniform_weights(*init.cx) : load_weights(weights_file, *init.cx);

    std::vector<iteration_record> log;
    geodesic_mapping sol = solve_balanced(w, init, solver_opts(cfg, &log));

    save_mapping(out_path(cfg, "mapping.json"), sol, cfg.seed);
    save_iterations_csv(out_path(cfg, "iterations.csv"), log, cfg.seed);
    std::printf("seed=%llu\niterations=%d\nresidual=%.3e\ntheta_min=%.6f\n",
                static_cast<unsigned long long>(cfg.seed), int(log.empty() ? 0 : log.back().iteration),
                log.empty() ? 0.0 : log.back().residual, theta_min(sol));
    return 0;
}

int cmd_roundtrip(const run_config& cfg, const genus2_surface& s, const std::string& file,
                  bool base) {
    geodesic_mapping m = load_input_mapping(cfg, s, file, base);
    weight_vector w = mean_value_weights(m);
    geodesic_mapping back = solve_balanced(w, m, solver_opts(cfg, nullptr));
    double d = mapping_distance(back, m);
    save_weights(out_path(cfg, "weights.json"), *m.cx, w, cfg.seed);
    save_mapping(out_path(cfg, "mapping.json"), back, cfg.seed);
    std::printf("seed=%llu\nroundtrip_distance=%.3e\n",
                static_cast<unsigned long long>(cfg.seed), d);
    return 0;
}

int cmd_morph(const run_config& cfg, const genus2_surface& s, const std::string& file_a,
              const std::string& file_b, int samples) {
    geodesic_mapping a = load_mapping(file_a, s.group);
    geodesic_mapping b = load_mapping(file_b, s.group);
    if (samples < 2) throw io_error("morph: --samples must be at least 2");

    std::ostringstream csv;
    csv << "# seed=" << cfg.seed << "\n";
    csv << "sample,t,theta_min,dist_a,dist_b\n";
    csv.precision(17);
    geodesic_mapping cur = a;
    for (int k = 0; k < samples; k++) {
        double t = double(k) / double(samples - 1);
        cur = morph(a, b, t, &cur, solver_opts(cfg, nullptr));
        csv << k << "," << t << "," << theta_min(cur) << "," << mapping_distance(cur, a) << ","
            << mapping_distance(cur, b) << "\n";
        if (cfg.verbose) std::printf("sample %d t=%.4f theta_min=%.6f\n", k, t, theta_min(cur));
    }
    std::ofstream out(out_path(cfg, "morph.csv"), std::ios::binary);
    out << csv.str();
    save_mapping(out_path(cfg, "mapping.json"), cur, cfg.seed);
    std::printf("seed=%llu\nsamples=%d\n", static_cast<unsigned long long>(cfg.seed), samples);
    return 0;
}

int cmd_degenerate(const run_config& cfg, const genus2_surface& s, const std::string& file,
                   bool base, int vertex, int steps) {
    geodesic_mapping m = load_input_mapping(cfg, s, file, base);
    if (vertex < 0 || vertex >= m.cx->n_vertices) throw io_error("degenerate: vertex out of range");
    degeneration_path p = degenerate(m, vertex, steps);
    save_degeneration(out_path(cfg, "degeneration.json"), p, cfg.seed);
    std::printf("seed=%llu\nvertex=%d\nfinal_theta_min=%.3e\n",
                static_cast<unsigned long long>(cfg.seed), vertex, p.reports.back());
    return 0;
}

int cmd_weightlimit(const run_config& cfg, const genus2_surface& s, std::vector<int> face,
                    int levels) {
    if (face.size() != 3) throw io_error("weightlimit: --face needs i,j,k");
    geodesic_mapping base = build_base_triangulation(s.domain, s.group);
    // the probed triple must be one of the complex's faces
    bool found = false;
    for (const auto& f : base.cx->faces)
        found = found || (f[0] == face[0] && f[1] == face[1] && f[2] == face[2]);
    if (!found) throw io_error("weightlimit: not a face of the base complex");

    auto rows = weight_limit_probe(base, {face[0], face[1], face[2]}, levels, solver_opts(cfg, nullptr));
    std::ostringstream csv;
    csv << "# seed=" << cfg.seed << "\n";
    csv << "level,delta,theta_min,converged\n";
    csv.precision(17);
    for (std::size_t k = 0; k < rows.size(); k++)
        csv << k + 1 << "," << rows[k].delta << "," << rows[k].theta_m << ","
            << (rows[k].converged ? 1 : 0) << "\n";
    std::ofstream out(out_path(cfg, "weightlimit.csv"), std::ios::binary);
    out << csv.str();
    std::printf("seed=%llu\nlevels=%d\nfinal_theta_min=%.6f\n",
                static_cast<unsigned long long>(cfg.seed), levels, rows.back().theta_m);
    return 0;
}

int cmd_render(const run_config& cfg, const genus2_surface& s, const std::string& file, bool base,
               const std::string& svg_name, bool ghosts) {
    geodesic_mapping m = load_input_mapping(cfg, s, file, base);
    render_options opt;
    opt.ghosts = ghosts;
    std::string svg = render_svg(m, s, opt);
    std::ofstream out(out_path(cfg, svg_name), std::ios::binary);
    out << svg;
    std::printf("seed=%llu\nedges=%d\n", static_cast<unsigned long long>(cfg.seed),
                int(m.cx->edges.size()));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"w-balanced geodesic triangulations on the genus-2 surface"};
    app.require_subcommand(1);

    run_config cfg;
    app.add_option("--seed", cfg.seed, "run seed, echoed into all artifacts");
    app.add_option("--tol", cfg.tol, "solver / diagnostic tolerance");
    app.add_option("--max-iters", cfg.max_iters, "solver iteration cap");
    app.add_option("--out", cfg.out_dir, "output directory");
    app.add_flag("--verbose", cfg.verbose, "per-step progress on stdout");

    auto* c_surface = app.add_subcommand("surface", "octagon and deck-group diagnostics");

    auto* c_balance = app.add_subcommand("balance", "solve the w-balanced mapping");
    bool uniform = false, use_base = false;
    std::string weights_file, init_file;
    c_balance->add_flag("--uniform", uniform, "uniform weights");
    c_balance->add_option("--weights", weights_file, "weights.json input");
    c_balance->add_flag("--base", use_base, "start from the base triangulation");
    c_balance->add_option("--init", init_file, "mapping.json initial guess");

    auto* c_round = app.add_subcommand("roundtrip", "mean-value weights, then re-solve");
    std::string rt_file;
    bool rt_base = false;
    c_round->add_option("mapping", rt_file, "mapping.json input");
    c_round->add_flag("--base", rt_base, "use the base triangulation");

    auto* c_morph = app.add_subcommand("morph", "weight-space path between two mappings");
    std::string morph_a, morph_b;
    int samples = 9;
    c_morph->add_option("a", morph_a, "first mapping.json")->required();
    c_morph->add_option("b", morph_b, "second mapping.json")->required();
    c_morph->add_option("--samples", samples, "sample count on [0,1]");

    auto* c_degen = app.add_subcommand("degenerate", "drive a vertex to its kernel boundary");
    std::string dg_file;
    bool dg_base = false;
    int dg_vertex = 0, dg_steps = 16;
    c_degen->add_option("mapping", dg_file, "mapping.json input");
    c_degen->add_flag("--base", dg_base, "use the base triangulation");
    c_degen->add_option("--vertex", dg_vertex, "vertex to degenerate")->required();
    c_degen->add_option("--steps", dg_steps, "waypoint count");

    auto* c_wlim = app.add_subcommand("weightlimit", "theta_min under concentrating weights");
    std::vector<int> face;
    int levels = 10;
    c_wlim->add_option("--face", face, "face corners i,j,k")->delimiter(',')->expected(3)->required();
    c_wlim->add_option("--levels", levels, "number of delta levels");

    auto* c_render = app.add_subcommand("render", "Poincare-disk SVG of a mapping");
    std::string rd_file, rd_svg = "render.svg";
    bool rd_base = false, rd_ghosts = false;
    c_render->add_option("mapping", rd_file, "mapping.json input");
    c_render->add_option("svg", rd_svg, "output SVG filename");
    c_render->add_flag("--base", rd_base, "use the base triangulation");
    c_render->add_flag("--ghosts", rd_ghosts, "deck-translated ghost copies");

    // allow the global flags (--seed, --out, ...) after the subcommand name
    for (auto* sc : app.get_subcommands({})) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;  // help exits clean, malformed usage is bad input
    }

    try {
        genus2_surface s = build_genus2();
        if (c_surface->parsed()) return cmd_surface(cfg);
        if (c_balance->parsed()) {
            if (uniform == !weights_file.empty())
                throw io_error("balance: give exactly one of --uniform / --weights");
            if (use_base == !init_file.empty())
                throw io_error("balance: give exactly one of --base / --init");
            return cmd_balance(cfg, s, uniform, weights_file, use_base, init_file);
        }
        if (c_round->parsed()) {
            if (rt_base == !rt_file.empty())
                throw io_error("roundtrip: give a mapping file or --base");
            return cmd_roundtrip(cfg, s, rt_file, rt_base);
        }
        if (c_morph->parsed()) return cmd_morph(cfg, s, morph_a, morph_b, samples);
        if (c_degen->parsed()) {
            if (dg_base == !dg_file.empty())
                throw io_error("degenerate: give a mapping file or --base");
            return cmd_degenerate(cfg, s, dg_file, dg_base, dg_vertex, dg_steps);
        }
        if (c_wlim->parsed()) return cmd_weightlimit(cfg, s, face, levels);
        if (c_render->parsed()) {
            if (rd_base == !rd_file.empty())
                throw io_error("render: give a mapping file or --base");
            return cmd_render(cfg, s, rd_file, rd_base, rd_svg, rd_ghosts);
        }
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const solve_error& e) {
        std::cerr << "error: " << e.what() << " (last residual " << e.last_residual << ")\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

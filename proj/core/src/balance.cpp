#include "htri/balance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace htri {

weight_vector uniform_weights(const surface_complex& cx) {
    return weight_vector(2 * cx.edges.size(), 1.0);
}

weight_vector normalize_weights(const surface_complex& cx, const weight_vector& w) {
    if (w.size() != 2 * cx.edges.size())
        throw std::invalid_argument("normalize_weights: wrong weight count");
    for (double x : w)
        if (!(x > 0.0)) throw std::invalid_argument("normalize_weights: weights must be positive");
    weight_vector out(w.size());
    for (int v = 0; v < cx.n_vertices; v++) {
        double s = 0.0;
        for (int e : cx.out_edges[v]) s += w[e];
        for (int e : cx.out_edges[v]) out[e] = w[e] / s;
    }
    return out;
}

std::vector<vec3> balance_residual(const geodesic_mapping& m, const weight_vector& w) {
    const surface_complex& cx = *m.cx;
    std::vector<vec3> r(cx.n_vertices, vec3{0, 0, 0});
    for (int v = 0; v < cx.n_vertices; v++) {
        vec3 acc{0, 0, 0};
        for (int e : cx.out_edges[v]) acc += w[e] * edge_vector_dir(m, e).vec;
        r[v] = acc;
    }
    return r;
}

double max_residual_norm(const geodesic_mapping& m, const weight_vector& w) {
    auto r = balance_residual(m, w);
    double worst = 0.0;
    for (int v = 0; v < m.cx->n_vertices; v++) {
        // residuals are tangent at the lift, so the Minkowski norm is Euclidean-like
        worst = std::max(worst, std::sqrt(std::max(0.0, mdot(r[v], r[v]))));
    }
    return worst;
}

geodesic_mapping solve_balanced(const weight_vector& w, const geodesic_mapping& init,
                                const solve_options& opt) {
    const surface_complex& cx = *init.cx;
    weight_vector wn = normalize_weights(cx, w);

    geodesic_mapping cur = init;
    double tau = 1.0;
    int accepted_run = 0;
    double res = max_residual_norm(cur, wn);
    if (opt.log) opt.log->push_back({0, res, tau});

    for (int it = 1; it <= opt.max_iters; it++) {
        if (res < opt.tol) break;
        auto r = balance_residual(cur, wn);
        geodesic_mapping next = cur;
        for (int v = 0; v < cx.n_vertices; v++) next.lift[v] = exp_map(cur.lift[v], tau * r[v]);
        double nres = max_residual_norm(next, wn);
        if (nres < res) {
            cur = std::move(next);
            res = nres;
            if (++accepted_run >= 5) {
                tau = std::min(1.0, tau * 1.5);
                accepted_run = 0;
            }
        } else {
            tau *= 0.5;
            accepted_run = 0;
            if (tau < 1e-300) throw solve_error("solve_balanced: step size underflow", res);
        }
        if (opt.log) opt.log->push_back({it, res, tau});
        if (it == opt.max_iters && res >= opt.tol)
            throw solve_error("solve_balanced: no convergence after max_iters", res);
    }
    if (res >= opt.tol) throw solve_error("solve_balanced: no convergence after max_iters", res);
    if (!is_embedded(cur)) throw solve_error("solve_balanced: converged to non-embedding", res);
    return cur;
}

weight_vector mean_value_weights(const geodesic_mapping& m) {
    const surface_complex& cx = *m.cx;
    auto rep = angle_report(m);
    // tan(angle/2) needs every corner strictly inside (0, pi), which only the
    // interior of the space of embedded mappings guarantees
    bool flat = rep.degenerate || !is_embedded(m);
    for (const auto& cs : rep.corner)
        for (double a : cs) flat = flat || a <= 1e-9 || a >= 3.141592653589793 - 1e-9;
    if (flat) throw std::domain_error("mean_value_weights: mapping on boundary");

    // directed edge e=(i->j): for each face containing the corner i with edge ij,
    // take the angle at i between ij and the third vertex. Two faces contribute.
    weight_vector w(2 * cx.edges.size(), 0.0);
    for (size_t f = 0; f < cx.faces.size(); f++) {
        const auto& fd = cx.face_dir[f];
        // face corners are (i,j,k); fd = [ij, jk, ki, ik, ji, kj]
        // alpha at i is the corner angle of this face at i; it sits between edges ij and ik.
        const auto& cs = rep.corner[f];  // angles at i, j, k
        struct part {
            int edge;
            double ang;
        };
        // the half-angle tangent at the corner feeds both outgoing edges of that corner
        const part parts[6] = {
            {fd[0], cs[0]}, {fd[3], cs[0]},  // i -> j, i -> k
            {fd[1], cs[1]}, {fd[4], cs[1]},  // j -> k, j -> i
            {fd[2], cs[2]}, {fd[5], cs[2]},  // k -> i, k -> j
        };
        for (const auto& p : parts) w[p.edge] += std::tan(p.ang / 2);
    }
    // divide by the geodesic edge length (same for both directions)
    for (size_t k = 0; k < cx.edges.size(); k++) {
        vec3 u = edge_vector_dir(m, int(2 * k)).vec;
        double l = std::sqrt(std::max(0.0, mdot(u, u)));
        if (!(l > 0)) throw std::domain_error("mean_value_weights: mapping on boundary");
        w[2 * k] /= l;
        w[2 * k + 1] /= l;
    }
    return w;
}

double roundtrip_check(const geodesic_mapping& m, const solve_options& opt) {
    auto w = mean_value_weights(m);
    auto back = solve_balanced(w, m, opt);
    return mapping_distance(back, m);
}

geodesic_mapping morph(const geodesic_mapping& a, const geodesic_mapping& b, double t,
                       const geodesic_mapping* warm_start, const solve_options& opt) {
    if (!a.cx->same_combinatorics(*b.cx))
        throw std::invalid_argument("morph: different homotopy class");
    auto wa = normalize_weights(*a.cx, mean_value_weights(a));
    auto wb = normalize_weights(*b.cx, mean_value_weights(b));
    weight_vector w(wa.size());
    for (size_t i = 0; i < w.size(); i++) w[i] = (1 - t) * wa[i] + t * wb[i];
    const geodesic_mapping& init = warm_start ? *warm_start : a;
    return solve_balanced(w, init, opt);
}

std::vector<weight_limit_row> weight_limit_probe(const geodesic_mapping& base,
                                                 const std::array<int, 3>& face, int levels,
                                                 const solve_options& opt) {
    const surface_complex& cx = *base.cx;
    int i = face[0], j = face[1], k = face[2];
    int eij = cx.dir_edge(i, j), eik = cx.dir_edge(i, k);
    if (eij < 0 || eik < 0) throw std::invalid_argument("weight_limit_probe: face edges missing");

    std::vector<weight_limit_row> rows;
    const geodesic_mapping* warm = &base;
    geodesic_mapping last = base;
    for (int lvl = 1; lvl <= levels; lvl++) {
        double delta = std::ldexp(1.0, -lvl);
        weight_vector w = uniform_weights(cx);
        // vertex i's row: mass 1-delta split over ij,ik, delta spread over the rest
        int deg = int(cx.out_edges[i].size());
        double rest = delta / double(deg - 2);
        for (int e : cx.out_edges[i]) w[e] = rest;
        w[eij] = (1 - delta) / 2;
        w[eik] = (1 - delta) / 2;
        weight_limit_row row{delta, 0.0, false};
        try {
            last = solve_balanced(w, *warm, opt);
            row.theta_m = theta_min(last);
            row.converged = true;
            warm = &last;
        } catch (const solve_error&) {
            row.converged = false;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace htri

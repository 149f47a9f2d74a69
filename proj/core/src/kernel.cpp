#include "htri/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace htri {

namespace {

constexpr double kClipEps = 1e-13;    // membership slack while clipping
constexpr double kWeldEps = 1e-12;    // vertex dedupe distance

// orthonormal tangent pair at p (completes p to a Minkowski frame)
void tangent_frame(const hpoint& p, vec3& e1, vec3& e2) {
    vec3 a{0.0, 1.0, 0.0};
    vec3 t = a + mdot(p, a) * p;  // project onto the tangent plane at p
    double n = snorm(t);
    if (n < 1e-9) {
        a = {0.0, 0.0, 1.0};
        t = a + mdot(p, a) * p;
        n = snorm(t);
    }
    e1 = (1.0 / n) * t;
    vec3 c = mink_cross(p, e1);
    e2 = (1.0 / snorm(c)) * c;
}

hpoint polar_point(const hpoint& center, double r, double theta, const vec3& e1, const vec3& e2) {
    return exp_map(center, r * (std::cos(theta) * e1) + r * (std::sin(theta) * e2));
}

hpoint normalized_centroid(const std::vector<hpoint>& poly) {
    vec3 s{0, 0, 0};
    for (const auto& p : poly) s += p;
    double n2 = -mdot(s, s);  // timelike sum: positive
    return (1.0 / std::sqrt(n2)) * s;
}

// distance from x to the geodesic segment (a, b)
double point_segment_dist(const hpoint& x, const hpoint& a, const hpoint& b) {
    oriented_geodesic g = geodesic_through(a, b, x);  // orientation irrelevant here
    double xu = mdot(x, g.normal);
    // foot of the perpendicular, then check it lands between a and b
    vec3 f = x - xu * g.normal;
    hpoint foot = (1.0 / std::sqrt(1.0 + xu * xu)) * f;
    double lab = dist(a, b);
    if (dist(a, foot) + dist(foot, b) <= lab + 1e-9) return std::asinh(std::abs(xu));
    return std::min(dist(x, a), dist(x, b));
}

}  // namespace

star_polygon_t star_polygon(const geodesic_mapping& m, int v) {
    const surface_complex& cx = *m.cx;
    star_polygon_t s;
    s.center = m.lift[v];
    s.ring = cx.link[v];
    s.boundary.reserve(s.ring.size());
    s.spokes.reserve(s.ring.size());
    for (int j : s.ring) {
        int e = cx.dir_edge(v, j);
        s.boundary.push_back(cx.emat[e] * m.lift[j]);
        s.spokes.push_back(log_map(s.center, s.boundary.back()));
    }
    // embeddedness at v: consecutive spoke angles positive, summing to 2pi
    size_t n = s.boundary.size();
    double sum = 0.0;
    for (size_t i = 0; i < n; i++) {
        double a;
        try {
            a = angle(s.center, s.boundary[i], s.boundary[(i + 1) % n]);
        } catch (const std::domain_error&) {
            throw std::domain_error("star_polygon: star is not embedded");
        }
        if (!(a > 0.0) || a >= 3.14159265358979)
            throw std::domain_error("star_polygon: star is not embedded");
        sum += a;
    }
    if (std::abs(sum - 2.0 * 3.141592653589793238462643383279502884) > 1e-7)
        throw std::domain_error("star_polygon: star is not embedded");
    return s;
}

std::vector<hpoint> clip_polygon(const std::vector<hpoint>& poly, const oriented_geodesic& hp) {
    std::vector<hpoint> out;
    size_t n = poly.size();
    if (n == 0) return out;
    std::vector<double> val(n);
    for (size_t i = 0; i < n; i++) val[i] = mdot(poly[i], hp.normal);
    for (size_t i = 0; i < n; i++) {
        size_t j = (i + 1) % n;
        bool ini = val[i] <= kClipEps, inj = val[j] <= kClipEps;
        if (ini) out.push_back(poly[i]);
        if (ini != inj) {
            // crossing point: positive combination keeps us on the upper sheet
            double al = std::abs(val[j]), be = std::abs(val[i]);
            vec3 c = al * poly[i] + be * poly[j];
            double n2 = -mdot(c, c);
            out.push_back((1.0 / std::sqrt(n2)) * c);
        }
    }
    // weld duplicate consecutive vertices (clipping at a vertex makes them)
    std::vector<hpoint> welded;
    for (const auto& p : out) {
        if (welded.empty() || dist(welded.back(), p) > kWeldEps) welded.push_back(p);
    }
    while (welded.size() > 1 && dist(welded.front(), welded.back()) <= kWeldEps) welded.pop_back();
    return welded;
}

convex_disk compute_kernel(const star_polygon_t& s) {
    convex_disk d;
    size_t n = s.boundary.size();
    d.halfplanes.reserve(n);
    for (size_t i = 0; i < n; i++)
        d.halfplanes.push_back(geodesic_through(s.boundary[i], s.boundary[(i + 1) % n], s.center));

    double radius = 0.0;
    for (const auto& b : s.boundary) radius = std::max(radius, dist(s.center, b));
    radius += 1.0;

    vec3 e1, e2;
    tangent_frame(s.center, e1, e2);
    std::vector<hpoint> poly;
    poly.reserve(64);
    for (int k = 0; k < 64; k++)
        poly.push_back(polar_point(s.center, radius, 2.0 * 3.141592653589793238462643383279502884 * k / 64.0, e1, e2));

    for (const auto& hp : d.halfplanes) {
        poly = clip_polygon(poly, hp);
        if (poly.size() < 3) throw std::runtime_error("compute_kernel: empty kernel interior");
    }
    d.boundary_poly = std::move(poly);
    return d;
}

bool point_in_disk(const convex_disk& d, const hpoint& x, double eps) {
    for (const auto& hp : d.halfplanes)
        if (mdot(x, hp.normal) > eps) return false;
    return true;
}

double polygon_area(const std::vector<hpoint>& poly) {
    hpoint c = normalized_centroid(poly);
    double area = 0.0;
    size_t n = poly.size();
    for (size_t i = 0; i < n; i++) area += triangle_area(c, poly[i], poly[(i + 1) % n]);
    return area;
}

double hausdorff_boundary(const std::vector<hpoint>& a, const std::vector<hpoint>& b) {
    auto directed = [](const std::vector<hpoint>& from, const std::vector<hpoint>& to) {
        double worst = 0.0;
        size_t n = from.size(), m = to.size();
        for (size_t i = 0; i < n; i++) {
            const hpoint& p = from[i];
            const hpoint& q = from[(i + 1) % n];
            for (int s = 0; s < 64; s++) {
                hpoint x = geodesic_eval(p, q, double(s) / 63.0);
                double best = std::numeric_limits<double>::infinity();
                for (size_t j = 0; j < m; j++)
                    best = std::min(best, point_segment_dist(x, to[j], to[(j + 1) % m]));
                worst = std::max(worst, best);
            }
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

std::vector<quad_node> quadrature_nodes(const convex_disk& d) {
    // 7-point degree-5 symmetric triangle rule
    static const double kA1 = 0.059715871789770, kB1 = 0.470142064105115;
    static const double kA2 = 0.797426985353087, kB2 = 0.101286507323456;
    static const double kW0 = 9.0 / 40.0;
    static const double kW1 = 0.132394152788506;  // (155 + sqrt 15)/1200, at the kA1 group
    static const double kW2 = 0.125939180544827;  // (155 - sqrt 15)/1200, at the kA2 group
    static const double kBary[7][3] = {
        {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
        {kA1, kB1, kB1}, {kB1, kA1, kB1}, {kB1, kB1, kA1},
        {kA2, kB2, kB2}, {kB2, kA2, kB2}, {kB2, kB2, kA2},
    };
    static const double kWts[7] = {kW0, kW1, kW1, kW1, kW2, kW2, kW2};

    const auto& poly = d.boundary_poly;
    hpoint apex = normalized_centroid(poly);
    std::vector<quad_node> nodes;
    size_t n = poly.size();
    nodes.reserve(7 * n);
    for (size_t i = 0; i < n; i++) {
        const hpoint& a = poly[i];
        const hpoint& b = poly[(i + 1) % n];
        double ar = triangle_area(apex, a, b);
        if (ar <= 0.0) continue;
        for (int k = 0; k < 7; k++) {
            vec3 s = kBary[k][0] * apex + kBary[k][1] * a + kBary[k][2] * b;
            double n2 = -mdot(s, s);
            nodes.push_back({(1.0 / std::sqrt(n2)) * s, kWts[k] * ar});
        }
    }
    return nodes;
}

std::vector<quad_node> mc_quadrature_nodes(const convex_disk& d, int count, std::uint64_t seed) {
    hpoint c = normalized_centroid(d.boundary_poly);
    double radius = 0.0;
    for (const auto& p : d.boundary_poly) radius = std::max(radius, dist(c, p));
    vec3 e1, e2;
    tangent_frame(c, e1, e2);

    rng r(seed);
    std::vector<quad_node> nodes;
    nodes.reserve(count);
    double w = polygon_area(d.boundary_poly) / double(count);
    long attempts = 0, cap = 10000L * count;
    while (int(nodes.size()) < count) {
        if (++attempts > cap) throw std::runtime_error("mc_quadrature_nodes: rejection stalled");
        // uniform in hyperbolic area over the disk of the given radius
        double t = std::acosh(1.0 + r.uniform() * (std::cosh(radius) - 1.0));
        double th = 2.0 * 3.141592653589793238462643383279502884 * r.uniform();
        hpoint x = polar_point(c, t, th, e1, e2);
        if (point_in_disk(d, x, 0.0)) nodes.push_back({x, w});
    }
    return nodes;
}

double quadrature_energy(const std::vector<quad_node>& nodes, const hpoint& x) {
    double e = 0.0;
    for (const auto& nd : nodes) {
        double d0 = dist(x, nd.p);
        e += nd.w * d0 * d0;
    }
    return e;
}

vec3 quadrature_gradient(const std::vector<quad_node>& nodes, const hpoint& x) {
    vec3 g{0, 0, 0};
    for (const auto& nd : nodes) g += nd.w * log_map(x, nd.p).vec;
    return g;
}

hpoint karcher_mean_of(const std::vector<quad_node>& nodes, const hpoint& x0, double tol) {
    double mass = 0.0;
    for (const auto& nd : nodes) mass += nd.w;
    hpoint x = x0;
    vec3 g = quadrature_gradient(nodes, x);
    double e = quadrature_energy(nodes, x);
    double gn = snorm(g);
    double kappa = 1.0;
    for (int it = 0; it < 2000; it++) {
        if (gn < tol) return x;
        hpoint xc = exp_map(x, (kappa / mass) * g);
        double ec = quadrature_energy(nodes, xc);
        vec3 gc = quadrature_gradient(nodes, xc);
        double gcn = snorm(gc);
        // near the minimum the energy decrement drops under one ulp of E,
        // so a shrinking gradient norm also counts as progress
        if (ec < e || gcn < gn) {
            x = xc;
            e = ec;
            g = gc;
            gn = gcn;
        } else {
            kappa *= 0.5;
            if (kappa < 1e-14) break;
        }
    }
    if (gn < tol) return x;
    std::ostringstream os;
    os << "karcher_mean: descent stalled at gradient norm " << gn;
    throw std::runtime_error(os.str());
}

hpoint karcher_mean(const convex_disk& d, double tol) {
    auto nodes = quadrature_nodes(d);
    return karcher_mean_of(nodes, normalized_centroid(d.boundary_poly), tol);
}

hpoint radial_project(const convex_disk& d, const hpoint& x, const hpoint& y) {
    double sep = dist(x, y);
    if (sep < 1e-12) throw std::domain_error("projection undefined at center");
    vec3 w = log_map(x, y).vec;
    vec3 wh = (1.0 / snorm(w)) * w;

    double best = std::numeric_limits<double>::infinity();
    for (const auto& hp : d.halfplanes) {
        double wu = mdot(wh, hp.normal);
        if (wu <= 1e-15) continue;  // ray parallel or moving away from this wall
        double th = -mdot(x, hp.normal) / wu;
        if (th <= 0.0 || th >= 1.0) continue;
        double t = std::atanh(th);
        best = std::min(best, t);
    }
    if (!std::isfinite(best)) throw std::runtime_error("radial_project: ray does not meet boundary");
    return renormalize(std::cosh(best) * x + std::sinh(best) * wh);
}

geodesic_mapping move_vertex(const geodesic_mapping& m, int v, const hpoint& x) {
    convex_disk d = compute_kernel(star_polygon(m, v));
    if (!point_in_disk(d, x)) throw std::domain_error("move_vertex: target outside kernel");
    geodesic_mapping out = m;
    out.lift[v] = x;
    return out;
}

degeneration_path degenerate(const geodesic_mapping& m, int v, int steps) {
    if (steps < 1) throw std::invalid_argument("degenerate: steps must be positive");
    geodesic_mapping base = m;
    convex_disk d = compute_kernel(star_polygon(base, v));
    hpoint b = karcher_mean(d);
    // a position at the mean has no projection direction: nudge it first
    std::uint64_t seed = 2026;
    while (dist(base.lift[v], b) < 1e-8) {
        rng r(seed++);
        vec3 t = r.tangent_at(base.lift[v], 1.0);
        base = perturb_vertex(base, v, htangent{base.lift[v], (1e-6 / snorm(t)) * t});
        d = compute_kernel(star_polygon(base, v));
        b = karcher_mean(d);
    }
    hpoint z = radial_project(d, b, base.lift[v]);

    degeneration_path path;
    path.base = base;
    path.vertex = v;
    hpoint p0 = base.lift[v];
    for (int k = 0; k <= steps; k++) {
        double t = double(k) / double(steps);
        hpoint y = k == 0 ? p0 : (k == steps ? z : geodesic_eval(p0, z, t));
        geodesic_mapping step = move_vertex(base, v, y);
        path.waypoints.emplace_back(t, y);
        path.reports.push_back(theta_min(step));
    }
    return path;
}

}  // namespace htri

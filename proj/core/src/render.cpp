#include "htri/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace htri {

namespace {

struct xy {
    double x, y;
};

// emitted coordinates: Poincare u right, v up (flip the SVG y axis)
xy emit_coords(const hpoint& p) {
    disk_point z = to_poincare(p);
    return {z.u, -z.v};
}

std::string fmt(double x) {
    char buf[32];
    // normalize the sign of zero so identical drawings share bytes
    if (x == 0.0) x = 0.0;
    std::snprintf(buf, sizeof(buf), "%.6f", x);
    return buf;
}

// Circular arc from a to b on the geodesic circle (orthogonal to the unit
// circle): center c solves 2 <z, c> = |z|^2 + 1 for both endpoints.
std::string arc_path(const xy& a, const xy& b) {
    double r1 = a.x * a.x + a.y * a.y + 1.0, r2 = b.x * b.x + b.y * b.y + 1.0;
    double det = 4.0 * (a.x * b.y - a.y * b.x);
    std::string d = "M " + fmt(a.x) + " " + fmt(a.y) + " ";
    if (std::abs(det) < 1e-9) return d + "L " + fmt(b.x) + " " + fmt(b.y);  // diameter
    double cx = (r1 * 2.0 * b.y - r2 * 2.0 * a.y) / det;
    double cy = (r2 * 2.0 * a.x - r1 * 2.0 * b.x) / det;
    double r = std::sqrt(std::max(0.0, cx * cx + cy * cy - 1.0));
    double t1 = std::atan2(a.y - cy, a.x - cx), t2 = std::atan2(b.y - cy, b.x - cx);
    double dt = t2 - t1;
    while (dt > 3.141592653589793) dt -= 2.0 * 3.141592653589793;
    while (dt < -3.141592653589793) dt += 2.0 * 3.141592653589793;
    int sweep = dt > 0 ? 1 : 0;  // geodesic chords subtend < pi, so never large-arc
    return d + "A " + fmt(r) + " " + fmt(r) + " 0 0 " + std::to_string(sweep) + " " + fmt(b.x) +
           " " + fmt(b.y);
}

struct run {
    hpoint from, to;  // reduced endpoints inside the domain
};

// Split the geodesic segment p -> q into runs of constant reducing deck word,
// refining each boundary crossing by bisection.
std::vector<run> domain_runs(const genus2_surface& s, const hpoint& p, const hpoint& q,
                             int samples) {
    auto reduce = [&](double t) { return reduce_to_domain(s.group, s.domain, geodesic_eval(p, q, t)); };
    std::vector<run> runs;
    double t0 = 0.0;
    domain_reduction r0 = reduce(0.0);
    int n = samples < 2 ? 2 : samples;
    double prev_t = 0.0;
    domain_reduction prev = r0;
    for (int k = 1; k < n; k++) {
        double t = double(k) / double(n - 1);
        domain_reduction cur = reduce(t);
        if (!(cur.word == prev.word)) {
            // locate the crossing between prev_t and t
            double lo = prev_t, hi = t;
            for (int it = 0; it < 40 && hi - lo > 1e-13; it++) {
                double mid = 0.5 * (lo + hi);
                if (reduce(mid).word == prev.word) lo = mid;
                else hi = mid;
            }
            mat3 back = inverse_isometry(s.group.eval(prev.word));
            runs.push_back({renormalize(back * geodesic_eval(p, q, t0)),
                            renormalize(back * geodesic_eval(p, q, lo))});
            t0 = hi;
            prev = reduce(hi);
        }
        prev_t = t;
    }
    mat3 back = inverse_isometry(s.group.eval(prev.word));
    runs.push_back({renormalize(back * geodesic_eval(p, q, t0)),
                    renormalize(back * geodesic_eval(p, q, 1.0))});
    return runs;
}

}  // namespace

std::string render_svg(const geodesic_mapping& m, const genus2_surface& s,
                       const render_options& opt) {
    const surface_complex& cx = *m.cx;

    // collect the clipped runs once; ghosts reuse them
    std::vector<std::vector<run>> edge_runs(cx.edges.size());
    for (std::size_t k = 0; k < cx.edges.size(); k++) {
        int e = int(2 * k);
        hpoint pi = m.lift[cx.efrom[e]];
        hpoint pj = renormalize(cx.emat[e] * m.lift[cx.eto[e]]);
        edge_runs[k] = domain_runs(s, pi, pj, opt.samples);
    }

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.05 -1.05 2.1 2.1\" "
           "width=\"800\" height=\"800\">\n";
    svg << "<circle class=\"disk\" cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#aaaaaa\" "
           "stroke-width=\"0.004\"/>\n";

    if (opt.ghosts) {
        svg << "<g class=\"ghosts\" fill=\"none\" stroke=\"#dddddd\" stroke-width=\"0.002\">\n";
        for (int letter : {1, -1, 2, -2, 3, -3, 4, -4}) {
            const mat3& g = s.group.generator(letter);
            for (const auto& runs : edge_runs)
                for (const auto& r : runs)
                    svg << "<path class=\"ghost\" d=\""
                        << arc_path(emit_coords(renormalize(g * r.from)),
                                    emit_coords(renormalize(g * r.to)))
                        << "\"/>\n";
        }
        svg << "</g>\n";
    }

    svg << "<g class=\"domain\" fill=\"none\" stroke=\"#cc6666\" stroke-width=\"0.004\">\n";
    for (int k = 0; k < 8; k++)
        svg << "<path class=\"side\" d=\""
            << arc_path(emit_coords(s.domain.vertex[k]), emit_coords(s.domain.vertex[(k + 1) % 8]))
            << "\"/>\n";
    svg << "</g>\n";

    svg << "<g class=\"edges\" fill=\"none\" stroke=\"#3366cc\" stroke-width=\"0.003\">\n";
    for (const auto& runs : edge_runs) {
        svg << "<path class=\"edge\" d=\"";
        for (std::size_t r = 0; r < runs.size(); r++) {
            if (r) svg << " ";
            svg << arc_path(emit_coords(runs[r].from), emit_coords(runs[r].to));
        }
        svg << "\"/>\n";
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

}  // namespace htri

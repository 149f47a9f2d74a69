#pragma once
// Star polygons around a vertex, their kernels as half-plane intersections,
// Karcher means under a fixed quadrature, radial projection to the kernel
// boundary, vertex moves, and the single-vertex degeneration path.

#include <utility>
#include <vector>

#include "htri/rng.hpp"
#include "htri/triangulation.hpp"

namespace htri {

struct star_polygon_t {
    hpoint center;                 // lift of the vertex
    std::vector<hpoint> boundary;  // link vertices in v's chart, cyclic face order
    std::vector<htangent> spokes;  // log_map(center, boundary[j])
    std::vector<int> ring;         // link vertex ids matching boundary order
};

struct convex_disk {
    std::vector<oriented_geodesic> halfplanes;  // {<x,u> <= 0} each
    std::vector<hpoint> boundary_poly;          // intersection polygon, cyclic
};

// Lift the closed star of v into v's chart. Throws std::domain_error when the
// star is not embedded (angle sum at v off 2pi or a degenerate spoke pair).
star_polygon_t star_polygon(const geodesic_mapping& m, int v);

// Kernel of the star: intersection of the inward half-planes of the complete
// geodesics through each boundary edge. Computed by clipping a large geodesic
// disk around the center, which keeps the clip subject convex throughout.
// Throws std::runtime_error on an empty interior (impossible for valid stars).
convex_disk compute_kernel(const star_polygon_t& s);

// One Sutherland-Hodgman pass of a convex polygon against {<x,u> <= 0}.
std::vector<hpoint> clip_polygon(const std::vector<hpoint>& poly, const oriented_geodesic& hp);

bool point_in_disk(const convex_disk& d, const hpoint& x, double eps = 1e-9);

// Hyperbolic area by fanning from the normalized vertex centroid.
double polygon_area(const std::vector<hpoint>& poly);

// Max over boundary samples of the distance to the other boundary, symmetrized.
double hausdorff_boundary(const std::vector<hpoint>& a, const std::vector<hpoint>& b);

struct quad_node {
    hpoint p;
    double w;
};

// Fixed quadrature for area integrals over the disk: fan triangles from the
// normalized vertex centroid, 7-point degree-5 rule per triangle.
std::vector<quad_node> quadrature_nodes(const convex_disk& d);
// Monte Carlo fallback (uniform area sampling, rejection): validation only.
std::vector<quad_node> mc_quadrature_nodes(const convex_disk& d, int count, std::uint64_t seed);

// E(x) = sum w_k d(x, p_k)^2 and its negative half-gradient sum w_k log_x(p_k).
double quadrature_energy(const std::vector<quad_node>& nodes, const hpoint& x);
vec3 quadrature_gradient(const std::vector<quad_node>& nodes, const hpoint& x);

// Riemannian center of mass of the node set: descent x <- exp_x(kappa/mass g),
// kappa halving on non-improvement, until |g| < tol. Throws std::runtime_error
// (message carries the last gradient norm) when the descent stalls.
hpoint karcher_mean_of(const std::vector<quad_node>& nodes, const hpoint& x0, double tol = 1e-8);
hpoint karcher_mean(const convex_disk& d, double tol = 1e-8);

// Follow the ray from x through y to the first half-plane boundary of d.
// Throws std::domain_error("projection undefined at center") when y ~ x.
hpoint radial_project(const convex_disk& d, const hpoint& x, const hpoint& y);

// Replace v's lift by x after checking x against ker(star(v)).
// Throws std::domain_error when x lies outside the kernel.
geodesic_mapping move_vertex(const geodesic_mapping& m, int v, const hpoint& x);

struct degeneration_path {
    geodesic_mapping base;
    int vertex = -1;
    std::vector<std::pair<double, hpoint>> waypoints;  // (t, y(t)), t = k/steps
    std::vector<double> reports;                       // theta_min per waypoint
};

// Push v's lift along the geodesic from its position to the radial projection
// of that position (from the kernel's Karcher mean) onto the kernel boundary.
// A position that coincides with the mean is first nudged by a fixed-seed
// tangent offset of norm 1e-6 (retried with fresh seeds until it separates).
degeneration_path degenerate(const geodesic_mapping& m, int v, int steps);

}  // namespace htri

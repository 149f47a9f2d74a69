#pragma once
// Hyperbolic plane primitives in the hyperboloid model:
// points live on {<x,x> = -1, x0 > 0} in Minkowski space R^{2,1},
// isometries are orthochronous SO(2,1) matrices. Curvature is -1.
// The Poincare disk appears only as an output chart.

#include <array>
#include <cmath>
#include <stdexcept>

namespace htri {

struct vec3 {
    double x0 = 0.0, x1 = 0.0, x2 = 0.0;

    friend vec3 operator+(const vec3& a, const vec3& b) { return {a.x0 + b.x0, a.x1 + b.x1, a.x2 + b.x2}; }
    friend vec3 operator-(const vec3& a, const vec3& b) { return {a.x0 - b.x0, a.x1 - b.x1, a.x2 - b.x2}; }
    friend vec3 operator*(double s, const vec3& a) { return {s * a.x0, s * a.x1, s * a.x2}; }
    friend vec3 operator-(const vec3& a) { return {-a.x0, -a.x1, -a.x2}; }
    vec3& operator+=(const vec3& b) { x0 += b.x0; x1 += b.x1; x2 += b.x2; return *this; }
};

using hpoint = vec3;

struct htangent {
    hpoint base;
    vec3 vec;
};

// Minkowski inner product <a,b> = -a0 b0 + a1 b1 + a2 b2.
inline double mdot(const vec3& a, const vec3& b) {
    return -a.x0 * b.x0 + a.x1 * b.x1 + a.x2 * b.x2;
}

inline hpoint origin() { return {1.0, 0.0, 0.0}; }

// Project back onto the hyperboloid along the x0 axis (drift control).
inline hpoint renormalize(const vec3& x) {
    return {std::sqrt(1.0 + x.x1 * x.x1 + x.x2 * x.x2), x.x1, x.x2};
}

// d = 2 asinh(|p-q|_M / 2), algebraically equal to arccosh(-<p,q>) but exact at p = q.
inline double dist(const hpoint& p, const hpoint& q) {
    vec3 d = p - q;
    double s2 = mdot(d, d);
    if (s2 < 0.0) s2 = 0.0;
    return 2.0 * std::asinh(0.5 * std::sqrt(s2));
}

// Minkowski norm of a spacelike vector (0 for rounding-negative input).
inline double snorm(const vec3& v) {
    double s2 = mdot(v, v);
    return s2 > 0.0 ? std::sqrt(s2) : 0.0;
}

hpoint exp_map(const htangent& t);
inline hpoint exp_map(const hpoint& p, const vec3& v) { return exp_map(htangent{p, v}); }

// Inverse of exp_map; zero vector when p = q. Cancellation-free form.
htangent log_map(const hpoint& p, const hpoint& q);

// Riemannian angle at `at` between directions to to1 and to2.
// Throws std::domain_error when an endpoint coincides with `at`.
double angle(const hpoint& at, const hpoint& to1, const hpoint& to2);
// Same, but reports 0 for a degenerate corner instead of throwing.
double angle_or_zero(const hpoint& at, const hpoint& to1, const hpoint& to2);

// Constant-speed geodesic with g(0)=p, g(1)=q.
hpoint geodesic_eval(const hpoint& p, const hpoint& q, double t);

// Gauss-Bonnet: area = pi - (angle sum). Degenerate triangles report 0.
double triangle_area(const hpoint& a, const hpoint& b, const hpoint& c);

struct disk_point {
    double u = 0.0, v = 0.0;
};

disk_point to_poincare(const hpoint& p);
hpoint from_poincare(const disk_point& z);  // throws std::domain_error outside the open disk

// --- isometries ---------------------------------------------------------

struct mat3 {
    // row-major; acts on column vectors (x0,x1,x2)
    std::array<std::array<double, 3>, 3> m{};

    static mat3 identity();
    friend mat3 operator*(const mat3& a, const mat3& b);
    friend vec3 operator*(const mat3& a, const vec3& v);
    friend mat3 operator-(const mat3& a, const mat3& b);
};

mat3 rotation(double alpha);       // about the origin
mat3 translation_x(double s);      // along the x1 axis
mat3 inverse_isometry(const mat3& m);  // exact: J M^T J
double frobenius(const mat3& m);
double isometry_defect(const mat3& m);  // |M^T J M - J|_F
double det3(const vec3& a, const vec3& b, const vec3& c);  // columns

// J (a x b): Minkowski-orthogonal to both arguments.
vec3 mink_cross(const vec3& a, const vec3& b);

// Unit spacelike normal of the geodesic through p and q, oriented so that
// <inside, u> < 0 (the positive half-plane {<x,u> <= 0} contains `inside`).
struct oriented_geodesic {
    vec3 normal;
};
oriented_geodesic geodesic_through(const hpoint& p, const hpoint& q, const hpoint& inside);

// Orthonormal frame [p | unit log direction p->q | unit cross]; p != q required.
mat3 frame_at(const hpoint& p, const hpoint& q);
// The unique orientation-preserving isometry taking segment (p1,q1) to (p2,q2)
// (equal lengths assumed; only the frame at the first endpoint is matched).
mat3 iso_from_segments(const hpoint& p1, const hpoint& q1, const hpoint& p2, const hpoint& q2);

}  // namespace htri

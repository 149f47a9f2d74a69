#include "htri/hyperbolic.hpp"

#include <algorithm>

namespace htri {

hpoint exp_map(const htangent& t) {
    double n = snorm(t.vec);
    if (n < 1e-300) return renormalize(t.base);
    double c = std::cosh(n), s = std::sinh(n) / n;
    return renormalize(c * t.base + s * t.vec);
}

htangent log_map(const hpoint& p, const hpoint& q) {
    double d = dist(p, q);
    if (d == 0.0) return {p, {0.0, 0.0, 0.0}};
    // u = (q - p) - 2 sinh^2(d/2) p is tangent at p with |u| = sinh d
    double sh = std::sinh(0.5 * d);
    vec3 u = (q - p) - (2.0 * sh * sh) * p;
    return {p, (d / std::sinh(d)) * u};
}

double angle(const hpoint& at, const hpoint& to1, const hpoint& to2) {
    if (dist(at, to1) == 0.0 || dist(at, to2) == 0.0)
        throw std::domain_error("angle: degenerate corner (coincident endpoint)");
    return angle_or_zero(at, to1, to2);
}

double angle_or_zero(const hpoint& at, const hpoint& to1, const hpoint& to2) {
    vec3 u = log_map(at, to1).vec;
    vec3 w = log_map(at, to2).vec;
    double nu = snorm(u), nw = snorm(w);
    if (nu == 0.0 || nw == 0.0) return 0.0;
    double c = mdot(u, w) / (nu * nw);
    c = std::clamp(c, -1.0, 1.0);
    return std::acos(c);
}

hpoint geodesic_eval(const hpoint& p, const hpoint& q, double t) {
    htangent v = log_map(p, q);
    return exp_map(htangent{p, t * v.vec});
}

double triangle_area(const hpoint& a, const hpoint& b, const hpoint& c) {
    double s = angle_or_zero(a, b, c) + angle_or_zero(b, c, a) + angle_or_zero(c, a, b);
    double pi = std::acos(-1.0);
    return std::max(0.0, pi - s);
}

disk_point to_poincare(const hpoint& p) {
    return {p.x1 / (1.0 + p.x0), p.x2 / (1.0 + p.x0)};
}

hpoint from_poincare(const disk_point& z) {
    double r2 = z.u * z.u + z.v * z.v;
    if (r2 >= 1.0) throw std::domain_error("from_poincare: point outside the open unit disk");
    double s = 1.0 / (1.0 - r2);
    return renormalize({(1.0 + r2) * s, 2.0 * z.u * s, 2.0 * z.v * s});
}

mat3 mat3::identity() {
    mat3 r;
    r.m[0][0] = r.m[1][1] = r.m[2][2] = 1.0;
    return r;
}

mat3 operator*(const mat3& a, const mat3& b) {
    mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += a.m[i][k] * b.m[k][j];
            r.m[i][j] = s;
        }
    return r;
}

vec3 operator*(const mat3& a, const vec3& v) {
    return {a.m[0][0] * v.x0 + a.m[0][1] * v.x1 + a.m[0][2] * v.x2,
            a.m[1][0] * v.x0 + a.m[1][1] * v.x1 + a.m[1][2] * v.x2,
            a.m[2][0] * v.x0 + a.m[2][1] * v.x1 + a.m[2][2] * v.x2};
}

mat3 operator-(const mat3& a, const mat3& b) {
    mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[i][j] - b.m[i][j];
    return r;
}

mat3 rotation(double alpha) {
    mat3 r = mat3::identity();
    double c = std::cos(alpha), s = std::sin(alpha);
    r.m[1][1] = c; r.m[1][2] = -s;
    r.m[2][1] = s; r.m[2][2] = c;
    return r;
}

mat3 translation_x(double s) {
    mat3 r = mat3::identity();
    double ch = std::cosh(s), sh = std::sinh(s);
    r.m[0][0] = ch; r.m[0][1] = sh;
    r.m[1][0] = sh; r.m[1][1] = ch;
    return r;
}

mat3 inverse_isometry(const mat3& a) {
    // (J M^T J)M = I whenever M^T J M = J
    mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double sign = ((i == 0) != (j == 0)) ? -1.0 : 1.0;
            r.m[i][j] = sign * a.m[j][i];
        }
    return r;
}

double frobenius(const mat3& a) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += a.m[i][j] * a.m[i][j];
    return std::sqrt(s);
}

double isometry_defect(const mat3& a) {
    // M^T J M - J, J = diag(-1,1,1)
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double e = -a.m[0][i] * a.m[0][j] + a.m[1][i] * a.m[1][j] + a.m[2][i] * a.m[2][j];
            if (i == j) e -= (i == 0 ? -1.0 : 1.0);
            s += e * e;
        }
    return std::sqrt(s);
}

double det3(const vec3& a, const vec3& b, const vec3& c) {
    return a.x0 * (b.x1 * c.x2 - b.x2 * c.x1)
         - b.x0 * (a.x1 * c.x2 - a.x2 * c.x1)
         + c.x0 * (a.x1 * b.x2 - a.x2 * b.x1);
}

vec3 mink_cross(const vec3& a, const vec3& b) {
    vec3 e = {a.x1 * b.x2 - a.x2 * b.x1,
              a.x2 * b.x0 - a.x0 * b.x2,
              a.x0 * b.x1 - a.x1 * b.x0};
    return {-e.x0, e.x1, e.x2};
}

oriented_geodesic geodesic_through(const hpoint& p, const hpoint& q, const hpoint& inside) {
    vec3 u = mink_cross(p, q);
    double n = snorm(u);
    if (n == 0.0) throw std::domain_error("geodesic_through: coincident points");
    u = (1.0 / n) * u;
    if (mdot(inside, u) > 0.0) u = -u;
    return {u};
}

mat3 frame_at(const hpoint& p, const hpoint& q) {
    vec3 v = log_map(p, q).vec;
    double n = snorm(v);
    if (n == 0.0) throw std::domain_error("frame_at: coincident points");
    vec3 e1 = (1.0 / n) * v;
    vec3 e2 = mink_cross(p, e1);
    e2 = (1.0 / snorm(e2)) * e2;
    mat3 f;
    f.m[0][0] = p.x0; f.m[1][0] = p.x1; f.m[2][0] = p.x2;
    f.m[0][1] = e1.x0; f.m[1][1] = e1.x1; f.m[2][1] = e1.x2;
    f.m[0][2] = e2.x0; f.m[1][2] = e2.x1; f.m[2][2] = e2.x2;
    return f;
}

mat3 iso_from_segments(const hpoint& p1, const hpoint& q1, const hpoint& p2, const hpoint& q2) {
    return frame_at(p2, q2) * inverse_isometry(frame_at(p1, q1));
}

}  // namespace htri

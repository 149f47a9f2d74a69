#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "htri/hyperbolic.hpp"
#include "htri/rng.hpp"

using namespace htri;

namespace {
const double kPi = std::acos(-1.0);

mat3 random_isometry(rng& r) {
    return rotation(r.uniform(0, 2 * kPi)) * translation_x(r.uniform(-2, 2)) *
           rotation(r.uniform(0, 2 * kPi));
}

double vec_diff(const vec3& a, const vec3& b) {
    vec3 d = a - b;
    return std::sqrt(std::abs(mdot(d, d)));
}
}  // namespace

TEST_CASE("points stay on the hyperboloid") {
    rng r(1);
    for (int i = 0; i < 100; i++) {
        hpoint p = r.point_in_ball(3.0);
        CHECK(std::abs(mdot(p, p) + 1.0) < 1e-12);
        CHECK(p.x0 > 0);
        hpoint q = renormalize(vec3{p.x0 + 1e-5, p.x1, p.x2});
        CHECK(std::abs(mdot(q, q) + 1.0) < 1e-12);
    }
}

TEST_CASE("exp/log round trip") {
    rng r(2);
    double worst = 0;
    for (int i = 0; i < 1000; i++) {
        hpoint p = r.point_in_ball(2.0);
        vec3 t = r.tangent_at(p, 1.0);
        double n = snorm(t);
        if (n == 0) continue;
        vec3 v = (r.uniform(0, 5.0) / n) * t;
        hpoint q = exp_map(p, v);
        CHECK(std::abs(mdot(q, q) + 1.0) < 1e-10);
        htangent back = log_map(p, q);
        worst = std::max(worst, vec_diff(back.vec, v));
        CHECK(dist(exp_map(back), q) < 1e-10);
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("log of equal points is zero, dist is exact near zero") {
    hpoint p = origin();
    CHECK(log_map(p, p).vec.x0 == 0.0);
    CHECK(dist(p, p) == 0.0);
    // the asinh chord form keeps full relative precision at tiny separations
    rng r(3);
    hpoint q = r.point_in_ball(1.0);
    vec3 t = r.tangent_at(q, 1.0);
    vec3 u = (1.0 / snorm(t)) * t;
    for (double eps : {1e-9, 1e-12, 1e-14}) {
        hpoint qp = exp_map(q, eps * u);
        double d = dist(q, qp);
        CHECK(d > 0.0);
        // the perturbed point itself carries ~1 ulp of O(1)-coordinate rounding,
        // so the comparison needs an absolute floor next to the relative term
        CHECK(std::abs(d - eps) < 1e-15 + 1e-6 * eps);
        // the arccosh of -<p,q> collapses into sqrt-of-ulp noise at this scale
        double naive = std::acosh(std::max(1.0, -mdot(q, qp)));
        if (eps <= 1e-12) CHECK(naive < 1e-7);
    }
}

TEST_CASE("distance is a metric on samples") {
    rng r(4);
    for (int i = 0; i < 200; i++) {
        hpoint a = r.point_in_ball(2.5), b = r.point_in_ball(2.5), c = r.point_in_ball(2.5);
        CHECK(dist(a, b) == doctest::Approx(dist(b, a)).epsilon(1e-12));
        CHECK(dist(a, c) <= dist(a, b) + dist(b, c) + 1e-12);
    }
}

TEST_CASE("hyperbolic law of cosines") {
    rng r(5);
    double worst = 0;
    for (int i = 0; i < 200; i++) {
        hpoint A = r.point_in_ball(1.5), B = r.point_in_ball(1.5), C = r.point_in_ball(1.5);
        if (dist(A, C) < 1e-3 || dist(B, C) < 1e-3 || dist(A, B) < 1e-3) continue;
        double a = dist(C, B), b = dist(C, A), c = dist(A, B);
        double gamma = angle(C, A, B);
        double lhs = std::cosh(c);
        double rhs = std::cosh(a) * std::cosh(b) - std::sinh(a) * std::sinh(b) * std::cos(gamma);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("Gauss-Bonnet: triangle area is additive under splitting") {
    rng r(6);
    double worst = 0;
    for (int i = 0; i < 200; i++) {
        hpoint A = r.point_in_ball(1.5), B = r.point_in_ball(1.5), C = r.point_in_ball(1.5);
        if (triangle_area(A, B, C) < 1e-4) continue;
        hpoint D = geodesic_eval(B, C, r.uniform(0.2, 0.8));
        double whole = triangle_area(A, B, C);
        double parts = triangle_area(A, B, D) + triangle_area(A, D, C);
        worst = std::max(worst, std::abs(whole - parts));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("triangle angle sum stays below pi") {
    rng r(7);
    for (int i = 0; i < 100; i++) {
        hpoint A = r.point_in_ball(2), B = r.point_in_ball(2), C = r.point_in_ball(2);
        if (dist(A, B) < 1e-3 || dist(B, C) < 1e-3 || dist(C, A) < 1e-3) continue;
        double s = angle(A, B, C) + angle(B, C, A) + angle(C, A, B);
        CHECK(s < kPi + 1e-12);
    }
}

TEST_CASE("isometries preserve distance and angle") {
    rng r(8);
    double worst_d = 0, worst_a = 0;
    for (int i = 0; i < 200; i++) {
        mat3 g = random_isometry(r);
        hpoint a = r.point_in_ball(2), b = r.point_in_ball(2), c = r.point_in_ball(2);
        if (dist(a, b) < 1e-3 || dist(a, c) < 1e-3) continue;
        worst_d = std::max(worst_d, std::abs(dist(renormalize(g * a), renormalize(g * b)) - dist(a, b)));
        worst_a = std::max(worst_a,
                           std::abs(angle(renormalize(g * a), renormalize(g * b), renormalize(g * c)) -
                                    angle(a, b, c)));
    }
    CHECK(worst_d < 1e-10);
    CHECK(worst_a < 1e-10);
}

TEST_CASE("geodesic evaluation is constant speed") {
    rng r(9);
    hpoint p = r.point_in_ball(2), q = r.point_in_ball(2);
    CHECK(dist(geodesic_eval(p, q, 0.0), p) < 1e-13);
    CHECK(dist(geodesic_eval(p, q, 1.0), q) < 1e-13);
    double full = dist(p, q);
    for (double s : {0.1, 0.35, 0.5}) {
        for (double t : {0.6, 0.8, 1.0}) {
            CHECK(std::abs(dist(geodesic_eval(p, q, s), geodesic_eval(p, q, t)) - (t - s) * full) < 1e-10);
        }
    }
}

TEST_CASE("angle rejects a degenerate corner, angle_or_zero reports 0") {
    hpoint p = origin();
    hpoint q = exp_map(p, vec3{0, 1, 0});
    CHECK_THROWS_AS(angle(p, p, q), std::domain_error);
    CHECK(angle_or_zero(p, p, q) == 0.0);
}

TEST_CASE("Poincare chart round trip") {
    rng r(10);
    for (int i = 0; i < 100; i++) {
        hpoint p = r.point_in_ball(3.0);
        disk_point z = to_poincare(p);
        CHECK(z.u * z.u + z.v * z.v < 1.0);
        CHECK(dist(from_poincare(z), p) < 1e-12);
    }
    CHECK_THROWS_AS(from_poincare(disk_point{1.0, 0.2}), std::domain_error);
}

TEST_CASE("isometry algebra") {
    CHECK(frobenius(rotation(0.7) * rotation(-0.7) - mat3::identity()) < 1e-14);
    CHECK(frobenius(rotation(0.3) * rotation(0.4) - rotation(0.7)) < 1e-14);
    rng r(11);
    for (int i = 0; i < 50; i++) {
        mat3 g = random_isometry(r);
        CHECK(isometry_defect(g) < 1e-12);
        CHECK(frobenius(g * inverse_isometry(g) - mat3::identity()) < 1e-12);
    }
}

TEST_CASE("mink_cross is Minkowski-orthogonal to both factors") {
    rng r(12);
    for (int i = 0; i < 50; i++) {
        vec3 a = {r.normal(), r.normal(), r.normal()};
        vec3 b = {r.normal(), r.normal(), r.normal()};
        vec3 c = mink_cross(a, b);
        CHECK(std::abs(mdot(c, a)) < 1e-12);
        CHECK(std::abs(mdot(c, b)) < 1e-12);
    }
}

TEST_CASE("oriented geodesics separate the plane as promised") {
    rng r(13);
    for (int i = 0; i < 50; i++) {
        hpoint p = r.point_in_ball(2), q = r.point_in_ball(2), in = r.point_in_ball(2);
        if (dist(p, q) < 1e-2) continue;
        oriented_geodesic g = geodesic_through(p, q, in);
        CHECK(std::abs(mdot(g.normal, g.normal) - 1.0) < 1e-12);
        CHECK(std::abs(mdot(p, g.normal)) < 1e-12);
        CHECK(std::abs(mdot(q, g.normal)) < 1e-12);
        if (std::abs(mdot(in, g.normal)) > 1e-9) CHECK(mdot(in, g.normal) < 0);
    }
}

TEST_CASE("segment-matching isometry carries one segment onto the other") {
    rng r(14);
    for (int i = 0; i < 50; i++) {
        hpoint p1 = r.point_in_ball(2), q1 = r.point_in_ball(2);
        if (dist(p1, q1) < 1e-2) continue;
        hpoint p2 = r.point_in_ball(2);
        vec3 t = r.tangent_at(p2, 1.0);
        hpoint q2 = exp_map(p2, (dist(p1, q1) / snorm(t)) * t);
        mat3 g = iso_from_segments(p1, q1, p2, q2);
        CHECK(isometry_defect(g) < 1e-11);
        CHECK(dist(renormalize(g * p1), p2) < 1e-11);
        CHECK(dist(renormalize(g * q1), q2) < 1e-11);
    }
}

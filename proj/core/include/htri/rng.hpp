#pragma once
// Seeded randomness for tests and sweeps. mt19937_64 is fully specified by the
// standard; the uniform/normal conversions are written out so that a given seed
// yields the same stream regardless of standard library.

#include <cstdint>
#include <random>

#include "htri/hyperbolic.hpp"

namespace htri {

class rng {
  public:
    explicit rng(std::uint64_t seed) : eng_(seed) {}

    // uniform in [0,1) with 53 random bits
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Box-Muller, one value per call (spare cached)
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do { u1 = uniform(); } while (u1 == 0.0);
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::acos(-1.0) * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // Gaussian tangent vector at p (projected onto the tangent plane).
    vec3 tangent_at(const hpoint& p, double scale) {
        vec3 g = {normal(), normal(), normal()};
        vec3 t = g + mdot(p, g) * p;  // <p,t> = 0
        return scale * t;
    }

    // random point within hyperbolic distance <= rad of the origin
    hpoint point_in_ball(double rad) {
        double a = uniform(0.0, 2.0 * std::acos(-1.0));
        double r = rad * std::sqrt(uniform());
        vec3 v = {0.0, r * std::cos(a), r * std::sin(a)};
        return exp_map(origin(), v);
    }

  private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace htri

#pragma once
// The closed genus-2 surface as a regular octagon with side pairings
// a b a^-1 b^-1 c d c^-1 d^-1, and its deck group in four generators.

#include <array>
#include <string>
#include <vector>

#include "htri/hyperbolic.hpp"

namespace htri {

// letters 1..4 = a,b,c,d; negative = inverse; freely reduced on construction
class group_word {
  public:
    group_word() = default;
    explicit group_word(std::vector<int> letters);
    static group_word parse(const std::string& s);  // "aBcD" (capital = inverse)

    const std::vector<int>& letters() const { return letters_; }
    bool empty() const { return letters_.empty(); }
    std::size_t size() const { return letters_.size(); }
    std::string str() const;

    group_word inverse() const;
    friend group_word operator*(const group_word& a, const group_word& b);
    friend bool operator==(const group_word& a, const group_word& b) = default;

  private:
    std::vector<int> letters_;
};

struct fuchsian_group {
    std::array<mat3, 4> gen;      // a, b, c, d
    std::array<mat3, 4> gen_inv;  // exact Minkowski inverses
    group_word relation_word;     // [a,b][c,d]

    const mat3& generator(int letter) const;  // letter in {+-1..+-4}
    mat3 eval(const group_word& w) const;
    double relation_residual() const;
};

struct fundamental_domain {
    std::array<hpoint, 8> vertex;             // V_k at angle k pi/4, circumradius R
    std::array<oriented_geodesic, 8> side;    // side k through V_k, V_{k+1}; interior has <x,u> <= 0
    std::array<int, 8> side_pairing;          // letter moving the neighbor across side k into the domain
    double circumradius = 0.0;

    hpoint side_point(int k, double t) const;  // constant-speed along side k
    bool contains(const hpoint& p, double eps = 1e-12) const;
};

struct genus2_surface {
    fuchsian_group group;
    fundamental_domain domain;
};

// Deterministic construction; all class invariants checked by tests:
// relation residual < 1e-9, corner angles pi/4, cosh R = cot^2(pi/8).
genus2_surface build_genus2();

// Lift of the (single) glued octagon corner: vertex k = eval(corner_word(k)) . vertex 0.
group_word corner_word(int k);

struct domain_reduction {
    hpoint point;      // inside the closed domain
    group_word word;   // eval(word) . point = input
};

// Greedy side-crossing walk; throws std::runtime_error after 1000 steps.
domain_reduction reduce_to_domain(const fuchsian_group& g, const fundamental_domain& d, const hpoint& p);

}  // namespace htri

#include "htri/surface.hpp"

#include <cmath>
#include <stdexcept>

namespace htri {

namespace {
constexpr double kPi = 3.14159265358979323846;

int letter_index(char c) {
    switch (c) {
        case 'a': return 1;
        case 'b': return 2;
        case 'c': return 3;
        case 'd': return 4;
        case 'A': return -1;
        case 'B': return -2;
        case 'C': return -3;
        case 'D': return -4;
        default: throw std::invalid_argument(std::string("group_word: bad letter '") + c + "'");
    }
}

char letter_char(int l) {
    static const char low[] = {'a', 'b', 'c', 'd'};
    static const char up[] = {'A', 'B', 'C', 'D'};
    return l > 0 ? low[l - 1] : up[-l - 1];
}
}  // namespace

group_word::group_word(std::vector<int> letters) {
    for (int l : letters) {
        if (l == 0 || l > 4 || l < -4) throw std::invalid_argument("group_word: letter out of range");
        if (!letters_.empty() && letters_.back() == -l)
            letters_.pop_back();  // free reduction
        else
            letters_.push_back(l);
    }
}

group_word group_word::parse(const std::string& s) {
    std::vector<int> ls;
    ls.reserve(s.size());
    for (char c : s) ls.push_back(letter_index(c));
    return group_word(std::move(ls));
}

std::string group_word::str() const {
    std::string s;
    s.reserve(letters_.size());
    for (int l : letters_) s.push_back(letter_char(l));
    return s;
}

group_word group_word::inverse() const {
    std::vector<int> ls(letters_.rbegin(), letters_.rend());
    for (int& l : ls) l = -l;
    group_word w;
    w.letters_ = std::move(ls);  // reversal of a reduced word is reduced
    return w;
}

group_word operator*(const group_word& a, const group_word& b) {
    std::vector<int> ls = a.letters_;
    ls.insert(ls.end(), b.letters_.begin(), b.letters_.end());
    return group_word(std::move(ls));
}

const mat3& fuchsian_group::generator(int letter) const {
    if (letter >= 1 && letter <= 4) return gen[letter - 1];
    if (letter <= -1 && letter >= -4) return gen_inv[-letter - 1];
    throw std::invalid_argument("fuchsian_group: letter out of range");
}

mat3 fuchsian_group::eval(const group_word& w) const {
    mat3 m = mat3::identity();
    for (int l : w.letters()) m = m * generator(l);
    return m;
}

double fuchsian_group::relation_residual() const {
    return frobenius(eval(relation_word) - mat3::identity());
}

hpoint fundamental_domain::side_point(int k, double t) const {
    return geodesic_eval(vertex[k], vertex[(k + 1) % 8], t);
}

bool fundamental_domain::contains(const hpoint& p, double eps) const {
    for (const auto& s : side)
        if (mdot(p, s.normal) > eps) return false;
    return true;
}

genus2_surface build_genus2() {
    genus2_surface s;

    // regular octagon with corner angle pi/4: cosh R = cot^2(pi/8)
    double cot8 = 1.0 / std::tan(kPi / 8.0);
    double cosh_r = cot8 * cot8;
    double r = std::acosh(cosh_r);
    double sinh_r = std::sinh(r);
    s.domain.circumradius = r;
    for (int k = 0; k < 8; ++k) {
        double a = k * kPi / 4.0;
        s.domain.vertex[k] = renormalize({cosh_r, sinh_r * std::cos(a), sinh_r * std::sin(a)});
    }
    hpoint o = origin();
    for (int k = 0; k < 8; ++k)
        s.domain.side[k] = geodesic_through(s.domain.vertex[k], s.domain.vertex[(k + 1) % 8], o);

    // Each generator is rotation * axis-translation * rotation with angles in
    // multiples of pi/8; translation length 2 arccosh(cot(pi/8)) carries a side
    // to its opposite. Pairing (sides as V_k V_{k+1}):
    //   a: s2 -> s0, b: s1 -> s3, c: s6 -> s4, d: s5 -> s7  (reversing endpoints)
    double tr = 2.0 * std::acosh(cot8);
    auto kak = [&](int k1, int k2) {
        return rotation(k1 * kPi / 8.0) * translation_x(tr) * rotation(k2 * kPi / 8.0);
    };
    s.group.gen[0] = kak(1, 3);
    s.group.gen[1] = kak(7, 5);
    s.group.gen[2] = kak(9, 11);
    s.group.gen[3] = kak(15, 13);
    for (int i = 0; i < 4; ++i) s.group.gen_inv[i] = inverse_isometry(s.group.gen[i]);
    s.group.relation_word = group_word::parse("abABcdCD");

    // neighbor across side k is (pairing letter) . domain
    static const char* pair = "aBAbcDCd";
    for (int k = 0; k < 8; ++k) s.domain.side_pairing[k] = letter_index(pair[k]);

    return s;
}

group_word corner_word(int k) {
    static const char* words[8] = {"", "aBA", "BA", "A", "cdCD", "D", "CD", "dCD"};
    if (k < 0 || k > 7) throw std::invalid_argument("corner_word: index out of range");
    return group_word::parse(words[k]);
}

domain_reduction reduce_to_domain(const fuchsian_group& g, const fundamental_domain& d, const hpoint& p) {
    hpoint x = p;
    std::vector<int> word;
    for (int iter = 0; iter < 1000; ++iter) {
        int worst = -1;
        double worst_v = 1e-12;
        for (int k = 0; k < 8; ++k) {
            double v = mdot(x, d.side[k].normal);
            if (v > worst_v) {
                worst_v = v;
                worst = k;
            }
        }
        if (worst < 0) return {x, group_word(std::move(word))};
        int letter = d.side_pairing[worst];
        x = renormalize(g.generator(-letter) * x);
        word.push_back(letter);
    }
    throw std::runtime_error("reduce_to_domain: reduction diverged");
}

}  // namespace htri

#include "htri/triangulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>

namespace htri {

namespace {
constexpr double kPi = 3.14159265358979323846;

// side pairing: letter -> (destination side, source side); the source copy of a
// side point is (letter^-1) . canonical, canonical points living on the destination side
struct pair_info {
    int dst, src;
};
const std::map<char, pair_info> kPair = {{'a', {0, 2}}, {'b', {3, 1}}, {'c', {4, 6}}, {'d', {7, 5}}};

struct side_role {
    char letter;
    bool is_dst;
};
side_role side_to_pair(int k) {
    for (const auto& [letter, p] : kPair) {
        if (p.dst == k) return {letter, true};
        if (p.src == k) return {letter, false};
    }
    throw std::logic_error("side_to_pair: bad side");
}

// planar tags of the subdivision, encoded as strings:
//   "center" | "corner:<k>" | "mid:<k>"           (level 1)
//   "e:<t1>|<t2>" (t1 < t2) | "bary:<idx>"        (level 2)
std::string corner_tag(int k) { return "corner:" + std::to_string(k); }
std::string mid_tag(int k) { return "mid:" + std::to_string(k); }
std::string edge_tag(const std::string& a, const std::string& b) {
    return a < b ? "e:" + a + "|" + b : "e:" + b + "|" + a;
}

bool starts_with(const std::string& s, const char* p) { return s.rfind(p, 0) == 0; }
int tag_num(const std::string& s) { return std::stoi(s.substr(s.find(':') + 1)); }

void split_edge_tag(const std::string& t, std::string& a, std::string& b) {
    auto bar = t.find('|');
    a = t.substr(2, bar - 2);
    b = t.substr(bar + 1);
}

// classification keys for the quotient:
//   "corner" | "side:<letter>:<quarter>" | "int:<tag>"
std::string classify(const std::string& tag) {
    if (tag == "center" || starts_with(tag, "bary:")) return "int:" + tag;
    if (starts_with(tag, "corner:")) return "corner";
    if (starts_with(tag, "mid:")) {
        auto sr = side_to_pair(tag_num(tag));
        return std::string("side:") + sr.letter + ":2";
    }
    if (starts_with(tag, "e:")) {
        std::string a, b;
        split_edge_tag(tag, a, b);
        bool ca = starts_with(a, "corner:"), cb = starts_with(b, "corner:");
        bool ma = starts_with(a, "mid:"), mb = starts_with(b, "mid:");
        if ((ca && mb) || (cb && ma)) {
            int kc = tag_num(ca ? a : b);
            int km = tag_num(ma ? a : b);
            int tq;
            if (kc == km)
                tq = 1;  // quarter point (corner km, mid km)
            else if (kc == (km + 1) % 8)
                tq = 3;  // three-quarter point (mid km, corner km+1)
            else
                return "int:" + tag;
            auto sr = side_to_pair(km);
            int q = sr.is_dst ? tq : 4 - tq;
            return std::string("side:") + sr.letter + ":" + std::to_string(q);
        }
        return "int:" + tag;
    }
    throw std::logic_error("classify: bad tag " + tag);
}

// which octagon side a boundary tag lies on
int side_of(const std::string& tag) {
    if (starts_with(tag, "mid:")) return tag_num(tag);
    std::string a, b;
    split_edge_tag(tag, a, b);
    return tag_num(starts_with(a, "mid:") ? a : b);
}

// planar copy: planar position = eval(copy_word) . canonical lift
group_word copy_word(const std::string& tag, const std::string& key) {
    if (starts_with(key, "int:")) return {};
    if (key == "corner") return corner_word(tag_num(tag));
    char letter = key[5];
    bool on_dst = side_of(tag) == kPair.at(letter).dst;
    if (on_dst) return {};
    int l = letter - 'a' + 1;
    return group_word({-l});
}

hpoint centroid(std::initializer_list<hpoint> ps) {
    vec3 s{};
    for (const auto& p : ps) s += p;
    double n = std::sqrt(-mdot(s, s));
    return renormalize((1.0 / n) * s);
}
}  // namespace

int surface_complex::dir_edge(int i, int j) const {
    for (int e : out_edges[i])
        if (eto[e] == j) return e;
    return -1;
}

int surface_complex::euler_characteristic() const {
    return n_vertices - static_cast<int>(edges.size()) + static_cast<int>(faces.size());
}

bool surface_complex::same_combinatorics(const surface_complex& o) const {
    return n_vertices == o.n_vertices && faces == o.faces && edges == o.edges && eword == o.eword;
}

namespace {
// shared finishing pass: given vertices/faces/deck words, build edge arrays,
// cached matrices (reverse = exact inverse), per-face directed ids, links
void finish_complex(surface_complex& cx, const fuchsian_group& group,
                    const std::map<std::pair<int, int>, group_word>& deck) {
    std::map<std::pair<int, int>, int> eid;
    for (const auto& entry : deck) {
        auto [i, j] = entry.first;
        if (i < j) cx.edges.push_back({i, j});
    }
    std::sort(cx.edges.begin(), cx.edges.end());
    int ne = static_cast<int>(cx.edges.size());
    cx.efrom.resize(2 * ne);
    cx.eto.resize(2 * ne);
    cx.eword.resize(2 * ne);
    cx.emat.resize(2 * ne);
    for (int k = 0; k < ne; ++k) {
        auto [i, j] = cx.edges[k];
        cx.efrom[2 * k] = i; cx.eto[2 * k] = j;
        cx.efrom[2 * k + 1] = j; cx.eto[2 * k + 1] = i;
        cx.eword[2 * k] = deck.at({i, j});
        cx.eword[2 * k + 1] = deck.at({j, i});
        cx.emat[2 * k] = group.eval(cx.eword[2 * k]);
        cx.emat[2 * k + 1] = inverse_isometry(cx.emat[2 * k]);
        // cached backward matrix must match its own word (loose check; the
        // cache, not the word product, is the numerical source of truth)
        if (frobenius(cx.emat[2 * k + 1] - group.eval(cx.eword[2 * k + 1])) > 1e-9)
            throw std::logic_error("deck words are not mutually inverse");
        eid[{i, j}] = 2 * k;
        eid[{j, i}] = 2 * k + 1;
    }
    cx.out_edges.assign(cx.n_vertices, {});
    for (int e = 0; e < 2 * ne; ++e) cx.out_edges[cx.efrom[e]].push_back(e);

    cx.face_dir.reserve(cx.faces.size());
    for (const auto& f : cx.faces) {
        auto [i, j, k] = std::tuple{f[0], f[1], f[2]};
        cx.face_dir.push_back({eid.at({i, j}), eid.at({j, k}), eid.at({k, i}),
                               eid.at({i, k}), eid.at({j, i}), eid.at({k, j})});
    }

    // cyclic link per vertex from face rotations (closed surface: walk closes)
    cx.link.assign(cx.n_vertices, {});
    std::vector<std::map<int, int>> next(cx.n_vertices);
    for (const auto& f : cx.faces)
        for (int r = 0; r < 3; ++r) next[f[r]][f[(r + 1) % 3]] = f[(r + 2) % 3];
    for (int v = 0; v < cx.n_vertices; ++v) {
        if (next[v].empty()) throw std::logic_error("isolated vertex");
        int start = next[v].begin()->first;
        int cur = start;
        do {
            cx.link[v].push_back(cur);
            cur = next[v].at(cur);
        } while (cur != start);
        if (cx.link[v].size() != next[v].size()) throw std::logic_error("vertex star is not a disk");
    }
}
}  // namespace

std::shared_ptr<const surface_complex> rebuild_complex(
    int n_vertices, std::vector<std::array<int, 3>> faces,
    const std::map<std::pair<int, int>, group_word>& deck, const fuchsian_group& group) {
    auto cx = std::make_shared<surface_complex>();
    cx->n_vertices = n_vertices;
    cx->faces = std::move(faces);
    finish_complex(*cx, group, deck);
    return cx;
}

geodesic_mapping build_base_triangulation(const fundamental_domain& domain, const fuchsian_group& group) {
    // --- planar model: octagon subdivided twice ---------------------------
    std::map<std::string, hpoint> pts;
    pts["center"] = origin();
    for (int k = 0; k < 8; ++k) {
        pts[corner_tag(k)] = domain.vertex[k];
        pts[mid_tag(k)] = domain.side_point(k, 0.5);
    }
    // first subdivision: 16 flag triangles (center, corner, mid), all ccw
    std::vector<std::array<std::string, 3>> tris1;
    for (int k = 0; k < 8; ++k) {
        tris1.push_back({"center", corner_tag(k), mid_tag(k)});
        tris1.push_back({"center", mid_tag(k), corner_tag((k + 1) % 8)});
    }
    // second subdivision: 6 triangles per triangle (edge midpoints + barycenter)
    std::vector<std::array<std::string, 3>> tris2;
    for (std::size_t idx = 0; idx < tris1.size(); ++idx) {
        const auto& [p, q, r] = tris1[idx];
        auto mid_of = [&](const std::string& s, const std::string& t) {
            std::string tag = edge_tag(s, t);
            if (!pts.count(tag)) pts[tag] = geodesic_eval(pts.at(s), pts.at(t), 0.5);
            return tag;
        };
        std::string mpq = mid_of(p, q), mqr = mid_of(q, r), mrp = mid_of(r, p);
        std::string g = "bary:" + std::to_string(idx);
        pts[g] = centroid({pts.at(p), pts.at(q), pts.at(r)});
        tris2.push_back({p, mpq, g});
        tris2.push_back({mpq, q, g});
        tris2.push_back({q, mqr, g});
        tris2.push_back({mqr, r, g});
        tris2.push_back({r, mrp, g});
        tris2.push_back({mrp, p, g});
    }

    // --- fold to the quotient ---------------------------------------------
    auto cx = std::make_shared<surface_complex>();
    std::map<std::string, int> qid;
    std::vector<hpoint> qlift;
    auto quotient_id = [&](const std::string& tag) {
        std::string key = classify(tag);
        auto it = qid.find(key);
        if (it != qid.end()) return it->second;
        int id = static_cast<int>(qlift.size());
        qid[key] = id;
        cx->vertex_key.push_back(key);
        if (key == "corner") {
            qlift.push_back(domain.vertex[0]);
        } else if (starts_with(key, "side:")) {
            char letter = key[5];
            int q = key[7] - '0';
            qlift.push_back(domain.side_point(kPair.at(letter).dst, q / 4.0));
        } else {
            qlift.push_back(pts.at(tag));
        }
        return id;
    };

    std::map<std::pair<int, int>, group_word> deck;
    auto set_deck = [&](int i, int j, const group_word& w) {
        auto it = deck.find({i, j});
        if (it == deck.end()) {
            deck[{i, j}] = w;
            return;
        }
        // identifications reached along different faces may differ by the
        // relator as words; they must agree as matrices
        if (frobenius(group.eval(it->second) - group.eval(w)) > 1e-9)
            throw std::logic_error("inconsistent deck identification");
    };

    for (const auto& tri : tris2) {
        std::array<int, 3> ids;
        std::array<group_word, 3> ws;
        for (int r = 0; r < 3; ++r) {
            ids[r] = quotient_id(tri[r]);
            ws[r] = copy_word(tri[r], classify(tri[r]));
        }
        cx->faces.push_back(ids);
        for (int r = 0; r < 3; ++r) {
            int s = (r + 1) % 3;
            // planar_x = eval(w_x) . canonical_x, so the deck word i->j in
            // canonical charts is w_i^-1 w_j
            group_word w = ws[r].inverse() * ws[s];
            set_deck(ids[r], ids[s], w);
            set_deck(ids[s], ids[r], w.inverse());
        }
    }
    cx->n_vertices = static_cast<int>(qlift.size());
    finish_complex(*cx, group, deck);

    return {cx, std::move(qlift)};
}

htangent edge_vector_dir(const geodesic_mapping& m, int e) {
    return log_map(m.lift[m.cx->efrom[e]], m.cx->emat[e] * m.lift[m.cx->eto[e]]);
}

htangent edge_vector(const geodesic_mapping& m, int i, int j) {
    int e = m.cx->dir_edge(i, j);
    if (e < 0) throw std::invalid_argument("edge_vector: not a directed edge");
    return edge_vector_dir(m, e);
}

angle_report_t angle_report(const geodesic_mapping& m) {
    const auto& cx = *m.cx;
    angle_report_t rep;
    rep.corner.reserve(cx.faces.size());
    rep.theta_min = std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < cx.faces.size(); ++f) {
        auto [i, j, k] = std::tuple{cx.faces[f][0], cx.faces[f][1], cx.faces[f][2]};
        const auto& d = cx.face_dir[f];
        hpoint qj_i = cx.emat[d[0]] * m.lift[j];  // j in i's chart
        hpoint qk_i = cx.emat[d[3]] * m.lift[k];
        hpoint qk_j = cx.emat[d[1]] * m.lift[k];
        hpoint qi_j = cx.emat[d[4]] * m.lift[i];
        hpoint qi_k = cx.emat[d[2]] * m.lift[i];
        hpoint qj_k = cx.emat[d[5]] * m.lift[j];
        std::array<double, 3> a = {angle_or_zero(m.lift[i], qj_i, qk_i),
                                   angle_or_zero(m.lift[j], qk_j, qi_j),
                                   angle_or_zero(m.lift[k], qi_k, qj_k)};
        for (double x : a) {
            rep.theta_min = std::min(rep.theta_min, x);
            if (x == 0.0) rep.degenerate = true;
        }
        rep.corner.push_back(a);
    }
    return rep;
}

double theta_min(const geodesic_mapping& m) { return angle_report(m).theta_min; }

bool in_K_eps(const geodesic_mapping& m, double eps) { return theta_min(m) >= eps; }

bool is_embedded(const geodesic_mapping& m) {
    const auto& cx = *m.cx;
    auto rep = angle_report(m);
    if (rep.degenerate || rep.theta_min <= 0.0) return false;
    std::vector<double> sum(cx.n_vertices, 0.0);
    for (std::size_t f = 0; f < cx.faces.size(); ++f)
        for (int r = 0; r < 3; ++r) {
            if (rep.corner[f][r] >= kPi) return false;
            sum[cx.faces[f][r]] += rep.corner[f][r];
        }
    for (double s : sum)
        if (std::abs(s - 2.0 * kPi) > 1e-7) return false;
    for (std::size_t f = 0; f < cx.faces.size(); ++f) {
        auto [i, j, k] = std::tuple{cx.faces[f][0], cx.faces[f][1], cx.faces[f][2]};
        const auto& d = cx.face_dir[f];
        if (det3(m.lift[i], cx.emat[d[0]] * m.lift[j], cx.emat[d[3]] * m.lift[k]) <= 0.0) return false;
    }
    return true;
}

double mapping_distance(const geodesic_mapping& a, const geodesic_mapping& b) {
    if (a.cx != b.cx && !a.cx->same_combinatorics(*b.cx))
        throw std::invalid_argument("mapping_distance: different homotopy class");
    const auto& cx = *a.cx;
    double dmax = 0.0;
    for (int v = 0; v < cx.n_vertices; ++v) dmax = std::max(dmax, dist(a.lift[v], b.lift[v]));
    constexpr int kSamples = 16;
    for (std::size_t k = 0; k < cx.edges.size(); ++k) {
        int e = static_cast<int>(2 * k);
        int i = cx.efrom[e], j = cx.eto[e];
        hpoint qa = cx.emat[e] * a.lift[j];
        hpoint qb = cx.emat[e] * b.lift[j];
        for (int s = 1; s <= kSamples; ++s) {
            double t = static_cast<double>(s) / (kSamples + 1);
            dmax = std::max(dmax, dist(geodesic_eval(a.lift[i], qa, t), geodesic_eval(b.lift[i], qb, t)));
        }
    }
    return dmax;
}

geodesic_mapping perturb_vertex(const geodesic_mapping& m, int v, const htangent& offset) {
    geodesic_mapping out = m;
    out.lift[v] = exp_map(htangent{m.lift[v], offset.vec});
    return out;
}

geodesic_mapping random_embedded_mapping(const geodesic_mapping& base, rng& r, double scale) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        geodesic_mapping m = base;
        for (int v = 0; v < base.cx->n_vertices; ++v)
            m.lift[v] = exp_map(base.lift[v], r.tangent_at(base.lift[v], scale));
        if (is_embedded(m)) return m;
    }
    throw std::runtime_error("random_embedded_mapping: no embedded sample found");
}

}  // namespace htri

#pragma once
// Combinatorial surface complex plus geodesic mappings: one lift per vertex,
// one deck word per directed edge (the homotopy-class certificate), with the
// deck matrices cached so that reversed edges are exact matrix inverses.

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "htri/rng.hpp"
#include "htri/surface.hpp"

namespace htri {

struct surface_complex {
    int n_vertices = 0;
    std::vector<std::array<int, 3>> faces;        // oriented, globally consistent
    std::vector<std::pair<int, int>> edges;       // undirected, i < j, sorted
    // directed edge ids: 2k is edges[k] forward (i->j), 2k+1 backward
    std::vector<int> efrom, eto;
    std::vector<group_word> eword;
    std::vector<mat3> emat;                       // emat[2k+1] = emat[2k]^-1 exactly
    std::vector<std::vector<int>> out_edges;      // ascending directed ids per vertex
    // per face (i,j,k): directed ids [ij, jk, ki, ik, ji, kj]
    std::vector<std::array<int, 6>> face_dir;
    std::vector<std::vector<int>> link;           // cyclic link vertex ring per vertex
    std::vector<std::string> vertex_key;          // construction labels (empty when loaded from file)

    int dir_edge(int i, int j) const;             // -1 when absent
    int reverse(int e) const { return e ^ 1; }
    int degree(int v) const { return static_cast<int>(out_edges[v].size()); }
    int euler_characteristic() const;

    bool same_combinatorics(const surface_complex& o) const;  // faces+edges+deck words
};

struct geodesic_mapping {
    std::shared_ptr<const surface_complex> cx;
    std::vector<hpoint> lift;  // one per vertex
};

// Base triangulation: second barycentric subdivision of the octagon cell
// structure, folded to the quotient. V=46, E=144, F=96, chi=-2; embedded.
geodesic_mapping build_base_triangulation(const fundamental_domain& domain, const fuchsian_group& group);

// Assemble a complex from parts (file loading); deck maps directed pairs to words.
std::shared_ptr<const surface_complex> rebuild_complex(
    int n_vertices, std::vector<std::array<int, 3>> faces,
    const std::map<std::pair<int, int>, group_word>& deck, const fuchsian_group& group);

// v_ij = log(q_i, M_ij q_j); the lifted edge as seen from i's chart.
htangent edge_vector(const geodesic_mapping& m, int i, int j);
htangent edge_vector_dir(const geodesic_mapping& m, int e);

struct angle_report_t {
    std::vector<std::array<double, 3>> corner;  // per face, angles at (i,j,k)
    double theta_min = 0.0;
    bool degenerate = false;                    // some corner reported 0 (boundary-like mapping)
};

angle_report_t angle_report(const geodesic_mapping& m);
double theta_min(const geodesic_mapping& m);
bool in_K_eps(const geodesic_mapping& m, double eps);

// Local star checks: corner angles in (0,pi), per-vertex angle sum 2 pi,
// positively oriented faces. Theory upgrades this to global embedding.
bool is_embedded(const geodesic_mapping& m);

// d_X: max over vertices and 16 interior samples per edge of pointwise distance.
// Throws std::invalid_argument when the complexes or deck labels differ.
double mapping_distance(const geodesic_mapping& a, const geodesic_mapping& b);

// Replace q_v by exp(offset); deck labels untouched (homotopy preserved).
geodesic_mapping perturb_vertex(const geodesic_mapping& m, int v, const htangent& offset);

// Gaussian vertex offsets (given scale), retried until is_embedded; deterministic in rng state.
geodesic_mapping random_embedded_mapping(const geodesic_mapping& base, rng& r, double scale = 0.02);

}  // namespace htri

#pragma once
// Weighted-balance machinery: the normalization iota, the damped Jacobi
// solver for w-balanced mappings, the mean-value-coordinate section, the
// weight-space morph, and the weight-limit sweep.

#include <optional>
#include <vector>

#include "htri/triangulation.hpp"

namespace htri {

// one positive entry per directed edge id of the complex
using weight_vector = std::vector<double>;

weight_vector uniform_weights(const surface_complex& cx);

// iota: divide each row (out-edges of a vertex) by its sum. Idempotent.
// Throws std::invalid_argument on a non-positive entry.
weight_vector normalize_weights(const surface_complex& cx, const weight_vector& w);

// r_i = sum_j w_ij v_ij per vertex (no normalization applied here).
std::vector<vec3> balance_residual(const geodesic_mapping& m, const weight_vector& w);
double max_residual_norm(const geodesic_mapping& m, const weight_vector& w);

struct iteration_record {
    int iteration;
    double residual;
    double tau;
};

struct solve_options {
    double tol = 1e-10;
    int max_iters = 200000;
    std::vector<iteration_record>* log = nullptr;
};

class solve_error : public std::runtime_error {
  public:
    solve_error(const std::string& what, double residual) : std::runtime_error(what), last_residual(residual) {}
    double last_residual;
};

// Damped Jacobi fixed point on iota(w): all lifts step along their residual
// simultaneously, tau halves when the max residual fails to decrease and is
// restored (x1.5, capped at 1) after 5 accepted steps. Deck labels are the
// init's; the result must pass is_embedded (solve_error otherwise).
geodesic_mapping solve_balanced(const weight_vector& w, const geodesic_mapping& init,
                                const solve_options& opt = {});

// w_ij = (tan(alpha_ij/2) + tan(beta_ij/2)) / l_ij over the two faces at ij.
// Throws solve-independent std::domain_error("mapping on boundary") when degenerate.
weight_vector mean_value_weights(const geodesic_mapping& m);

// d_X(solve(mvw(m), m), m); the section property makes this tiny on embedded m.
double roundtrip_check(const geodesic_mapping& m, const solve_options& opt = {});

// Phi((1-t) Psi(a) + t Psi(b)); optional warm start for sweeps.
geodesic_mapping morph(const geodesic_mapping& a, const geodesic_mapping& b, double t,
                       const geodesic_mapping* warm_start = nullptr, const solve_options& opt = {});

struct weight_limit_row {
    double delta;
    double theta_m;
    bool converged;
};

// For delta_k = 2^-k, k = 1..levels: concentrate vertex i's row on edges ij,ik
// of the given face (w_ij + w_ik = 1 - delta_k, rest uniform), solve, record theta_m.
std::vector<weight_limit_row> weight_limit_probe(const geodesic_mapping& base,
                                                 const std::array<int, 3>& face, int levels,
                                                 const solve_options& opt = {});

}  // namespace htri

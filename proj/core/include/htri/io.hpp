#pragma once
// JSON/CSV persistence. Every artifact echoes the run seed; doubles survive a
// save/load round trip exactly. Malformed input surfaces as io_error so the
// CLI can map it to its bad-input exit code.

#include <cstdint>
#include <string>
#include <vector>

#include "htri/balance.hpp"
#include "htri/kernel.hpp"
#include "htri/triangulation.hpp"

namespace htri {

class io_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// mapping.json: {seed, complex: {vertices, edges, faces}, lifts, deck: {"i->j": word}}
void save_mapping(const std::string& path, const geodesic_mapping& m, std::uint64_t seed);
geodesic_mapping load_mapping(const std::string& path, const fuchsian_group& group);

// weights.json: {seed, weights: {"i->j": positive decimal}}
void save_weights(const std::string& path, const surface_complex& cx, const weight_vector& w,
                  std::uint64_t seed);
weight_vector load_weights(const std::string& path, const surface_complex& cx);

// degeneration.json: {seed, vertex, waypoints: [{t, lift, theta_min}]}
void save_degeneration(const std::string& path, const degeneration_path& p, std::uint64_t seed);

// iterations.csv: "iteration,residual,tau" rows after a "# seed=N" comment line
void save_iterations_csv(const std::string& path, const std::vector<iteration_record>& log,
                         std::uint64_t seed);

}  // namespace htri

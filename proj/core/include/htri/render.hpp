#pragma once
// SVG rendering in the Poincare disk chart: the unit circle, the fundamental
// octagon, and one path per mapping edge. Edge segments are pushed into the
// fundamental domain (splitting where the reducing deck word changes) and
// drawn as circular arcs, which is exact for disk geodesics.

#include <string>

#include "htri/surface.hpp"
#include "htri/triangulation.hpp"

namespace htri {

struct render_options {
    bool ghosts = false;   // faint deck-translated copies under each generator
    int samples = 33;      // run detection resolution along each edge
};

std::string render_svg(const geodesic_mapping& m, const genus2_surface& s,
                       const render_options& opt = {});

}  // namespace htri

// initial_conditions.hpp: named initial-state generators.

#ifndef NSCH_INITIAL_CONDITIONS_HPP
#define NSCH_INITIAL_CONDITIONS_HPP

#include <cstdint>
#include <string>

#include "nsch/model.hpp"

namespace nsch {

// kind:
//   "taylor-green-like"  cellular divergence-free vortex, phi = 0,
//                        max |u| = amplitude
//   "random-divfree"     band-limited random (u, phi), rescaled so
//                        ||u||_{H^1/2} + ||phi||_{H^1/2} + ||phi||_{H^3/2}
//                        equals amplitude exactly
//   "single-mode"        u = amplitude*(sin(2 pi x_2/L), 0, 0), phi = 0
//                        (a Stokes eigenmode)
//   "gaussian-blob"      phi = amplitude * periodized Gaussian of the given
//                        width, u = 0 (localized L^p data)
//   "gaussian-vortex"    gaussian-blob phi plus a localized divergence-free
//                        velocity from a Gaussian vector potential, so both
//                        unknowns carry decaying L^p data
State generate_ic(const std::string& kind, const Grid& grid, double amplitude,
                  std::uint64_t seed, const ModelParams& params, double width = 0.0,
                  int band = 0);

// Periodized Gaussian amplitude*exp(-|x - center|^2 / (2 width^2)) summed
// over neighbor images; center is the box midpoint.
Field periodized_gaussian(const Grid& grid, double amplitude, double width);

}  // namespace nsch

#endif

// random_fields.hpp: reproducible band-limited Gaussian random fields.

#ifndef NSCH_RANDOM_FIELDS_HPP
#define NSCH_RANDOM_FIELDS_HPP

#include <cstdint>

#include "nsch/field.hpp"

namespace nsch {

// Mean-zero real field with independent unit-variance complex Gaussian
// coefficients on integer frequencies 0 < |m| <= band_limit, conjugate
// symmetry enforced.  Coefficients are keyed on (seed, m), not on grid
// indices, so refining n reproduces the same field on the common band.
Field random_mean_zero_field(const Grid& grid, std::uint64_t seed, int band_limit);

// Divergence-free counterpart: component-wise random fields, Leray-projected.
VectorField random_divfree_field(const Grid& grid, std::uint64_t seed, int band_limit);

}  // namespace nsch

#endif

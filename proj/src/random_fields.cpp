#include "nsch/random_fields.hpp"

#include <cmath>
#include <numbers>

#include "nsch/errors.hpp"
#include "nsch/spectral.hpp"

namespace nsch {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mode_key(std::uint64_t seed, int m0, int m1, int m2) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(m0)));
    h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(m1)));
    h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(m2)));
    return h;
}

double to_unit_double(std::uint64_t bits) {
    // 53 random bits into (0, 1]; never 0, so the log below is safe
    return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

// Complex Gaussian with E|z|^2 = 1, via Box-Muller on explicit uniforms
// (std::normal_distribution is implementation-defined and would break
// cross-build reproducibility).
Complex complex_gaussian(std::uint64_t key) {
    const double u1 = to_unit_double(splitmix64(key ^ 0x1234abcdULL));
    const double u2 = to_unit_double(splitmix64(key ^ 0xfeed5678ULL));
    const double r = std::sqrt(-std::log(u1));
    const double th = 2.0 * std::numbers::pi * u2;
    return Complex(r * std::cos(th), r * std::sin(th));
}

}  // namespace

Field random_mean_zero_field(const Grid& grid, std::uint64_t seed, int band_limit) {
    if (band_limit < 1 || band_limit > grid.n() / 2 - 1)
        throw DomainError("random field band limit must lie in [1, n/2-1]");
    const long band2 = static_cast<long>(band_limit) * band_limit;
    std::vector<Complex> spec(grid.size(), Complex(0.0, 0.0));
    for (std::size_t flat = 0; flat < grid.size(); ++flat) {
        auto idx = grid.decode(flat);
        const int m0 = grid.freq_of_index(idx[0]);
        const int m1 = grid.freq_of_index(idx[1]);
        const int m2 = grid.dim() == 3 ? grid.freq_of_index(idx[2]) : 0;
        const long mag2 = static_cast<long>(m0) * m0 + static_cast<long>(m1) * m1 +
                          static_cast<long>(m2) * m2;
        if (mag2 == 0 || mag2 > band2) continue;
        // draw once per conjugate pair, on the canonical representative
        const bool canonical =
            (m0 > 0) || (m0 == 0 && m1 > 0) || (m0 == 0 && m1 == 0 && m2 > 0);
        if (!canonical) continue;
        const Complex z = complex_gaussian(mode_key(seed, m0, m1, m2));
        spec[flat] = z;
        spec[grid.conjugate_index(flat)] = std::conj(z);
    }
    return Field::from_spectral(grid, std::move(spec));
}

VectorField random_divfree_field(const Grid& grid, std::uint64_t seed, int band_limit) {
    std::vector<Field> comps;
    comps.reserve(static_cast<std::size_t>(grid.dim()));
    for (int c = 0; c < grid.dim(); ++c)
        comps.push_back(random_mean_zero_field(
            grid, splitmix64(seed ^ (0xc0ffee00ULL + static_cast<std::uint64_t>(c))),
            band_limit));
    return leray_project(VectorField(std::move(comps)));
}

}  // namespace nsch

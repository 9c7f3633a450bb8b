#include "nsch/initial_conditions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "nsch/errors.hpp"
#include "nsch/random_fields.hpp"
#include "nsch/spectral.hpp"

namespace nsch {

namespace {

// Per-axis periodized Gaussian factor; the image sum factorizes over axes.
std::vector<double> axis_gaussian(const Grid& g, double width) {
    const double L = g.box_length();
    const double c = 0.5 * L;
    std::vector<double> out(static_cast<std::size_t>(g.n()));
    for (int i = 0; i < g.n(); ++i) {
        const double x = g.x_of_index(i);
        double sum = 0.0;
        for (int m = -3; m <= 3; ++m) {
            const double d = x - c - m * L;
            sum += std::exp(-d * d / (2.0 * width * width));
        }
        out[static_cast<std::size_t>(i)] = sum;
    }
    return out;
}

VectorField curl_of_potential(const Field& psi) {
    // u = (d psi/dx2, -d psi/dx1, 0...): divergence-free by construction
    const Grid& g = psi.grid();
    std::vector<Field> comps;
    comps.reserve(static_cast<std::size_t>(g.dim()));
    comps.push_back(derivative(psi, 1));
    comps.push_back(scale(derivative(psi, 0), -1.0));
    if (g.dim() == 3) comps.push_back(Field(g));
    return VectorField(std::move(comps));
}

}  // namespace

Field periodized_gaussian(const Grid& grid, double amplitude, double width) {
    if (!(width > 0.0)) throw DomainError("gaussian width must be positive");
    std::vector<std::vector<double>> axes;
    axes.reserve(static_cast<std::size_t>(grid.dim()));
    for (int a = 0; a < grid.dim(); ++a) axes.push_back(axis_gaussian(grid, width));
    std::vector<double> vals(grid.size());
    const int n = grid.n();
    std::size_t flat = 0;
    if (grid.dim() == 2) {
        for (int i0 = 0; i0 < n; ++i0)
            for (int i1 = 0; i1 < n; ++i1, ++flat)
                vals[flat] = amplitude * axes[0][static_cast<std::size_t>(i0)] *
                             axes[1][static_cast<std::size_t>(i1)];
    } else {
        for (int i0 = 0; i0 < n; ++i0)
            for (int i1 = 0; i1 < n; ++i1)
                for (int i2 = 0; i2 < n; ++i2, ++flat)
                    vals[flat] = amplitude * axes[0][static_cast<std::size_t>(i0)] *
                                 axes[1][static_cast<std::size_t>(i1)] *
                                 axes[2][static_cast<std::size_t>(i2)];
    }
    return Field::from_physical(grid, std::move(vals));
}

State generate_ic(const std::string& kind, const Grid& grid, double amplitude,
                  std::uint64_t seed, const ModelParams& params, double width, int band) {
    if (!(amplitude > 0.0)) throw DomainError("ic amplitude must be positive");
    params.validate();

    State state;
    state.params = params;
    state.time = 0.0;
    const double L = grid.box_length();
    const double k0 = 2.0 * std::numbers::pi / L;
    const double w = width > 0.0 ? width : L / 16.0;

    if (kind == "taylor-green-like") {
        const int n = grid.n();
        std::vector<double> u0(grid.size()), u1(grid.size());
        std::size_t flat = 0;
        if (grid.dim() == 2) {
            for (int i0 = 0; i0 < n; ++i0)
                for (int i1 = 0; i1 < n; ++i1, ++flat) {
                    const double x = k0 * grid.x_of_index(i0);
                    const double y = k0 * grid.x_of_index(i1);
                    u0[flat] = std::sin(x) * std::cos(y);
                    u1[flat] = -std::cos(x) * std::sin(y);
                }
        } else {
            for (int i0 = 0; i0 < n; ++i0)
                for (int i1 = 0; i1 < n; ++i1)
                    for (int i2 = 0; i2 < n; ++i2, ++flat) {
                        const double x = k0 * grid.x_of_index(i0);
                        const double y = k0 * grid.x_of_index(i1);
                        const double z = k0 * grid.x_of_index(i2);
                        u0[flat] = std::sin(x) * std::cos(y) * std::cos(z);
                        u1[flat] = -std::cos(x) * std::sin(y) * std::cos(z);
                    }
        }
        std::vector<Field> comps;
        comps.push_back(Field::from_physical(grid, std::move(u0)));
        comps.push_back(Field::from_physical(grid, std::move(u1)));
        if (grid.dim() == 3) comps.push_back(Field(grid));
        VectorField u(std::move(comps));
        const double umax = lp_norm(u, std::numeric_limits<double>::infinity());
        state.u = scale(u, amplitude / umax);
        state.phi = Field(grid);
    } else if (kind == "random-divfree") {
        const int b = band > 0 ? band : std::max(1, grid.n() / 4);
        VectorField u = random_divfree_field(grid, seed, b);
        Field phi = random_mean_zero_field(grid, seed ^ 0x5eedbeefULL, b);
        const double sum = sobolev_norm(u, 0.5) + sobolev_norm(phi, 0.5) +
                           sobolev_norm(phi, 1.5);
        const double c = amplitude / sum;
        state.u = scale(u, c);
        state.phi = scale(phi, c);
    } else if (kind == "single-mode") {
        const int n = grid.n();
        std::vector<double> u0(grid.size());
        std::size_t flat = 0;
        if (grid.dim() == 2) {
            for (int i0 = 0; i0 < n; ++i0)
                for (int i1 = 0; i1 < n; ++i1, ++flat)
                    u0[flat] = amplitude * std::sin(k0 * grid.x_of_index(i1));
        } else {
            for (int i0 = 0; i0 < n; ++i0)
                for (int i1 = 0; i1 < n; ++i1)
                    for (int i2 = 0; i2 < n; ++i2, ++flat)
                        u0[flat] = amplitude * std::sin(k0 * grid.x_of_index(i1));
        }
        std::vector<Field> comps;
        comps.push_back(Field::from_physical(grid, std::move(u0)));
        comps.push_back(Field(grid));
        if (grid.dim() == 3) comps.push_back(Field(grid));
        state.u = VectorField(std::move(comps));
        state.phi = Field(grid);
    } else if (kind == "gaussian-blob") {
        state.phi = periodized_gaussian(grid, amplitude, w);
        state.u = VectorField(grid);
    } else if (kind == "gaussian-vortex") {
        state.phi = periodized_gaussian(grid, amplitude, w);
        VectorField u = curl_of_potential(periodized_gaussian(grid, 1.0, w));
        const double umax = lp_norm(u, std::numeric_limits<double>::infinity());
        state.u = scale(u, amplitude / umax);
    } else {
        throw ConfigError("ic.kind", "unknown initial-condition kind '" + kind + "'");
    }
    return state;
}

}  // namespace nsch

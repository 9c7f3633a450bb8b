#include "nsch/model.hpp"

#include <cmath>

#include "nsch/errors.hpp"

namespace nsch {

void ModelParams::validate() const {
    if (!(kappa >= 0.0)) throw DomainError("kappa must be >= 0");
    if (paper_mode) {
        if (omega0 != 1.0 && omega0 != -1.0)
            throw DomainError("paper mode requires omega0 = +1 or -1");
        if (nu != 1.0 || mobility != 1.0 || capillarity != 1.0 || eps != 1.0 || zeta != 1.0)
            throw DomainError("paper mode pins nu, mobility, capillarity, eps, zeta to 1");
    } else {
        if (!(nu > 0.0) || !(mobility > 0.0) || !(eps > 0.0) || !(zeta > 0.0) ||
            !(capillarity >= 0.0))
            throw DomainError("physical constants must be positive");
    }
}

void validate_state(const State& state) {
    state.params.validate();
    if (!(state.time >= 0.0)) throw DomainError("state time must be >= 0");
    if (!state.u.is_finite() || !state.phi.is_finite())
        throw DomainError("state contains non-finite values");
    if (!(state.u.grid() == state.phi.grid()))
        throw MixedGridError("u and phi live on different grids");
    const double div_norm = sobolev_norm(divergence(state.u), 0.0);
    const double u_norm = sobolev_norm(state.u, 0.0);
    if (div_norm > 1e-8 * (1.0 + u_norm))
        throw DomainError("velocity is not divergence-free: ||div u|| = " +
                          std::to_string(div_norm));
}

double double_well(double s) {
    const double q = s * s - 1.0;
    return 0.25 * q * q;
}

double double_well_derivative(double s) { return s * s * s - s; }

namespace {

// Shared dealiased evaluation of every nonlinear term the tendencies need.
// One workspace per call keeps the padded transforms down to:
//   to_fine:  u (dim), phi, grad phi (dim), lap phi
//   from_fine: u x u (sym), u*phi (dim), lap(phi) grad(phi) (dim), cubic
struct NonlinearTerms {
    VectorField conv_u;    // -div(u x u)
    Field conv_phi;        // -div(u phi)
    VectorField korteweg;  // -lap(phi) grad(phi)
    Field cubic;           // dealiased (phi + omega0)^3
};

NonlinearTerms compute_nonlinear(const State& state, const Dealiaser& dealiaser) {
    const Grid& g = state.u.grid();
    const int dim = g.dim();
    NonlinearTerms out;

    std::vector<std::vector<double>> u_fine(static_cast<std::size_t>(dim));
    for (int c = 0; c < dim; ++c) u_fine[static_cast<std::size_t>(c)] = dealiaser.to_fine(state.u[c]);
    std::vector<double> phi_fine = dealiaser.to_fine(state.phi);

    // -div(u x u)
    {
        std::vector<Field> tij(static_cast<std::size_t>(dim * dim));
        std::vector<double> prod(phi_fine.size());
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j) {
                const auto& a = u_fine[static_cast<std::size_t>(i)];
                const auto& b = u_fine[static_cast<std::size_t>(j)];
                for (std::size_t p = 0; p < prod.size(); ++p) prod[p] = a[p] * b[p];
                Field t = dealiaser.from_fine(prod);
                tij[static_cast<std::size_t>(i * dim + j)] = t;
                if (i != j) tij[static_cast<std::size_t>(j * dim + i)] = std::move(t);
            }
        std::vector<Field> comps;
        comps.reserve(static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i) {
            Field acc = derivative(tij[static_cast<std::size_t>(i * dim)], 0);
            auto& spec = acc.mutable_spectrum();
            for (int j = 1; j < dim; ++j) {
                Field dj = derivative(tij[static_cast<std::size_t>(i * dim + j)], j);
                auto s = dj.spectrum();
                for (std::size_t p = 0; p < spec.size(); ++p) spec[p] += s[p];
            }
            for (auto& c : spec) c = -c;
            comps.push_back(std::move(acc));
        }
        out.conv_u = VectorField(std::move(comps));
    }

    // -div(u phi)
    {
        std::vector<double> prod(phi_fine.size());
        Field acc;
        for (int j = 0; j < dim; ++j) {
            const auto& a = u_fine[static_cast<std::size_t>(j)];
            for (std::size_t p = 0; p < prod.size(); ++p) prod[p] = a[p] * phi_fine[p];
            Field dj = derivative(dealiaser.from_fine(prod), j);
            if (j == 0) {
                acc = std::move(dj);
            } else {
                auto& spec = acc.mutable_spectrum();
                auto s = dj.spectrum();
                for (std::size_t p = 0; p < spec.size(); ++p) spec[p] += s[p];
            }
        }
        auto& spec = acc.mutable_spectrum();
        for (auto& c : spec) c = -c;
        out.conv_phi = std::move(acc);
    }

    // -lap(phi) grad(phi); its box integral vanishes identically (gradient
    // plus stress-divergence structure), so pin the zero mode to 0 instead
    // of keeping quadrature round-off
    {
        std::vector<double> lap_fine = dealiaser.to_fine(laplacian(state.phi));
        std::vector<double> prod(phi_fine.size());
        std::vector<Field> comps;
        comps.reserve(static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i) {
            std::vector<double> di_fine = dealiaser.to_fine(derivative(state.phi, i));
            for (std::size_t p = 0; p < prod.size(); ++p) prod[p] = -lap_fine[p] * di_fine[p];
            Field fi = dealiaser.from_fine(prod);
            fi.mutable_spectrum()[0] = Complex(0.0, 0.0);
            comps.push_back(std::move(fi));
        }
        out.korteweg = VectorField(std::move(comps));
    }

    // (phi + omega0)^3
    {
        const double w = state.params.omega0;
        std::vector<double> cub(phi_fine.size());
        for (std::size_t p = 0; p < cub.size(); ++p) {
            const double v = phi_fine[p] + w;
            cub[p] = v * v * v;
        }
        out.cubic = dealiaser.from_fine(cub);
    }
    return out;
}

// Linearization about the pure phase: the cubic becomes
// omega0^3 + 3*omega0^2*phi and every genuinely nonlinear term vanishes.
NonlinearTerms linearized_terms(const State& state) {
    const Grid& g = state.u.grid();
    const double w = state.params.omega0;
    NonlinearTerms out;
    out.conv_u = VectorField(g);
    out.conv_phi = Field(g);
    out.korteweg = VectorField(g);
    out.cubic = add_constant(scale(state.phi, 3.0 * w * w), w * w * w);
    return out;
}

NonlinearTerms nonlinear_terms(const State& state) {
    if (state.params.linearized) return linearized_terms(state);
    Dealiaser dealiaser(state.u.grid());
    return compute_nonlinear(state, dealiaser);
}

}  // namespace

Field chemical_potential(const Field& phi, const ModelParams& params) {
    Field shifted = add_constant(phi, params.omega0);
    Field cubic = params.linearized
                      ? add_constant(scale(phi, 3.0 * params.omega0 * params.omega0),
                                     params.omega0 * params.omega0 * params.omega0)
                      : dealiased_product(shifted, shifted, shifted);
    // mu = -eps lap(phi) + zeta ((phi+w)^3 - (phi+w))
    Field out = sub(scale(cubic, params.zeta), scale(shifted, params.zeta));
    return sub(out, scale(laplacian(phi), params.eps));
}

VectorField korteweg_force(const Field& phi) {
    const Grid& g = phi.grid();
    Field lap = laplacian(phi);
    std::vector<Field> comps;
    comps.reserve(static_cast<std::size_t>(g.dim()));
    for (int i = 0; i < g.dim(); ++i) {
        Field fi = scale(dealiased_product(lap, derivative(phi, i)), -1.0);
        // exact zero box integral (gradient plus stress-divergence structure)
        fi.mutable_spectrum()[0] = Complex(0.0, 0.0);
        comps.push_back(std::move(fi));
    }
    return VectorField(std::move(comps));
}

VectorField korteweg_force_stress(const Field& phi) {
    const Grid& g = phi.grid();
    const int dim = g.dim();
    std::vector<Field> grad(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) grad[static_cast<std::size_t>(i)] = derivative(phi, i);
    std::vector<Field> comps;
    comps.reserve(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        Field acc;
        for (int j = 0; j < dim; ++j) {
            Field dj = derivative(dealiased_product(grad[static_cast<std::size_t>(i)],
                                                    grad[static_cast<std::size_t>(j)]),
                                  j);
            if (j == 0) {
                acc = std::move(dj);
            } else {
                auto& spec = acc.mutable_spectrum();
                auto s = dj.spectrum();
                for (std::size_t p = 0; p < spec.size(); ++p) spec[p] += s[p];
            }
        }
        comps.push_back(scale(acc, -1.0));
    }
    return VectorField(std::move(comps));
}

double implicit_symbol_u(const ModelParams& params, double k2) { return -params.nu * k2; }

double implicit_symbol_phi(const ModelParams& params, double k2) {
    return -params.mobility * params.eps * k2 * k2 -
           params.kappa * params.mobility * params.zeta * k2;
}

namespace {

VectorField apply_u_symbol(const State& state) {
    const Grid& g = state.u.grid();
    std::vector<Field> comps;
    comps.reserve(static_cast<std::size_t>(g.dim()));
    for (int c = 0; c < g.dim(); ++c) {
        auto spec = state.u[c].spectrum();
        std::vector<Complex> out(spec.size());
        for (std::size_t i = 0; i < spec.size(); ++i)
            out[i] = spec[i] * implicit_symbol_u(state.params, g.k_squared(i));
        comps.push_back(Field::from_spectral(g, std::move(out)));
    }
    return VectorField(std::move(comps));
}

Field apply_phi_symbol(const State& state) {
    const Grid& g = state.phi.grid();
    auto spec = state.phi.spectrum();
    std::vector<Complex> out(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i)
        out[i] = spec[i] * implicit_symbol_phi(state.params, g.k_squared(i));
    return Field::from_spectral(g, std::move(out));
}

// du = P(conv_u + capillarity*eps*korteweg) [+ nu*lap(u) if with_viscous]
VectorField momentum_explicit(const State& state, const NonlinearTerms& nl, bool with_viscous) {
    const double ke = state.params.capillarity * state.params.eps;
    VectorField force = add(nl.conv_u, scale(nl.korteweg, ke));
    VectorField du = leray_project(force);
    if (with_viscous) du = add(du, scale(laplacian(state.u), state.params.nu));
    return du;
}

// dphi = conv_phi + mobility*zeta*lap(cubic - c_lin*phi) [- mobility*eps*bilap if with_stiff]
Field phi_tendency(const State& state, const NonlinearTerms& nl, double c_lin, bool with_stiff) {
    const double mz = state.params.mobility * state.params.zeta;
    Field inner = sub(nl.cubic, scale(state.phi, c_lin));
    Field out = add(nl.conv_phi, scale(laplacian(inner), mz));
    if (with_stiff)
        out = sub(out, scale(bilaplacian(state.phi), state.params.mobility * state.params.eps));
    return out;
}

}  // namespace

Tendency rhs(const State& state) {
    NonlinearTerms nl = nonlinear_terms(state);
    Tendency t;
    t.du = momentum_explicit(state, nl, /*with_viscous=*/true);
    t.dphi = phi_tendency(state, nl, /*c_lin=*/1.0, /*with_stiff=*/true);
    return t;
}

ExplicitParts explicit_parts(const State& state) {
    NonlinearTerms nl = nonlinear_terms(state);
    ExplicitParts parts;
    parts.du = momentum_explicit(state, nl, /*with_viscous=*/false);
    parts.dphi = phi_tendency(state, nl, 1.0 + state.params.kappa, /*with_stiff=*/false);
    return parts;
}

SplitParts rhs_split(const State& state) {
    ExplicitParts ex = explicit_parts(state);
    SplitParts parts;
    parts.du_explicit = std::move(ex.du);
    parts.dphi_explicit = std::move(ex.dphi);
    parts.du_implicit = apply_u_symbol(state);
    parts.dphi_implicit = apply_phi_symbol(state);
    return parts;
}

Field recover_pressure(const State& state) {
    NonlinearTerms nl = nonlinear_terms(state);
    const double ke = state.params.capillarity * state.params.eps;
    // g = u.grad(u) - capillarity*eps*korteweg = -(conv_u + ke*korteweg)
    VectorField g_force = scale(add(nl.conv_u, scale(nl.korteweg, ke)), -1.0);
    Field div_g = divergence(g_force);
    const Grid& g = state.phi.grid();
    auto spec = div_g.spectrum();
    std::vector<Complex> out(spec.size());
    out[0] = Complex(0.0, 0.0);
    for (std::size_t i = 1; i < spec.size(); ++i) out[i] = spec[i] / g.k_squared(i);
    return Field::from_spectral(g, std::move(out));
}

}  // namespace nsch

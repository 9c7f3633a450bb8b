// model.hpp: the incompressible Navier-Stokes / Cahn-Hilliard right-hand
// sides on the periodic box: double-well potential, chemical potential,
// capillary (Korteweg) forces, the full tendency, and its implicit/explicit
// split with a borrowed second-order stabilization term.

#ifndef NSCH_MODEL_HPP
#define NSCH_MODEL_HPP

#include "nsch/field.hpp"
#include "nsch/spectral.hpp"

namespace nsch {

// Physical and numerical parameters.  The analysis-ready reduction fixes
// all physical constants to 1; paper_mode enforces that together with a
// pure-phase background omega0 = +-1.  kappa is the coefficient of the
// second-order term borrowed from the double-well nonlinearity and moved
// into the implicit operator (kappa = 1 reproduces the stabilized split,
// kappa = 0 the raw one).  linearized drops every nonlinear term, leaving
// the heat and stabilized biharmonic semigroups.
struct ModelParams {
    double omega0 = 1.0;
    double kappa = 1.0;
    double nu = 1.0;
    double mobility = 1.0;
    double capillarity = 1.0;
    double eps = 1.0;
    double zeta = 1.0;
    bool paper_mode = true;
    bool linearized = false;

    void validate() const;
    bool operator==(const ModelParams&) const = default;
};

// The unknowns: velocity u (divergence-free) and shifted order parameter
// phi = concentration - omega0.  Pressure is never carried; it is
// recoverable from (u, phi).
struct State {
    VectorField u;
    Field phi;
    ModelParams params;
    double time = 0.0;
};

// Throws if u is visibly non-solenoidal, any field is non-finite, or the
// parameters are inconsistent.
void validate_state(const State& state);

// F(s) = (s^2 - 1)^2 / 4, minima at the pure phases +-1.
double double_well(double s);
double double_well_derivative(double s);  // s^3 - s

// mu = -eps*lap(phi) + zeta*((phi+omega0)^3 - (phi+omega0)), cubic dealiased.
Field chemical_potential(const Field& phi, const ModelParams& params);

// Capillary force -lap(phi) grad(phi), and the equivalent (modulo a
// gradient) stress-divergence form -div(grad(phi) x grad(phi)).
VectorField korteweg_force(const Field& phi);
VectorField korteweg_force_stress(const Field& phi);

struct Tendency {
    VectorField du;
    Field dphi;
};

// Full tendency:
//   du   = P(-div(u x u) + capillarity*eps*korteweg) + nu*lap(u)
//   dphi = -div(u*phi) - mobility*eps*bilap(phi)
//          + mobility*zeta*lap((phi+omega0)^3 - phi)
// Advection is evaluated in divergence form (exact for solenoidal u and
// dealiased products), which keeps the mean of phi invariant to round-off.
Tendency rhs(const State& state);

// Stiff/nonstiff split.  The implicit operator is diagonal per mode:
//   u:   -nu |k|^2
//   phi: -mobility*eps |k|^4 - kappa*mobility*zeta |k|^2
// and the compensating +kappa*lap(phi) is folded into the explicit
// nonlinearity lap((phi+omega0)^3 - (1+kappa)*phi), so the parts sum to
// rhs exactly.
double implicit_symbol_u(const ModelParams& params, double k2);
double implicit_symbol_phi(const ModelParams& params, double k2);

struct ExplicitParts {
    VectorField du;
    Field dphi;
};
ExplicitParts explicit_parts(const State& state);

struct SplitParts {
    VectorField du_explicit;
    Field dphi_explicit;
    VectorField du_implicit;  // symbol applied to u
    Field dphi_implicit;      // symbol applied to phi
};
SplitParts rhs_split(const State& state);

// Zero-mean pressure from -lap(pi) = div(u.grad u - korteweg force); adding
// -grad(pi) to the unprojected momentum tendency reproduces the projected
// one.
Field recover_pressure(const State& state);

}  // namespace nsch

#endif

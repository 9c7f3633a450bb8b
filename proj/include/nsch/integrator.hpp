// integrator.hpp: time stepping.  First-order IMEX with the stiff operators
// handled implicitly (diagonal per mode), plus classical RK4 on the full
// tendency as a cross-validation oracle.

#ifndef NSCH_INTEGRATOR_HPP
#define NSCH_INTEGRATOR_HPP

#include <functional>
#include <vector>

#include "nsch/diagnostics.hpp"
#include "nsch/model.hpp"

namespace nsch {

enum class Scheme { imex1, rk4 };

struct StepControls {
    double dt = 1e-3;
    double t_end = 1.0;
    double cfl_safety = 0.4;
    Scheme scheme = Scheme::imex1;
    bool adaptive = false;

    void validate() const;
    bool operator==(const StepControls&) const = default;
};

// One implicit-explicit Euler step: per mode,
//   u_new   = P[(u + dt*N_u) / (1 + dt*nu*|k|^2)]
//   phi_new = (phi + dt*N_phi) / (1 + dt*(|k|^4 + kappa*|k|^2))
// with N the explicit parts (N_u Leray-projected).  Unconditionally stable
// on the linear part for any dt.
State imex_step(const State& state, double dt);

// Classical 4-stage explicit step on the full rhs; the projection inside
// rhs keeps every stage divergence-free.  Caller owns stability (cfl_dt).
State rk4_step(const State& state, double dt);

// Step-size guards for the explicitly treated terms:
//   advective        h / max|u|
//   parabolic        h^2 / (2*dim*nu)
//   explicit phi     h^2 / max|mobility*zeta*(3(phi+omega0)^2 - 1 - kappa)|
// scaled by cfl_safety and capped at controls.dt.
double cfl_dt(const State& state, const StepControls& controls);

using Observer = std::function<void(const State&, const DiagnosticsRecord&)>;

struct IntegrateOptions {
    int record_stride = 1;  // observers fire every stride-th step and at t_end
    RecordOptions record_options;
};

// Advances to controls.t_end.  Observer invocations are strictly ordered in
// time; the trajectory is bitwise deterministic for fixed inputs and stride.
// Throws StepDiverged (annotated with step index) if a step goes non-finite.
State integrate(State state, const StepControls& controls,
                const std::vector<Observer>& observers, const IntegrateOptions& opts = {});

}  // namespace nsch

#endif

#include "nsch/integrator.hpp"

#include <cmath>
#include <limits>

#include "nsch/errors.hpp"

namespace nsch {

void StepControls::validate() const {
    if (!(dt > 0.0)) throw DomainError("controls.dt must be positive");
    if (!(t_end >= 0.0)) throw DomainError("controls.t_end must be >= 0");
    if (t_end > 0.0 && dt > t_end * (1.0 + 1e-12))
        throw DomainError("controls.dt must not exceed t_end");
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0))
        throw DomainError("controls.cfl_safety must lie in (0, 1]");
}

namespace {

void check_finite(const State& s, long step) {
    if (!s.u.is_finite() || !s.phi.is_finite()) throw StepDiverged(s.time, step);
}

State apply_tendency(const State& base, const Tendency& t, double coeff) {
    State out = base;
    out.u = add(base.u, scale(t.du, coeff));
    out.phi = add(base.phi, scale(t.dphi, coeff));
    return out;
}

}  // namespace

State imex_step(const State& state, double dt) {
    if (!(dt > 0.0)) throw DomainError("imex_step: dt must be positive");
    ExplicitParts ex = explicit_parts(state);
    const Grid& g = state.phi.grid();

    State out = state;
    {
        std::vector<Field> comps;
        comps.reserve(static_cast<std::size_t>(g.dim()));
        for (int c = 0; c < g.dim(); ++c) {
            auto u_spec = state.u[c].spectrum();
            auto n_spec = ex.du[c].spectrum();
            std::vector<Complex> val(u_spec.size());
            for (std::size_t i = 0; i < val.size(); ++i) {
                const double denom = 1.0 - dt * implicit_symbol_u(state.params, g.k_squared(i));
                val[i] = (u_spec[i] + dt * n_spec[i]) / denom;
            }
            comps.push_back(Field::from_spectral(g, std::move(val)));
        }
        out.u = leray_project(VectorField(std::move(comps)));
    }
    {
        auto p_spec = state.phi.spectrum();
        auto n_spec = ex.dphi.spectrum();
        std::vector<Complex> val(p_spec.size());
        for (std::size_t i = 0; i < val.size(); ++i) {
            const double denom = 1.0 - dt * implicit_symbol_phi(state.params, g.k_squared(i));
            val[i] = (p_spec[i] + dt * n_spec[i]) / denom;
        }
        out.phi = Field::from_spectral(g, std::move(val));
    }
    out.time = state.time + dt;
    check_finite(out, -1);
    return out;
}

State rk4_step(const State& state, double dt) {
    if (!(dt > 0.0)) throw DomainError("rk4_step: dt must be positive");
    Tendency k1 = rhs(state);
    Tendency k2 = rhs(apply_tendency(state, k1, 0.5 * dt));
    Tendency k3 = rhs(apply_tendency(state, k2, 0.5 * dt));
    Tendency k4 = rhs(apply_tendency(state, k3, dt));

    State out = state;
    const double w = dt / 6.0;
    out.u = add(state.u,
                add(scale(k1.du, w),
                    add(scale(k2.du, 2.0 * w), add(scale(k3.du, 2.0 * w), scale(k4.du, w)))));
    out.phi = add(state.phi, add(scale(k1.dphi, w),
                                 add(scale(k2.dphi, 2.0 * w),
                                     add(scale(k3.dphi, 2.0 * w), scale(k4.dphi, w)))));
    out.time = state.time + dt;
    check_finite(out, -1);
    return out;
}

double cfl_dt(const State& state, const StepControls& controls) {
    const Grid& g = state.phi.grid();
    const double h = g.spacing();
    const double inf = std::numeric_limits<double>::infinity();

    double cand = inf;
    const double umax = lp_norm(state.u, inf);
    if (umax > 0.0) cand = std::min(cand, h / umax);

    if (state.params.nu > 0.0)
        cand = std::min(cand, h * h / (2.0 * g.dim() * state.params.nu));

    auto phi_vals = state.phi.values();
    double cmax = 0.0;
    const double mz = state.params.mobility * state.params.zeta;
    for (double v : phi_vals) {
        const double s = v + state.params.omega0;
        cmax = std::max(cmax, std::abs(mz * (3.0 * s * s - 1.0 - state.params.kappa)));
    }
    if (cmax > 0.0) cand = std::min(cand, h * h / cmax);

    if (std::isinf(cand)) return controls.dt;
    return std::min(controls.cfl_safety * cand, controls.dt);
}

State integrate(State state, const StepControls& controls,
                const std::vector<Observer>& observers, const IntegrateOptions& opts) {
    controls.validate();
    validate_state(state);
    if (opts.record_stride < 1) throw DomainError("record_stride must be >= 1");

    const double t_end = controls.t_end;
    long step = 0;
    while (state.time < t_end - 1e-15 * std::max(1.0, t_end)) {
        double dt = controls.adaptive ? cfl_dt(state, controls) : controls.dt;
        const double remaining = t_end - state.time;
        bool last = false;
        if (dt >= remaining * (1.0 - 1e-12)) {
            dt = remaining;
            last = true;
        }
        try {
            state = controls.scheme == Scheme::imex1 ? imex_step(state, dt)
                                                     : rk4_step(state, dt);
        } catch (const StepDiverged& e) {
            throw StepDiverged(e.time, step);
        }
        if (last) state.time = t_end;
        ++step;
        if (!observers.empty() && (step % opts.record_stride == 0 || last)) {
            DiagnosticsRecord rec = compute_record(state, opts.record_options);
            for (const Observer& obs : observers) obs(state, rec);
        }
        if (last) break;
    }
    return state;
}

}  // namespace nsch

// Time integrator tests: scalar mode recurrences, stability factors, order
// checks, step-size guards, and conservation along short runs.

#include <cmath>
#include <complex>

#include "doctest.h"
#include "nsch/errors.hpp"
#include "nsch/integrator.hpp"
#include "nsch/random_fields.hpp"
#include "test_helpers.hpp"

using namespace nsch;
using namespace nsch_test;

namespace {

State zero_state(const Grid& g) {
    State s;
    s.params = ModelParams{};
    s.u = VectorField(g);
    s.phi = Field(g);
    return s;
}

State stokes_state(const Grid& g, double amp) {
    State s = zero_state(g);
    s.u[0] = sample(g, [amp](double, double y, double) { return amp * std::sin(y); });
    return s;
}

State small_random_state(const Grid& g, uint64_t seed, double amp) {
    State s = zero_state(g);
    s.u = scale(random_divfree_field(g, seed, g.n() / 4), amp);
    s.phi = scale(random_mean_zero_field(g, seed ^ 0x77ULL, g.n() / 4), amp);
    return s;
}

// spectral coefficient at integer frequency (m0, m1, m2)
Complex coeff(const Field& f, int m0, int m1, int m2) {
    const Grid& g = f.grid();
    const int n = g.n();
    auto wrap = [n](int m) { return m >= 0 ? m : m + n; };
    std::array<int, 3> idx{wrap(m0), wrap(m1), wrap(m2)};
    return f.spectrum()[g.encode(std::span<const int>(idx.data(), 3))];
}

}  // namespace

TEST_CASE("imex step") {
    Grid g = make_grid(3, 16, kTwoPi);

    SUBCASE("zero state stays zero and time advances") {
        State s = zero_state(g);
        State out = imex_step(s, 0.25);
        CHECK(out.time == doctest::Approx(0.25));
        CHECK(sobolev_norm(out.u, 0.0) == 0.0);
        CHECK(linf(out.phi) <= 1e-15);
        CHECK_THROWS_AS(imex_step(s, 0.0), DomainError);
    }
    SUBCASE("stokes mode contracts by the implicit factor") {
        const double eps = 1e-8, dt = 0.1;
        State s = stokes_state(g, eps);
        State out = imex_step(s, dt);
        const Complex before = coeff(s.u[0], 0, 1, 0);
        const Complex after = coeff(out.u[0], 0, 1, 0);
        CHECK(std::abs(after - before / (1.0 + dt)) <= 1e-12 * std::abs(before));
    }
    SUBCASE("phi mode follows the linearized recurrence") {
        // kappa = 1, omega0 = 1: denominator 1 + dt(|k|^4 + |k|^2) = 1 + 2dt,
        // explicit linear part (3 - 1 - kappa) lap(phi) = -eps sin at |k| = 1
        const double eps = 1e-4, dt = 0.05;
        State s = zero_state(g);
        s.phi = sample(g, [eps](double x, double, double) { return eps * std::sin(x); });
        State out = imex_step(s, dt);
        const Complex before = coeff(s.phi, 1, 0, 0);
        const Complex after = coeff(out.phi, 1, 0, 0);
        const double factor = (1.0 - dt) / (1.0 + 2.0 * dt);
        // O(eps^3) corrections feed the |k| = 1 mode through the cubic
        CHECK(std::abs(after - before * factor) <= 10.0 * eps * eps * eps + 1e-16);
    }
    SUBCASE("linear stability for all dt") {
        ModelParams p;
        for (double dt : {1e-3, 1e-1, 1.0, 1e2}) {
            for (double k2 : {0.0625, 1.0, 16.0, 400.0}) {
                const double f_u = 1.0 / (1.0 - dt * implicit_symbol_u(p, k2));
                const double f_phi = 1.0 / (1.0 - dt * implicit_symbol_phi(p, k2));
                CHECK(std::abs(f_u) <= 1.0);
                CHECK(std::abs(f_phi) <= 1.0);
                // and with the explicit linearized double-well part included
                const double amp =
                    (1.0 - dt * (2.0 - p.kappa) * k2) / (1.0 + dt * (k2 * k2 + p.kappa * k2));
                CHECK(std::abs(amp) <= 1.0);
            }
        }
    }
}

TEST_CASE("rk4 step") {
    Grid g = make_grid(3, 16, kTwoPi);

    SUBCASE("zero state stays zero") {
        State out = rk4_step(zero_state(g), 0.1);
        CHECK(sobolev_norm(out.u, 0.0) == 0.0);
    }
    SUBCASE("stokes amplification matches the quartic taylor polynomial") {
        const double dt = 0.2;
        State s = stokes_state(g, 1.0);
        State out = rk4_step(s, dt);
        const double taylor =
            1.0 - dt + dt * dt / 2.0 - dt * dt * dt / 6.0 + dt * dt * dt * dt / 24.0;
        const Complex before = coeff(s.u[0], 0, 1, 0);
        const Complex after = coeff(out.u[0], 0, 1, 0);
        CHECK(std::abs(after - before * taylor) <= 1e-12 * std::abs(before));
    }
    SUBCASE("local error scales like dt^5") {
        // products fill the band to |m| <= 3 per axis on this grid, so the
        // stiffest reachable symbol is |k|^4 + 2|k|^2 = 783; stay inside
        // the explicit stability region
        Grid gs = make_grid(3, 8, kTwoPi);
        State s = small_random_state(gs, 5, 0.1);
        auto local_diff = [&](double dt) {
            State one = rk4_step(s, dt);
            State two = rk4_step(rk4_step(s, dt / 2.0), dt / 2.0);
            return sobolev_norm(sub(one.u, two.u), 0.0) +
                   sobolev_norm(sub(one.phi, two.phi), 0.0);
        };
        const double e1 = local_diff(2e-3);
        const double e2 = local_diff(1e-3);
        CHECK(e1 / e2 > 20.0);
        CHECK(e1 / e2 < 48.0);
    }
}

TEST_CASE("cfl guards") {
    Grid g = make_grid(3, 16, kTwoPi);
    StepControls controls;
    controls.dt = 0.5;
    controls.cfl_safety = 0.4;

    SUBCASE("zero state returns controls.dt") {
        // phi = 0 still leaves the |3 w^2 - 1 - kappa| = 1 guard; use the
        // plain bound h^2 term to see the cap
        State s = zero_state(g);
        const double dt = cfl_dt(s, controls);
        CHECK(dt <= controls.dt);
        CHECK(dt > 0.0);
        StepControls tight = controls;
        tight.dt = 1e-6;
        CHECK(cfl_dt(s, tight) == doctest::Approx(1e-6));
    }
    SUBCASE("advective guard halves when n doubles") {
        // velocity large enough that h/|u| binds
        State s16 = stokes_state(make_grid(3, 16, kTwoPi), 500.0);
        State s32 = stokes_state(make_grid(3, 32, kTwoPi), 500.0);
        const double a = cfl_dt(s16, controls);
        const double b = cfl_dt(s32, controls);
        CHECK(a / b == doctest::Approx(2.0).epsilon(0.05));
    }
    SUBCASE("worked value recomputed from the formula") {
        State s = small_random_state(g, 99, 2.0);
        const double got = cfl_dt(s, controls);
        // independent evaluation
        const double h = g.spacing();
        double umax = 0.0;
        {
            std::vector<double> mag(g.size(), 0.0);
            for (int c = 0; c < 3; ++c) {
                auto v = s.u[c].values();
                for (std::size_t i = 0; i < mag.size(); ++i) mag[i] += v[i] * v[i];
            }
            for (double m : mag) umax = std::max(umax, std::sqrt(m));
        }
        double cmax = 0.0;
        for (double v : s.phi.values()) {
            const double w = v + 1.0;
            cmax = std::max(cmax, std::abs(3.0 * w * w - 1.0 - 1.0));
        }
        double cand = h / umax;
        cand = std::min(cand, h * h / (2.0 * 3.0));
        cand = std::min(cand, h * h / cmax);
        CHECK(got == doctest::Approx(std::min(0.4 * cand, controls.dt)).epsilon(1e-12));
    }
}

TEST_CASE("integrate") {
    Grid g = make_grid(3, 16, kTwoPi);

    SUBCASE("t_end = 0 returns the input with no observer calls") {
        State s = small_random_state(g, 12, 0.01);
        StepControls controls;
        controls.dt = 0.1;
        controls.t_end = 0.0;
        int calls = 0;
        std::vector<Observer> obs{[&calls](const State&, const DiagnosticsRecord&) { ++calls; }};
        State out = integrate(s, controls, obs);
        CHECK(calls == 0);
        CHECK(out.time == 0.0);
        CHECK(sobolev_norm(sub(out.u, s.u), 0.0) == 0.0);
    }
    SUBCASE("stokes decay reaches exp(-1)") {
        State s = stokes_state(g, 1.0);
        StepControls controls;
        controls.dt = 1e-3;
        controls.t_end = 1.0;
        State out = integrate(s, controls, {});
        const double amp = std::abs(coeff(out.u[0], 0, 1, 0)) / std::abs(coeff(s.u[0], 0, 1, 0));
        CHECK(amp == doctest::Approx(std::exp(-1.0)).epsilon(1e-3));
        CHECK(out.time == doctest::Approx(1.0));
    }
    SUBCASE("imex converges to rk4 at first order") {
        // rk4 reference needs dt within the explicit stability limit of the
        // stiffest reachable mode (|m| <= 3 per axis on an 8^3 grid)
        Grid gs = make_grid(3, 8, kTwoPi);
        State s = small_random_state(gs, 3, 0.05);
        StepControls ref_controls;
        ref_controls.dt = 2e-4;
        ref_controls.t_end = 0.1;
        ref_controls.scheme = Scheme::rk4;
        State ref = integrate(s, ref_controls, {});

        auto imex_err = [&](double dt) {
            StepControls c;
            c.dt = dt;
            c.t_end = 0.1;
            State out = integrate(s, c, {});
            return sobolev_norm(sub(out.u, ref.u), 0.0) +
                   sobolev_norm(sub(out.phi, ref.phi), 0.0);
        };
        const double e1 = imex_err(0.01);
        const double e2 = imex_err(0.005);
        CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.2));
    }
    SUBCASE("observer stride and ordering") {
        State s = small_random_state(g, 4, 0.01);
        StepControls controls;
        controls.dt = 0.01;
        controls.t_end = 0.1;
        std::vector<double> times;
        std::vector<Observer> obs{[&times](const State& st, const DiagnosticsRecord& rec) {
            CHECK(st.time == rec.time);
            times.push_back(rec.time);
        }};
        IntegrateOptions iopts;
        iopts.record_stride = 2;
        integrate(s, controls, obs, iopts);
        REQUIRE(times.size() == 5);
        for (std::size_t i = 1; i < times.size(); ++i) CHECK(times[i] > times[i - 1]);
        CHECK(times.back() == doctest::Approx(0.1));
    }
    SUBCASE("conservation over many steps") {
        State s = small_random_state(g, 8, 0.01);
        const double phi_mean0 = s.phi.mean();
        const Complex u0_mode = coeff(s.u[0], 0, 0, 0);
        StepControls controls;
        controls.dt = 5e-3;
        controls.t_end = 1.0;
        State out = integrate(s, controls, {});
        CHECK(std::abs(out.phi.mean() - phi_mean0) <=
              1e-11 * std::max(1.0, std::abs(phi_mean0)));
        CHECK(std::abs(coeff(out.u[0], 0, 0, 0) - u0_mode) == 0.0);
        const double div_norm = sobolev_norm(divergence(out.u), 0.0);
        CHECK(div_norm <= 1e-8 * (1.0 + sobolev_norm(out.u, 0.0)));
    }
    SUBCASE("divergence surfaces as StepDiverged with metadata") {
        // exploratory mode, blow-up by reversed viscosity sign is not
        // available; instead drive with a huge dt on a large-amplitude state
        State s = small_random_state(g, 9, 1.0);
        StepControls controls;
        controls.dt = 1e6;
        controls.t_end = 1e8;
        controls.scheme = Scheme::rk4;
        try {
            integrate(s, controls, {});
            FAIL("expected StepDiverged");
        } catch (const StepDiverged& e) {
            CHECK(e.step >= 0);
            CHECK(e.time >= 0.0);
        }
    }
}

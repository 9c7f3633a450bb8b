// Spectral infrastructure tests: transforms, multipliers, projection,
// norms, and dealiased products, checked against closed forms.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "nsch/errors.hpp"
#include "nsch/field.hpp"
#include "nsch/grid.hpp"
#include "nsch/random_fields.hpp"
#include "nsch/spectral.hpp"

using namespace nsch;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Samples f(x) over the grid given a per-point callable on coordinates.
template <typename F>
Field sample(const Grid& g, F&& f) {
    std::vector<double> vals(g.size());
    const int n = g.n();
    std::size_t flat = 0;
    if (g.dim() == 2) {
        for (int i0 = 0; i0 < n; ++i0)
            for (int i1 = 0; i1 < n; ++i1, ++flat)
                vals[flat] = f(g.x_of_index(i0), g.x_of_index(i1), 0.0);
    } else {
        for (int i0 = 0; i0 < n; ++i0)
            for (int i1 = 0; i1 < n; ++i1)
                for (int i2 = 0; i2 < n; ++i2, ++flat)
                    vals[flat] = f(g.x_of_index(i0), g.x_of_index(i1), g.x_of_index(i2));
    }
    return Field::from_physical(g, std::move(vals));
}

double linf_diff(const Field& a, const Field& b) {
    auto va = a.values();
    auto vb = b.values();
    double m = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) m = std::max(m, std::abs(va[i] - vb[i]));
    return m;
}

}  // namespace

TEST_CASE("make_grid validates and populates wavenumbers") {
    Grid g = make_grid(3, 8, kTwoPi);
    CHECK(g.dim() == 3);
    CHECK(g.n() == 8);
    CHECK(g.size() == 512);
    // axis frequencies 0,1,2,3,-4,-3,-2,-1 scaled by 2*pi/L = 1
    CHECK(g.k_of_index(1) == doctest::Approx(1.0));
    CHECK(g.k_of_index(4) == doctest::Approx(-4.0));
    double max_abs = 0.0;
    for (int i = 0; i < 8; ++i) max_abs = std::max(max_abs, std::abs(g.k_of_index(i)));
    CHECK(max_abs == doctest::Approx(4.0));
    // zero mode present exactly once
    int zeros = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g.k_squared(i) == 0.0) ++zeros;
    CHECK(zeros == 1);

    CHECK_THROWS_AS(make_grid(3, 7, kTwoPi), GridError);
    CHECK_THROWS_AS(make_grid(3, 6, kTwoPi), GridError);
    CHECK_THROWS_AS(make_grid(3, 8, 0.0), GridError);
    CHECK_THROWS_AS(make_grid(4, 8, kTwoPi), GridError);

    Grid g2 = make_grid(2, 64, 32.0 * std::numbers::pi);
    // smallest nonzero |k| = 2*pi/L = 1/16
    CHECK(g2.k_of_index(1) == doctest::Approx(1.0 / 16.0));
}

TEST_CASE("transform round trip is exact to 1e-12") {
    for (int dim : {2, 3}) {
        Grid g = make_grid(dim, 16, kTwoPi);
        std::mt19937_64 rng(12345);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::vector<double> vals(g.size());
        for (auto& v : vals) v = u(rng);
        Field f = Field::from_physical(g, vals);
        // force a spectral->physical round trip
        Field g2f = Field::from_spectral(
            g, std::vector<Complex>(f.spectrum().begin(), f.spectrum().end()));
        auto out = g2f.values();
        double max_err = 0.0, max_val = 0.0;
        for (std::size_t i = 0; i < vals.size(); ++i) {
            max_err = std::max(max_err, std::abs(out[i] - vals[i]));
            max_val = std::max(max_val, std::abs(vals[i]));
        }
        CHECK(max_err <= 1e-12 * max_val);
    }
}

TEST_CASE("real fields have conjugate-symmetric spectra") {
    Grid g = make_grid(3, 8, kTwoPi);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> vals(g.size());
    for (auto& v : vals) v = u(rng);
    Field f = Field::from_physical(g, vals);
    auto spec = f.spectrum();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const std::size_t j = g.conjugate_index(i);
        CHECK(std::abs(spec[i] - std::conj(spec[j])) <= 1e-13);
    }
}

TEST_CASE("fractional laplacian on single modes") {
    Grid g = make_grid(3, 16, kTwoPi);
    Field f = sample(g, [](double x, double, double) { return std::sin(x); });

    SUBCASE("delta = 0 is the identity") {
        Field out = fractional_laplacian(f, 0.0);
        CHECK(linf_diff(out, f) <= 1e-13);
    }
    SUBCASE("|k| = 1 eigenfunction at delta = 1") {
        Field out = fractional_laplacian(f, 1.0);
        CHECK(linf_diff(out, f) <= 1e-12);
    }
    SUBCASE("sin(2x), delta = 1/2 -> 2 sin(2x)") {
        Field f2 = sample(g, [](double x, double, double) { return std::sin(2.0 * x); });
        Field expect =
            sample(g, [](double x, double, double) { return 2.0 * std::sin(2.0 * x); });
        Field out = fractional_laplacian(f2, 0.5);
        CHECK(linf_diff(out, expect) <= 1e-12);
    }
    SUBCASE("negative power rejects nonzero mean") {
        Field c = sample(g, [](double x, double, double) { return 1.0 + std::sin(x); });
        CHECK_THROWS_AS(fractional_laplacian(c, -0.25), NegativePowerOnNonzeroMean);
        CHECK_NOTHROW(fractional_laplacian(f, -0.25));
    }
    SUBCASE("multiplier composition on mean-zero fields") {
        Field f2 = sample(g, [](double x, double y, double z) {
            return std::sin(x) + 0.3 * std::cos(2.0 * y) * std::sin(z);
        });
        Field ab = fractional_laplacian(fractional_laplacian(f2, 0.35), 0.4);
        Field once = fractional_laplacian(f2, 0.75);
        CHECK(sobolev_norm(sub(ab, once), 0.0) <= 1e-10 * sobolev_norm(once, 0.0));
    }
}

TEST_CASE("leray projection") {
    Grid g = make_grid(3, 16, kTwoPi);

    SUBCASE("pure gradient projects to zero") {
        Field psi = sample(g, [](double x, double y, double z) {
            return std::sin(x) * std::cos(y) + 0.5 * std::sin(2.0 * z);
        });
        VectorField gr = gradient(psi);
        VectorField out = leray_project(gr);
        CHECK(sobolev_norm(out, 0.0) <= 1e-12 * sobolev_norm(gr, 0.0));
    }
    SUBCASE("divergence-free mode passes through") {
        VectorField v(g);
        v[0] = sample(g, [](double, double y, double) { return std::sin(y); });
        VectorField out = leray_project(v);
        CHECK(linf_diff(out[0], v[0]) <= 1e-12);
        CHECK(sobolev_norm(out[1], 0.0) <= 1e-13);
        CHECK(sobolev_norm(out[2], 0.0) <= 1e-13);
    }
    SUBCASE("mode parallel to its wavevector is annihilated") {
        VectorField v(g);
        v[0] = sample(g, [](double x, double, double) { return std::sin(x); });
        VectorField out = leray_project(v);
        CHECK(sobolev_norm(out, 0.0) <= 1e-12);
    }
    SUBCASE("idempotence and discrete divergence") {
        VectorField v(g);
        uint64_t seed = 7;
        for (int c = 0; c < 3; ++c)
            v[c] = random_mean_zero_field(g, seed + static_cast<uint64_t>(c), 4);
        VectorField p = leray_project(v);
        VectorField pp = leray_project(p);
        CHECK(sobolev_norm(sub(pp, p), 0.0) <= 1e-12 * sobolev_norm(p, 0.0));
        CHECK(sobolev_norm(divergence(p), 0.0) <= 1e-10 * sobolev_norm(v, 0.0));
    }
    SUBCASE("projection orthogonal to gradients") {
        VectorField v(g);
        for (int c = 0; c < 3; ++c)
            v[c] = random_mean_zero_field(g, 100 + static_cast<uint64_t>(c), 4);
        Field psi = random_mean_zero_field(g, 55, 4);
        VectorField p = leray_project(v);
        VectorField gr = gradient(psi);
        const double ip = l2_inner(p, gr);
        const double scal = sobolev_norm(p, 0.0) * sobolev_norm(gr, 0.0);
        CHECK(std::abs(ip) <= 1e-10 * scal);
    }
}

TEST_CASE("sobolev norms") {
    Grid g = make_grid(3, 16, kTwoPi);
    const double vol = std::pow(kTwoPi, 3);
    Field f = sample(g, [](double x, double, double) { return std::sin(x); });

    SUBCASE("single mode |k|=1: all s give the L2 norm") {
        const double expect = std::sqrt(vol / 2.0);
        for (double s : {-1.0, -0.5, 0.0, 0.5, 1.0, 1.5}) {
            CHECK(sobolev_norm(f, s) == doctest::Approx(expect).epsilon(1e-12));
        }
    }
    SUBCASE("sin(2x) at s = -1 is half the L2 norm") {
        Field f2 = sample(g, [](double x, double, double) { return std::sin(2.0 * x); });
        CHECK(sobolev_norm(f2, -1.0) ==
              doctest::Approx(0.5 * sobolev_norm(f2, 0.0)).epsilon(1e-12));
    }
    SUBCASE("Parseval: spectral s=0 matches physical quadrature") {
        Field r = random_mean_zero_field(g, 31337, 4);
        CHECK(sobolev_norm(r, 0.0) == doctest::Approx(lp_norm(r, 2.0)).epsilon(1e-10));
    }
}

TEST_CASE("lp norms") {
    Grid g = make_grid(3, 16, kTwoPi);
    const double L = kTwoPi;

    SUBCASE("constant field") {
        Field c = sample(g, [](double, double, double) { return -2.5; });
        for (double p : {1.0, 2.0, 3.0}) {
            CHECK(lp_norm(c, p) == doctest::Approx(2.5 * std::pow(L, 3.0 / p)).epsilon(1e-12));
        }
        CHECK(lp_norm(c, std::numeric_limits<double>::infinity()) == doctest::Approx(2.5));
    }
    SUBCASE("sin mode at p = 2") {
        Field f = sample(g, [](double x, double, double) { return std::sin(x); });
        CHECK(lp_norm(f, 2.0) ==
              doctest::Approx(std::pow(L, 1.5) / std::sqrt(2.0)).epsilon(1e-12));
    }
    SUBCASE("sup norm approaches 1 with refinement") {
        for (int n : {8, 16, 32}) {
            Grid gn = make_grid(3, n, kTwoPi);
            Field f = sample(gn, [](double x, double, double) { return std::sin(x); });
            const double sup = lp_norm(f, std::numeric_limits<double>::infinity());
            CHECK(sup <= 1.0 + 1e-12);
            // max over the grid misses the peak by O(h^2)
            const double h = gn.spacing();
            CHECK(sup >= 1.0 - h * h);
        }
    }
    SUBCASE("p < 1 rejected") {
        Field f = sample(g, [](double x, double, double) { return std::sin(x); });
        CHECK_THROWS_AS(lp_norm(f, 0.5), DomainError);
    }
}

TEST_CASE("dealiased products") {
    Grid g = make_grid(3, 16, kTwoPi);

    SUBCASE("product with the constant 1 is exact") {
        Field f = random_mean_zero_field(g, 5, 7);  // fill most of the band
        Field one = sample(g, [](double, double, double) { return 1.0; });
        Field out = dealiased_product(f, one);
        CHECK(sobolev_norm(sub(out, f), 0.0) <= 1e-13 * sobolev_norm(f, 0.0));
    }
    SUBCASE("sin^2 via trig identity, no spurious modes") {
        Field f = sample(g, [](double x, double, double) { return std::sin(x); });
        Field out = dealiased_product(f, f);
        Field expect =
            sample(g, [](double x, double, double) { return 0.5 - 0.5 * std::cos(2.0 * x); });
        CHECK(linf_diff(out, expect) <= 1e-13);
        // every mode other than 0 and +-2 e_x vanishes
        auto spec = out.spectrum();
        for (std::size_t i = 0; i < g.size(); ++i) {
            auto idx = g.decode(i);
            const bool kept = (idx[1] == 0 && idx[2] == 0 &&
                               (idx[0] == 0 || idx[0] == 2 || idx[0] == g.n() - 2));
            if (!kept) CHECK(std::abs(spec[i]) <= 1e-14);
        }
    }
    SUBCASE("cube of the highest clean mode matches the triple-angle identity") {
        const int q = g.n() / 2 - 1;
        Field f = sample(g, [q](double x, double, double) { return std::sin(q * x); });
        Field out = dealiased_product(f, f, f);
        // sin^3(qx) = (3 sin(qx) - sin(3qx))/4; mode 3q is unrepresentable
        Field expect =
            sample(g, [q](double x, double, double) { return 0.75 * std::sin(q * x); });
        CHECK(linf_diff(out, expect) <= 1e-12);
        // nothing leaked outside the +-q e_x pair
        auto spec = out.spectrum();
        for (std::size_t i = 0; i < g.size(); ++i) {
            auto idx = g.decode(i);
            const bool kept =
                (idx[1] == 0 && idx[2] == 0 && (idx[0] == q || idx[0] == g.n() - q));
            if (!kept) CHECK(std::abs(spec[i]) <= 1e-14);
        }
    }
    SUBCASE("mixed grids rejected") {
        Grid g2 = make_grid(3, 8, kTwoPi);
        Field a = sample(g, [](double x, double, double) { return std::sin(x); });
        Field b = sample(g2, [](double x, double, double) { return std::sin(x); });
        CHECK_THROWS_AS(dealiased_product(a, b), MixedGridError);
    }
    SUBCASE("quadratic product equals the banded convolution") {
        Grid gs = make_grid(2, 16, kTwoPi);
        Field a = random_mean_zero_field(gs, 11, 4);
        Field b = random_mean_zero_field(gs, 12, 4);
        Field out = dealiased_product(a, b);
        auto sa = a.spectrum();
        auto sb = b.spectrum();
        auto so = out.spectrum();
        const int n = gs.n();
        // brute-force convolution over integer frequencies
        for (std::size_t i = 0; i < gs.size(); ++i) {
            auto idx = gs.decode(i);
            const int m0 = gs.freq_of_index(idx[0]);
            const int m1 = gs.freq_of_index(idx[1]);
            if (std::abs(m0) >= n / 2 || std::abs(m1) >= n / 2) continue;
            Complex acc(0.0, 0.0);
            for (std::size_t j = 0; j < gs.size(); ++j) {
                auto jd = gs.decode(j);
                const int p0 = gs.freq_of_index(jd[0]);
                const int p1 = gs.freq_of_index(jd[1]);
                const int q0 = m0 - p0;
                const int q1 = m1 - p1;
                if (q0 < -n / 2 || q0 >= n / 2 || q1 < -n / 2 || q1 >= n / 2) continue;
                const int a0 = q0 >= 0 ? q0 : q0 + n;
                const int a1 = q1 >= 0 ? q1 : q1 + n;
                acc += sa[j] * sb[static_cast<std::size_t>(a0) * n + a1];
            }
            CHECK(std::abs(so[i] - acc) <= 1e-12);
        }
    }
}

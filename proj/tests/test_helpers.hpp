// Shared helpers for the test suites.

#ifndef NSCH_TEST_HELPERS_HPP
#define NSCH_TEST_HELPERS_HPP

#include <cmath>
#include <numbers>
#include <vector>

#include "nsch/field.hpp"
#include "nsch/grid.hpp"

namespace nsch_test {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Samples f(x0, x1, x2) over the grid (x2 = 0 in 2D).
template <typename F>
nsch::Field sample(const nsch::Grid& g, F&& f) {
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
    return nsch::Field::from_physical(g, std::move(vals));
}

inline double linf_diff(const nsch::Field& a, const nsch::Field& b) {
    auto va = a.values();
    auto vb = b.values();
    double m = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) m = std::max(m, std::abs(va[i] - vb[i]));
    return m;
}

inline double linf(const nsch::Field& a) {
    auto va = a.values();
    double m = 0.0;
    for (double v : va) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace nsch_test

#endif

#include "nsch/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "nsch/errors.hpp"

namespace nsch {

namespace {

void check_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (!(a == b)) throw MixedGridError(std::string(what) + ": operands on different grids");
}

// Applies out[k] = f_hat[k] * mult(flat) over the full spectrum.
template <typename Mult>
Field apply_multiplier(const Field& f, Mult&& mult) {
    auto spec = f.spectrum();
    std::vector<Complex> out(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) out[i] = spec[i] * mult(i);
    return Field::from_spectral(f.grid(), std::move(out));
}

}  // namespace

Field derivative(const Field& f, int axis) {
    const Grid& g = f.grid();
    if (axis < 0 || axis >= g.dim()) throw DomainError("derivative: axis out of range");
    auto spec = f.spectrum();
    std::vector<Complex> out(spec.size());
    const int n = g.n();
    const int half = n / 2;
    const int dim = g.dim();
    std::size_t flat = 0;
    if (dim == 2) {
        for (int i0 = 0; i0 < n; ++i0)
            for (int i1 = 0; i1 < n; ++i1, ++flat) {
                const int ia = axis == 0 ? i0 : i1;
                const double k = ia == half ? 0.0 : g.k_of_index(ia);
                out[flat] = spec[flat] * Complex(0.0, k);
            }
    } else {
        for (int i0 = 0; i0 < n; ++i0)
            for (int i1 = 0; i1 < n; ++i1)
                for (int i2 = 0; i2 < n; ++i2, ++flat) {
                    const int ia = axis == 0 ? i0 : (axis == 1 ? i1 : i2);
                    const double k = ia == half ? 0.0 : g.k_of_index(ia);
                    out[flat] = spec[flat] * Complex(0.0, k);
                }
    }
    return Field::from_spectral(g, std::move(out));
}

VectorField gradient(const Field& f) {
    std::vector<Field> comps;
    comps.reserve(static_cast<std::size_t>(f.grid().dim()));
    for (int a = 0; a < f.grid().dim(); ++a) comps.push_back(derivative(f, a));
    return VectorField(std::move(comps));
}

Field divergence(const VectorField& v) {
    Field out = derivative(v[0], 0);
    auto& acc = out.mutable_spectrum();
    for (int a = 1; a < v.dim(); ++a) {
        Field da = derivative(v[a], a);
        auto s = da.spectrum();
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += s[i];
    }
    return out;
}

Field laplacian(const Field& f) {
    const Grid& g = f.grid();
    return apply_multiplier(f, [&g](std::size_t i) { return -g.k_squared(i); });
}

VectorField laplacian(const VectorField& v) {
    std::vector<Field> comps;
    comps.reserve(static_cast<std::size_t>(v.dim()));
    for (int a = 0; a < v.dim(); ++a) comps.push_back(laplacian(v[a]));
    return VectorField(std::move(comps));
}

Field bilaplacian(const Field& f) {
    const Grid& g = f.grid();
    return apply_multiplier(f, [&g](std::size_t i) {
        const double k2 = g.k_squared(i);
        return k2 * k2;
    });
}

Field fractional_laplacian(const Field& f, double delta) {
    const Grid& g = f.grid();
    if (delta == 0.0) return f;
    auto spec = f.spectrum();
    if (delta < 0.0) {
        double sum2 = 0.0;
        for (const Complex& c : spec) sum2 += std::norm(c);
        const double l2 = std::sqrt(g.volume() * sum2);
        const double zero_mode = std::abs(spec[0]) * std::sqrt(g.volume());
        const double tol = 1e-10 * l2;
        if (zero_mode > tol && l2 > 0.0) throw NegativePowerOnNonzeroMean(zero_mode, tol);
    }
    std::vector<Complex> out(spec.size());
    out[0] = Complex(0.0, 0.0);
    for (std::size_t i = 1; i < spec.size(); ++i)
        out[i] = spec[i] * std::pow(g.k_squared(i), delta);
    return Field::from_spectral(g, std::move(out));
}

VectorField fractional_laplacian(const VectorField& v, double delta) {
    std::vector<Field> comps;
    comps.reserve(static_cast<std::size_t>(v.dim()));
    for (int a = 0; a < v.dim(); ++a) comps.push_back(fractional_laplacian(v[a], delta));
    return VectorField(std::move(comps));
}

VectorField leray_project(const VectorField& v) {
    const Grid& g = v.grid();
    const int dim = v.dim();
    const int n = g.n();
    std::vector<std::span<const Complex>> in(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a) {
        if (!v[a].is_finite()) throw DomainError("leray_project: non-finite input");
        in[static_cast<std::size_t>(a)] = v[a].spectrum();
    }
    std::vector<std::vector<Complex>> out(static_cast<std::size_t>(dim),
                                          std::vector<Complex>(g.size()));
    std::size_t flat = 0;
    if (dim == 2) {
        for (int i0 = 0; i0 < n; ++i0) {
            const double k0 = g.k_of_index(i0);
            for (int i1 = 0; i1 < n; ++i1, ++flat) {
                const double k1 = g.k_of_index(i1);
                const double k2 = k0 * k0 + k1 * k1;
                if (k2 == 0.0) {
                    out[0][flat] = in[0][flat];
                    out[1][flat] = in[1][flat];
                    continue;
                }
                const Complex kv = (k0 * in[0][flat] + k1 * in[1][flat]) / k2;
                out[0][flat] = in[0][flat] - k0 * kv;
                out[1][flat] = in[1][flat] - k1 * kv;
            }
        }
    } else {
        for (int i0 = 0; i0 < n; ++i0) {
            const double k0 = g.k_of_index(i0);
            for (int i1 = 0; i1 < n; ++i1) {
                const double k1 = g.k_of_index(i1);
                for (int i2 = 0; i2 < n; ++i2, ++flat) {
                    const double k2c = g.k_of_index(i2);
                    const double k2 = k0 * k0 + k1 * k1 + k2c * k2c;
                    if (k2 == 0.0) {
                        out[0][flat] = in[0][flat];
                        out[1][flat] = in[1][flat];
                        out[2][flat] = in[2][flat];
                        continue;
                    }
                    const Complex kv =
                        (k0 * in[0][flat] + k1 * in[1][flat] + k2c * in[2][flat]) / k2;
                    out[0][flat] = in[0][flat] - k0 * kv;
                    out[1][flat] = in[1][flat] - k1 * kv;
                    out[2][flat] = in[2][flat] - k2c * kv;
                }
            }
        }
    }
    std::vector<Field> comps;
    comps.reserve(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a)
        comps.push_back(Field::from_spectral(g, std::move(out[static_cast<std::size_t>(a)])));
    return VectorField(std::move(comps));
}

double sobolev_norm(const Field& f, double s) {
    const Grid& g = f.grid();
    auto spec = f.spectrum();
    double sum = 0.0;
    if (s == 0.0) {
        for (const Complex& c : spec) sum += std::norm(c);
    } else {
        for (std::size_t i = 1; i < spec.size(); ++i)
            sum += std::pow(g.k_squared(i), s) * std::norm(spec[i]);
    }
    return std::sqrt(g.volume() * sum);
}

double sobolev_norm(const VectorField& v, double s) {
    double sum2 = 0.0;
    for (int a = 0; a < v.dim(); ++a) {
        const double na = sobolev_norm(v[a], s);
        sum2 += na * na;
    }
    return std::sqrt(sum2);
}

double lp_norm(const Field& f, double p) {
    if (!(p >= 1.0)) throw DomainError("lp_norm: p must be >= 1");
    auto vals = f.values();
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : vals) m = std::max(m, std::abs(v));
        return m;
    }
    double sum = 0.0;
    if (p == 2.0) {
        for (double v : vals) sum += v * v;
    } else if (p == 1.0) {
        for (double v : vals) sum += std::abs(v);
    } else {
        for (double v : vals) sum += std::pow(std::abs(v), p);
    }
    return std::pow(f.grid().cell_volume() * sum, 1.0 / p);
}

double lp_norm(const VectorField& v, double p) {
    // Pointwise Euclidean magnitude, then the scalar L^p norm of it.
    const Grid& g = v.grid();
    std::vector<double> mag(g.size(), 0.0);
    for (int a = 0; a < v.dim(); ++a) {
        auto vals = v[a].values();
        for (std::size_t i = 0; i < mag.size(); ++i) mag[i] += vals[i] * vals[i];
    }
    for (double& m : mag) m = std::sqrt(m);
    return lp_norm(Field::from_physical(g, std::move(mag)), p);
}

double l2_inner(const Field& a, const Field& b) {
    check_same_grid(a.grid(), b.grid(), "l2_inner");
    auto sa = a.spectrum();
    auto sb = b.spectrum();
    double sum = 0.0;
    for (std::size_t i = 0; i < sa.size(); ++i)
        sum += sa[i].real() * sb[i].real() + sa[i].imag() * sb[i].imag();
    return a.grid().volume() * sum;
}

double l2_inner(const VectorField& a, const VectorField& b) {
    double sum = 0.0;
    for (int c = 0; c < a.dim(); ++c) sum += l2_inner(a[c], b[c]);
    return sum;
}

Field add(const Field& a, const Field& b) {
    check_same_grid(a.grid(), b.grid(), "add");
    auto sa = a.spectrum();
    auto sb = b.spectrum();
    std::vector<Complex> out(sa.size());
    for (std::size_t i = 0; i < sa.size(); ++i) out[i] = sa[i] + sb[i];
    return Field::from_spectral(a.grid(), std::move(out));
}

Field sub(const Field& a, const Field& b) {
    check_same_grid(a.grid(), b.grid(), "sub");
    auto sa = a.spectrum();
    auto sb = b.spectrum();
    std::vector<Complex> out(sa.size());
    for (std::size_t i = 0; i < sa.size(); ++i) out[i] = sa[i] - sb[i];
    return Field::from_spectral(a.grid(), std::move(out));
}

Field scale(const Field& f, double c) {
    auto s = f.spectrum();
    std::vector<Complex> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i] * c;
    return Field::from_spectral(f.grid(), std::move(out));
}

VectorField add(const VectorField& a, const VectorField& b) {
    std::vector<Field> comps;
    comps.reserve(static_cast<std::size_t>(a.dim()));
    for (int c = 0; c < a.dim(); ++c) comps.push_back(add(a[c], b[c]));
    return VectorField(std::move(comps));
}

VectorField sub(const VectorField& a, const VectorField& b) {
    std::vector<Field> comps;
    comps.reserve(static_cast<std::size_t>(a.dim()));
    for (int c = 0; c < a.dim(); ++c) comps.push_back(sub(a[c], b[c]));
    return VectorField(std::move(comps));
}

VectorField scale(const VectorField& v, double c) {
    std::vector<Field> comps;
    comps.reserve(static_cast<std::size_t>(v.dim()));
    for (int a = 0; a < v.dim(); ++a) comps.push_back(scale(v[a], c));
    return VectorField(std::move(comps));
}

Field add_constant(const Field& f, double c) {
    Field out = f;
    out.mutable_spectrum()[0] += c;
    return out;
}

Field subtract_mean(const Field& f) {
    Field out = f;
    out.mutable_spectrum()[0] = Complex(0.0, 0.0);
    return out;
}

// ---------------------------------------------------------------------------
// Dealiasing on the doubled grid.
//
// Coarse index i (frequency m) maps onto the 2n grid slot carrying the same
// frequency.  The unpaired coarse Nyquist coefficient is split evenly
// between +n/2 and -n/2, which are both representable on the doubled grid;
// truncation folds them back, so pad followed by truncate is the identity.
// ---------------------------------------------------------------------------

Dealiaser::Dealiaser(Grid grid)
    : coarse_(grid), fine_(grid.dim(), 2 * grid.n(), grid.box_length()) {
    const int n = coarse_.n();
    const int fine_n = fine_.n();
    axis_map_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        AxisTargets t{};
        if (i == n / 2) {
            t.j[0] = n / 2;
            t.w[0] = 0.5;
            t.j[1] = fine_n - n / 2;
            t.w[1] = 0.5;
            t.count = 2;
        } else {
            const int m = i < n / 2 ? i : i - n;
            t.j[0] = m >= 0 ? m : fine_n + m;
            t.w[0] = 1.0;
            t.count = 1;
        }
        axis_map_[static_cast<std::size_t>(i)] = t;
    }
    scratch_a_.resize(fine_.size());
    scratch_b_.resize(fine_.size());
}

std::vector<double> Dealiaser::to_fine(const Field& f) const {
    check_same_grid(f.grid(), coarse_, "Dealiaser::to_fine");
    return to_fine(f.spectrum());
}

std::vector<double> Dealiaser::to_fine(std::span<const Complex> coarse_spectrum) const {
    const int n = coarse_.n();
    const int fn = fine_.n();
    const int dim = coarse_.dim();
    const auto& map = axis_map_;
    std::fill(scratch_a_.begin(), scratch_a_.end(), Complex(0.0, 0.0));
    std::size_t flat = 0;
    if (dim == 2) {
        for (int i0 = 0; i0 < n; ++i0) {
            const AxisTargets& t0 = map[static_cast<std::size_t>(i0)];
            for (int i1 = 0; i1 < n; ++i1, ++flat) {
                const AxisTargets& t1 = map[static_cast<std::size_t>(i1)];
                const Complex c = coarse_spectrum[flat];
                if (c == Complex(0.0, 0.0)) continue;
                for (int a = 0; a < t0.count; ++a)
                    for (int b = 0; b < t1.count; ++b)
                        scratch_a_[static_cast<std::size_t>(t0.j[a]) * fn + t1.j[b]] +=
                            c * (t0.w[a] * t1.w[b]);
            }
        }
    } else {
        for (int i0 = 0; i0 < n; ++i0) {
            const AxisTargets& t0 = map[static_cast<std::size_t>(i0)];
            for (int i1 = 0; i1 < n; ++i1) {
                const AxisTargets& t1 = map[static_cast<std::size_t>(i1)];
                for (int i2 = 0; i2 < n; ++i2, ++flat) {
                    const AxisTargets& t2 = map[static_cast<std::size_t>(i2)];
                    const Complex c = coarse_spectrum[flat];
                    if (c == Complex(0.0, 0.0)) continue;
                    for (int a = 0; a < t0.count; ++a)
                        for (int b = 0; b < t1.count; ++b)
                            for (int d = 0; d < t2.count; ++d)
                                scratch_a_[(static_cast<std::size_t>(t0.j[a]) * fn + t1.j[b]) *
                                               fn +
                                           t2.j[d]] += c * (t0.w[a] * t1.w[b] * t2.w[d]);
                }
            }
        }
    }
    fft::backward(fine_, scratch_a_.data(), scratch_b_.data());
    std::vector<double> out(fine_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = scratch_b_[i].real();
    return out;
}

Field Dealiaser::from_fine(std::span<const double> fine_values) const {
    if (fine_values.size() != fine_.size())
        throw DomainError("Dealiaser::from_fine: sample count does not match doubled grid");
    const int n = coarse_.n();
    const int fn = fine_.n();
    const int dim = coarse_.dim();
    const auto& map = axis_map_;
    for (std::size_t i = 0; i < fine_values.size(); ++i)
        scratch_a_[i] = Complex(fine_values[i], 0.0);
    fft::forward(fine_, scratch_a_.data(), scratch_b_.data());
    const double scale = 1.0 / static_cast<double>(fine_.size());

    // The unpaired Nyquist planes are dropped rather than folded: every
    // other operator (derivatives, projection, pressure solve) treats the
    // resolved band as |m| <= n/2 - 1, and keeping sampled Nyquist content
    // would make the projection and the pressure gradient disagree there.
    std::vector<Complex> out(coarse_.size());
    std::size_t flat = 0;
    if (dim == 2) {
        for (int i0 = 0; i0 < n; ++i0) {
            const AxisTargets& t0 = map[static_cast<std::size_t>(i0)];
            for (int i1 = 0; i1 < n; ++i1, ++flat) {
                const AxisTargets& t1 = map[static_cast<std::size_t>(i1)];
                if (t0.count == 2 || t1.count == 2) {
                    out[flat] = Complex(0.0, 0.0);
                    continue;
                }
                out[flat] = scratch_b_[static_cast<std::size_t>(t0.j[0]) * fn + t1.j[0]] * scale;
            }
        }
    } else {
        for (int i0 = 0; i0 < n; ++i0) {
            const AxisTargets& t0 = map[static_cast<std::size_t>(i0)];
            for (int i1 = 0; i1 < n; ++i1) {
                const AxisTargets& t1 = map[static_cast<std::size_t>(i1)];
                for (int i2 = 0; i2 < n; ++i2, ++flat) {
                    const AxisTargets& t2 = map[static_cast<std::size_t>(i2)];
                    if (t0.count == 2 || t1.count == 2 || t2.count == 2) {
                        out[flat] = Complex(0.0, 0.0);
                        continue;
                    }
                    out[flat] =
                        scratch_b_[(static_cast<std::size_t>(t0.j[0]) * fn + t1.j[0]) * fn +
                                   t2.j[0]] *
                        scale;
                }
            }
        }
    }
    return Field::from_spectral(coarse_, std::move(out));
}

Field dealiased_product(const std::vector<const Field*>& factors) {
    if (factors.size() < 2 || factors.size() > 3)
        throw DomainError("dealiased_product: need 2 or 3 factors");
    const Grid& g = factors[0]->grid();
    for (const Field* f : factors) check_same_grid(f->grid(), g, "dealiased_product");
    Dealiaser dealiaser(g);
    std::vector<double> prod = dealiaser.to_fine(*factors[0]);
    for (std::size_t fi = 1; fi < factors.size(); ++fi) {
        std::vector<double> next = dealiaser.to_fine(*factors[fi]);
        for (std::size_t i = 0; i < prod.size(); ++i) prod[i] *= next[i];
    }
    return dealiaser.from_fine(prod);
}

Field dealiased_product(const Field& a, const Field& b) {
    return dealiased_product(std::vector<const Field*>{&a, &b});
}

Field dealiased_product(const Field& a, const Field& b, const Field& c) {
    return dealiased_product(std::vector<const Field*>{&a, &b, &c});
}

}  // namespace nsch

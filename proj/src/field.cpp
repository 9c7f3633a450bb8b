#include "nsch/field.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "nsch/errors.hpp"

namespace nsch {

namespace fft {
namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

// Plans are created once per (dim, n) on scratch arrays and executed on
// caller arrays via the new-array interface.  FFTW_UNALIGNED keeps the
// plans valid for any double-aligned buffer, e.g. std::vector storage.
PlanPair& plans_for(const Grid& grid) {
    static std::map<std::pair<int, int>, PlanPair> cache;
    static std::mutex mtx;
    std::lock_guard lock(mtx);
    const auto key = std::make_pair(grid.dim(), grid.n());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const std::size_t total = grid.size();
    fftw_complex* a = fftw_alloc_complex(total);
    fftw_complex* b = fftw_alloc_complex(total);
    PlanPair p;
    const int n = grid.n();
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    if (grid.dim() == 2) {
        p.fwd = fftw_plan_dft_2d(n, n, a, b, FFTW_FORWARD, flags);
        p.bwd = fftw_plan_dft_2d(n, n, a, b, FFTW_BACKWARD, flags);
    } else {
        p.fwd = fftw_plan_dft_3d(n, n, n, a, b, FFTW_FORWARD, flags);
        p.bwd = fftw_plan_dft_3d(n, n, n, a, b, FFTW_BACKWARD, flags);
    }
    fftw_free(a);
    fftw_free(b);
    return cache.emplace(key, p).first->second;
}

}  // namespace

void forward(const Grid& grid, const Complex* in, Complex* out) {
    PlanPair& p = plans_for(grid);
    fftw_execute_dft(p.fwd, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

void backward(const Grid& grid, const Complex* in, Complex* out) {
    PlanPair& p = plans_for(grid);
    fftw_execute_dft(p.bwd, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

}  // namespace fft

Field::Field(Grid grid) : grid_(std::move(grid)) {
    values_.assign(grid_.size(), 0.0);
    phys_ok_ = true;
}

Field Field::from_physical(Grid grid, std::vector<double> values) {
    if (values.size() != grid.size())
        throw DomainError("from_physical: sample count does not match grid");
    Field f;
    f.grid_ = std::move(grid);
    f.values_ = std::move(values);
    f.phys_ok_ = true;
    return f;
}

Field Field::from_spectral(Grid grid, std::vector<Complex> coeffs) {
    if (coeffs.size() != grid.size())
        throw DomainError("from_spectral: coefficient count does not match grid");
    Field f;
    f.grid_ = std::move(grid);
    f.spectrum_ = std::move(coeffs);
    f.spec_ok_ = true;
    return f;
}

void Field::ensure_spectral() const {
    if (spec_ok_) return;
    const std::size_t total = grid_.size();
    std::vector<Complex> in(total);
    for (std::size_t i = 0; i < total; ++i) in[i] = Complex(values_[i], 0.0);
    spectrum_.resize(total);
    fft::forward(grid_, in.data(), spectrum_.data());
    const double scale = 1.0 / static_cast<double>(total);
    for (auto& c : spectrum_) c *= scale;
    spec_ok_ = true;
}

void Field::ensure_physical() const {
    if (phys_ok_) return;
    const std::size_t total = grid_.size();
    std::vector<Complex> out(total);
    fft::backward(grid_, spectrum_.data(), out.data());
    values_.resize(total);
    for (std::size_t i = 0; i < total; ++i) values_[i] = out[i].real();
    phys_ok_ = true;
}

std::span<const double> Field::values() const {
    ensure_physical();
    return values_;
}

std::span<const Complex> Field::spectrum() const {
    ensure_spectral();
    return spectrum_;
}

std::vector<double>& Field::mutable_values() {
    ensure_physical();
    spec_ok_ = false;
    return values_;
}

std::vector<Complex>& Field::mutable_spectrum() {
    ensure_spectral();
    phys_ok_ = false;
    return spectrum_;
}

double Field::mean() const {
    ensure_spectral();
    return spectrum_[0].real();
}

bool Field::is_finite() const {
    if (phys_ok_) {
        for (double v : values_)
            if (!std::isfinite(v)) return false;
        return true;
    }
    for (const Complex& c : spectrum_)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

VectorField::VectorField(Grid grid) {
    comps_.reserve(static_cast<std::size_t>(grid.dim()));
    for (int c = 0; c < grid.dim(); ++c) comps_.emplace_back(grid);
}

VectorField::VectorField(std::vector<Field> components) : comps_(std::move(components)) {
    if (comps_.empty()) throw DomainError("VectorField needs at least one component");
    for (const Field& f : comps_)
        if (!(f.grid() == comps_.front().grid()))
            throw MixedGridError("VectorField components live on different grids");
    if (static_cast<int>(comps_.size()) != comps_.front().grid().dim())
        throw DomainError("VectorField component count must equal grid dim");
}

bool VectorField::is_finite() const {
    for (const Field& f : comps_)
        if (!f.is_finite()) return false;
    return true;
}

}  // namespace nsch

// field.hpp: scalar and vector fields with paired physical/spectral
// representations on a periodic grid.

#ifndef NSCH_FIELD_HPP
#define NSCH_FIELD_HPP

#include <complex>
#include <span>
#include <vector>

#include "nsch/grid.hpp"

namespace nsch {

using Complex = std::complex<double>;

// Real scalar field.  Both representations are kept lazily: whichever side
// was written last is authoritative and the other is produced on demand.
// Spectral coefficients follow f_hat(k) = (1/N) sum_j f(x_j) exp(-i k.x_j),
// so Parseval reads  integral |f|^2 dx = L^dim * sum_k |f_hat(k)|^2.
class Field {
  public:
    Field() = default;
    explicit Field(Grid grid);  // zero field

    static Field from_physical(Grid grid, std::vector<double> values);
    static Field from_spectral(Grid grid, std::vector<Complex> coeffs);

    const Grid& grid() const { return grid_; }

    std::span<const double> values() const;
    std::span<const Complex> spectrum() const;

    // Mutable access; invalidates the other representation.
    std::vector<double>& mutable_values();
    std::vector<Complex>& mutable_spectrum();

    double mean() const;  // zero-mode real part
    bool is_finite() const;

  private:
    void ensure_physical() const;
    void ensure_spectral() const;

    Grid grid_;
    mutable std::vector<double> values_;
    mutable std::vector<Complex> spectrum_;
    mutable bool phys_ok_ = false;
    mutable bool spec_ok_ = false;
};

// dim field components on one shared grid.
class VectorField {
  public:
    VectorField() = default;
    explicit VectorField(Grid grid);
    explicit VectorField(std::vector<Field> components);

    const Grid& grid() const { return comps_.front().grid(); }
    int dim() const { return static_cast<int>(comps_.size()); }

    Field& operator[](int c) { return comps_[static_cast<std::size_t>(c)]; }
    const Field& operator[](int c) const { return comps_[static_cast<std::size_t>(c)]; }

    bool is_finite() const;

  private:
    std::vector<Field> comps_;
};

// Raw (unnormalized-amplitude) transforms used by Field and by the
// dealiasing machinery.  out = DFT(in) with FFTW sign conventions; the
// caller handles 1/N scaling.  Plans are cached per (dim, n) and created
// with FFTW_ESTIMATE so repeated runs are bitwise reproducible.
namespace fft {
void forward(const Grid& grid, const Complex* in, Complex* out);
void backward(const Grid& grid, const Complex* in, Complex* out);
}  // namespace fft

}  // namespace nsch

#endif

// spectral.hpp: Fourier-side operators on periodic fields: differential and
// fractional multipliers, Leray projection, norms, and exactly dealiased
// pointwise products.

#ifndef NSCH_SPECTRAL_HPP
#define NSCH_SPECTRAL_HPP

#include <initializer_list>
#include <vector>

#include "nsch/field.hpp"

namespace nsch {

// d/dx_axis via the ik multiplier.  The unpaired Nyquist frequency is
// zeroed (odd symbol convention for real fields).
Field derivative(const Field& f, int axis);
VectorField gradient(const Field& f);
Field divergence(const VectorField& v);
Field laplacian(const Field& f);
VectorField laplacian(const VectorField& v);
Field bilaplacian(const Field& f);

// (-Laplacian)^delta = Lambda^{2 delta}: multiplies coefficients by
// |k|^{2 delta}.  Zero mode: killed for delta > 0, kept for delta = 0.
// For delta < 0 the mean must already be negligible
// (|f_hat(0)| * L^{dim/2} <= 1e-10 * ||f||_L2), else
// NegativePowerOnNonzeroMean; the residual zero mode is dropped.
Field fractional_laplacian(const Field& f, double delta);
VectorField fractional_laplacian(const VectorField& v, double delta);

// Projection onto divergence-free fields: v_hat -> v_hat - k (k.v_hat)/|k|^2
// per mode, zero mode passed through.
VectorField leray_project(const VectorField& v);

// Homogeneous Sobolev norm.  s = 0 is the L2 norm (zero mode included);
// for s != 0 the zero mode is excluded, since |k|^s vanishes or blows up
// there on the torus.
double sobolev_norm(const Field& f, double s);
double sobolev_norm(const VectorField& v, double s);  // sqrt of summed squares

// Rectangle-rule L^p norm over the box; p = infinity returns max |f|.
double lp_norm(const Field& f, double p);
double lp_norm(const VectorField& v, double p);

// L2 inner product, evaluated as a spectral sum (Parseval).
double l2_inner(const Field& a, const Field& b);
double l2_inner(const VectorField& a, const VectorField& b);

// Field arithmetic (spectral, same grid).
Field add(const Field& a, const Field& b);
Field sub(const Field& a, const Field& b);
Field scale(const Field& f, double c);
VectorField add(const VectorField& a, const VectorField& b);
VectorField sub(const VectorField& a, const VectorField& b);
VectorField scale(const VectorField& v, double c);
Field add_constant(const Field& f, double c);
Field subtract_mean(const Field& f);

// Workspace for products on the doubled grid.  Padding by a factor of 2
// removes aliasing from products of up to three factors.  A single
// instance reuses its scratch buffers; not safe for concurrent use.
class Dealiaser {
  public:
    explicit Dealiaser(Grid grid);

    const Grid& fine_grid() const { return fine_; }

    // Samples of the field's trigonometric interpolant on the doubled grid.
    std::vector<double> to_fine(const Field& f) const;
    std::vector<double> to_fine(std::span<const Complex> coarse_spectrum) const;

    // Forward transform of fine-grid samples, truncated back to the coarse
    // band.  The result is returned in spectral form.
    Field from_fine(std::span<const double> fine_values) const;

  private:
    struct AxisTargets {
        int j[2];
        double w[2];
        int count;
    };

    Grid coarse_;
    Grid fine_;
    std::vector<AxisTargets> axis_map_;
    mutable std::vector<Complex> scratch_a_;
    mutable std::vector<Complex> scratch_b_;
};

// Pointwise product of 2 or 3 factors, computed on the doubled grid and
// truncated back (alias-free for cubic terms).
Field dealiased_product(const std::vector<const Field*>& factors);
Field dealiased_product(const Field& a, const Field& b);
Field dealiased_product(const Field& a, const Field& b, const Field& c);

}  // namespace nsch

#endif

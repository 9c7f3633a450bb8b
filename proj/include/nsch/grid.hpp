// grid.hpp: periodic isotropic box discretization and wavenumber tables.

#ifndef NSCH_GRID_HPP
#define NSCH_GRID_HPP

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace nsch {

// Uniform periodic grid on [0, L)^dim with n points per axis.  Physical
// samples sit at x_j = j*L/n; the discrete frequencies per axis are
// m = 0, 1, ..., n/2-1, -n/2, ..., -1 in transform index order, scaled by
// 2*pi/L.  Copies are cheap (shared immutable tables).
class Grid {
  public:
    Grid() = default;
    Grid(int dim, int n, double box_length);

    int dim() const { return data_->dim; }
    int n() const { return data_->n; }
    double box_length() const { return data_->box_length; }

    std::size_t size() const { return data_->size; }        // n^dim
    double spacing() const { return data_->spacing; }       // L/n
    double cell_volume() const { return data_->cell_vol; }  // (L/n)^dim
    double volume() const { return data_->volume; }         // L^dim

    // Integer frequency of transform index i (i in [0, n)).
    int freq_of_index(int i) const { return i < data_->n / 2 ? i : i - data_->n; }

    // Scaled wavenumber of transform index i: (2*pi/L) * freq.
    double k_of_index(int i) const { return data_->k1d[static_cast<std::size_t>(i)]; }

    // |k|^2 at a flat row-major spectral index.
    double k_squared(std::size_t flat) const { return data_->k2[flat]; }
    std::span<const double> k_squared_table() const { return data_->k2; }

    // Decode a flat row-major index into per-axis indices (dim entries used).
    std::array<int, 3> decode(std::size_t flat) const {
        std::array<int, 3> idx{0, 0, 0};
        const int n = data_->n;
        for (int a = data_->dim - 1; a >= 0; --a) {
            idx[static_cast<std::size_t>(a)] = static_cast<int>(flat % n);
            flat /= static_cast<std::size_t>(n);
        }
        return idx;
    }

    std::size_t encode(std::span<const int> idx) const {
        std::size_t flat = 0;
        for (int a = 0; a < data_->dim; ++a)
            flat = flat * static_cast<std::size_t>(data_->n) +
                   static_cast<std::size_t>(idx[static_cast<std::size_t>(a)]);
        return flat;
    }

    // Flat index of the mode with all frequencies negated (conjugate partner).
    std::size_t conjugate_index(std::size_t flat) const;

    // True if any axis index equals n/2 (the unpaired Nyquist frequency).
    bool is_nyquist(std::size_t flat) const;

    // Physical coordinate of sample index i along one axis.
    double x_of_index(int i) const { return data_->spacing * i; }

    bool operator==(const Grid& other) const {
        return data_->dim == other.data_->dim && data_->n == other.data_->n &&
               data_->box_length == other.data_->box_length;
    }

  private:
    struct Data {
        int dim = 0;
        int n = 0;
        double box_length = 0;
        double spacing = 0;
        double cell_vol = 0;
        double volume = 0;
        std::size_t size = 0;
        std::vector<double> k1d;  // scaled wavenumber per transform index
        std::vector<double> k2;   // |k|^2 per flat index
    };
    std::shared_ptr<const Data> data_;
};

Grid make_grid(int dim, int n, double box_length);

}  // namespace nsch

#endif

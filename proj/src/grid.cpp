#include "nsch/grid.hpp"

#include <cmath>

#include "nsch/errors.hpp"

namespace nsch {

Grid::Grid(int dim, int n, double box_length) {
    if (dim != 2 && dim != 3)
        throw GridError("grid dim must be 2 or 3, got " + std::to_string(dim));
    if (n < 8)
        throw GridError("grid n must be >= 8, got " + std::to_string(n));
    if (n % 2 != 0)
        throw GridError("grid n must be even, got " + std::to_string(n));
    if (!(box_length > 0.0))
        throw GridError("box_length must be positive, got " + std::to_string(box_length));

    auto d = std::make_shared<Data>();
    d->dim = dim;
    d->n = n;
    d->box_length = box_length;
    d->spacing = box_length / n;
    d->volume = std::pow(box_length, dim);
    d->cell_vol = std::pow(d->spacing, dim);
    d->size = 1;
    for (int a = 0; a < dim; ++a) d->size *= static_cast<std::size_t>(n);

    const double k0 = 2.0 * M_PI / box_length;
    d->k1d.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int m = i < n / 2 ? i : i - n;
        d->k1d[static_cast<std::size_t>(i)] = k0 * m;
    }

    d->k2.resize(d->size);
    if (dim == 2) {
        std::size_t flat = 0;
        for (int i0 = 0; i0 < n; ++i0) {
            const double a = d->k1d[static_cast<std::size_t>(i0)];
            for (int i1 = 0; i1 < n; ++i1, ++flat) {
                const double b = d->k1d[static_cast<std::size_t>(i1)];
                d->k2[flat] = a * a + b * b;
            }
        }
    } else {
        std::size_t flat = 0;
        for (int i0 = 0; i0 < n; ++i0) {
            const double a = d->k1d[static_cast<std::size_t>(i0)];
            for (int i1 = 0; i1 < n; ++i1) {
                const double b = d->k1d[static_cast<std::size_t>(i1)];
                for (int i2 = 0; i2 < n; ++i2, ++flat) {
                    const double c = d->k1d[static_cast<std::size_t>(i2)];
                    d->k2[flat] = a * a + b * b + c * c;
                }
            }
        }
    }
    data_ = std::move(d);
}

std::size_t Grid::conjugate_index(std::size_t flat) const {
    const int n = data_->n;
    auto idx = decode(flat);
    std::array<int, 3> neg{0, 0, 0};
    for (int a = 0; a < data_->dim; ++a) {
        const int i = idx[static_cast<std::size_t>(a)];
        neg[static_cast<std::size_t>(a)] = i == 0 ? 0 : n - i;
    }
    return encode(std::span<const int>(neg.data(), static_cast<std::size_t>(data_->dim)));
}

bool Grid::is_nyquist(std::size_t flat) const {
    const int half = data_->n / 2;
    auto idx = decode(flat);
    for (int a = 0; a < data_->dim; ++a)
        if (idx[static_cast<std::size_t>(a)] == half) return true;
    return false;
}

Grid make_grid(int dim, int n, double box_length) { return Grid(dim, n, box_length); }

}  // namespace nsch

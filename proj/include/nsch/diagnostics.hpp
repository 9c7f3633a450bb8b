// diagnostics.hpp: trajectory functionals: energies, the critical-norm
// pair (X, Y), negative-order Sobolev energies, Sobolev norm series, and
// algebraic decay-rate fitting.

#ifndef NSCH_DIAGNOSTICS_HPP
#define NSCH_DIAGNOSTICS_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nsch/model.hpp"

namespace nsch {

struct RecordOptions {
    std::vector<double> neg_s{0.0, 0.25, 0.5};  // orders for the negative-norm energies
    int max_order_u = 3;                        // ||Lambda^k u||, k = 0..max_order_u
    int max_order_phi = 4;                      // ||Lambda^k phi||, k = 0..max_order_phi
};

// One snapshot of every tracked functional.  phi enters the Sobolev series
// and the negative norms mean-removed (the mean is invariant and would
// otherwise mask decay); that convention is flagged in emitted metadata.
struct DiagnosticsRecord {
    double time = 0.0;
    double kinetic = 0.0;      // ||u||^2 / 2
    double free_energy = 0.0;  // int |grad phi|^2/2 + F(phi + omega0)
    double dissipation = 0.0;  // ||grad u||^2 + ||grad mu||^2
    double X = 0.0;            // critical energy
    double Y = 0.0;            // its dissipation counterpart
    std::vector<std::pair<double, double>> neg_norms;  // (s, E_{-s})
    std::vector<double> u_norms;                       // ||Lambda^k u||
    std::vector<double> phi_norms;                     // ||Lambda^k (phi - mean)||
};

DiagnosticsRecord compute_record(const State& state, const RecordOptions& opts = {});

// Kinetic plus free energy; the double-well integral is evaluated on the
// dealiasing grid, where it is exact for band-limited phi.
double total_energy(const State& state);

// |E(t_b) - E(t_a) + int_ta^tb dissipation dt| (trapezoid) over equispaced
// records, normalized by max(E(t_a), double-min).  Needs >= 3 records.
double dissipation_residual(std::span<const DiagnosticsRecord> records);

// X = ||L^1/2 u||^2 + ||L^1/2 phi||^2 + ||L^3/2 phi||^2
// Y = ||L^3/2 u||^2 + ||L^3/2 phi||^2 + 3 ||L^5/2 phi||^2
std::pair<double, double> critical_pair(const State& state);

// E_{-s} = ||L^-s u||^2 + ||L^-s phi||^2 + ||L^-s grad phi||^2 on
// mean-removed fields; s restricted to [0, 1/2] in paper mode.
double negative_norm(const State& state, double s);

struct DecayFit {
    double sigma_hat = 0.0;   // fitted exponent of (1+t)^{-sigma}
    double t0 = 0.0;          // window actually used
    double t1 = 0.0;
    double residual = 0.0;    // RMS log misfit
    double sigma_paper = 0.0; // target rate
    std::size_t points = 0;
};

// Least-squares slope of log(v) against log(1+t) over [t0, t1].
// Rejects windows with < 10 points or nonpositive values.
DecayFit fit_decay(std::span<const double> times, std::span<const double> values, double t0,
                   double t1, double sigma_paper = 0.0);

// sigma_k = (3/2)(1/p - 1/2) + k/2; p in [3/2, 2] in paper mode.
double sigma_target(int k, double p, bool paper_mode = true);

// Time before which the periodic box tracks whole-space decay: the heat
// kernel of the fastest dissipating second-order piece (diffusivity 2 from
// the stabilized double well) reaches the half-box at relative level
// eps_wrap = 1e-4.
double validity_horizon(const Grid& grid);

// CSV emission: fixed column order time, kinetic, free_energy, dissipation,
// X, Y, neg norms (ascending s), u norms, phi norms.  Values are shortest
// round-trip decimal, so identical runs emit identical bytes.
std::string csv_header(const RecordOptions& opts);
std::string csv_row(const DiagnosticsRecord& rec, const RecordOptions& opts);

std::string format_double(double v);  // shortest round-trip decimal

}  // namespace nsch

#endif

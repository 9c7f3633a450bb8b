#include "nsch/diagnostics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "nsch/errors.hpp"

namespace nsch {

double total_energy(const State& state) {
    const double kinetic = 0.5 * std::pow(sobolev_norm(state.u, 0.0), 2);
    const double grad2 = std::pow(sobolev_norm(state.phi, 1.0), 2);
    // int F(phi+omega0) dx on the doubled grid (exact for quartics of
    // band-limited phi)
    Dealiaser dealiaser(state.phi.grid());
    std::vector<double> fine = dealiaser.to_fine(state.phi);
    double well = 0.0;
    for (double v : fine) well += double_well(v + state.params.omega0);
    well *= dealiaser.fine_grid().cell_volume() * state.params.zeta;
    return kinetic + 0.5 * state.params.eps * grad2 + well;
}

DiagnosticsRecord compute_record(const State& state, const RecordOptions& opts) {
    DiagnosticsRecord rec;
    rec.time = state.time;
    rec.kinetic = 0.5 * std::pow(sobolev_norm(state.u, 0.0), 2);
    rec.free_energy = total_energy(state) - rec.kinetic;

    Field mu = chemical_potential(state.phi, state.params);
    rec.dissipation =
        std::pow(sobolev_norm(state.u, 1.0), 2) + std::pow(sobolev_norm(mu, 1.0), 2);

    auto xy = critical_pair(state);
    rec.X = xy.first;
    rec.Y = xy.second;

    rec.neg_norms.reserve(opts.neg_s.size());
    for (double s : opts.neg_s) rec.neg_norms.emplace_back(s, negative_norm(state, s));

    rec.u_norms.reserve(static_cast<std::size_t>(opts.max_order_u + 1));
    for (int k = 0; k <= opts.max_order_u; ++k)
        rec.u_norms.push_back(sobolev_norm(state.u, static_cast<double>(k)));

    Field phi0 = subtract_mean(state.phi);
    rec.phi_norms.reserve(static_cast<std::size_t>(opts.max_order_phi + 1));
    for (int k = 0; k <= opts.max_order_phi; ++k)
        rec.phi_norms.push_back(sobolev_norm(phi0, static_cast<double>(k)));
    return rec;
}

double dissipation_residual(std::span<const DiagnosticsRecord> records) {
    if (records.size() < 3)
        throw DomainError("dissipation_residual needs at least 3 records");
    const double dt0 = records[1].time - records[0].time;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const double dt = records[i].time - records[i - 1].time;
        if (!(dt > 0.0) || std::abs(dt - dt0) > 1e-9 * std::max(1.0, std::abs(dt0)))
            throw DomainError("dissipation_residual needs equispaced records");
    }
    double integral = 0.0;
    for (std::size_t i = 1; i < records.size(); ++i)
        integral += 0.5 * dt0 * (records[i - 1].dissipation + records[i].dissipation);
    const double e_a = records.front().kinetic + records.front().free_energy;
    const double e_b = records.back().kinetic + records.back().free_energy;
    const double residual = std::abs(e_b - e_a + integral);
    return residual / std::max(e_a, std::numeric_limits<double>::min());
}

std::pair<double, double> critical_pair(const State& state) {
    const double u_half = sobolev_norm(state.u, 0.5);
    const double phi_half = sobolev_norm(state.phi, 0.5);
    const double phi_3half = sobolev_norm(state.phi, 1.5);
    const double x = u_half * u_half + phi_half * phi_half + phi_3half * phi_3half;

    const double u_3half = sobolev_norm(state.u, 1.5);
    const double phi_5half = sobolev_norm(state.phi, 2.5);
    const double y = u_3half * u_3half + phi_3half * phi_3half + 3.0 * phi_5half * phi_5half;
    return {x, y};
}

double negative_norm(const State& state, double s) {
    if (state.params.paper_mode && (s < 0.0 || s > 0.5))
        throw DomainError("negative_norm order s must lie in [0, 1/2] in paper mode");
    double sum = 0.0;
    for (int c = 0; c < state.u.dim(); ++c) {
        const double n = sobolev_norm(subtract_mean(state.u[c]), -s);
        sum += n * n;
    }
    Field phi0 = subtract_mean(state.phi);
    const double np = sobolev_norm(phi0, -s);
    sum += np * np;
    VectorField grad_phi = gradient(phi0);
    const double ng = sobolev_norm(grad_phi, -s);
    return sum + ng * ng;
}

DecayFit fit_decay(std::span<const double> times, std::span<const double> values, double t0,
                   double t1, double sigma_paper) {
    if (times.size() != values.size())
        throw DomainError("fit_decay: times and values differ in length");
    if (!(t0 < t1)) throw DomainError("fit_decay: window must satisfy t0 < t1");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t0 || times[i] > t1) continue;
        if (!(values[i] > 0.0))
            throw DomainError("fit_decay: nonpositive value inside the fit window");
        xs.push_back(std::log1p(times[i]));
        ys.push_back(std::log(values[i]));
    }
    if (xs.size() < 10)
        throw DomainError("fit_decay: need at least 10 samples in the window, got " +
                          std::to_string(xs.size()));
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (!(sxx > 0.0)) throw DomainError("fit_decay: degenerate window (zero time spread)");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (intercept + slope * xs[i]);
        rss += r * r;
    }
    DecayFit fit;
    fit.sigma_hat = -slope;
    fit.t0 = t0;
    fit.t1 = t1;
    fit.residual = std::sqrt(rss / n);
    fit.sigma_paper = sigma_paper;
    fit.points = xs.size();
    return fit;
}

double sigma_target(int k, double p, bool paper_mode) {
    if (k < 0) throw DomainError("sigma_target: k must be a nonnegative integer");
    if (paper_mode) {
        if (!(p >= 1.5 && p <= 2.0))
            throw DomainError("sigma_target: p must lie in [3/2, 2] in paper mode");
    } else if (!(p > 1.0 && p <= 2.0)) {
        throw DomainError("sigma_target: p must lie in (1, 2]");
    }
    return 1.5 * (1.0 / p - 0.5) + 0.5 * static_cast<double>(k);
}

double validity_horizon(const Grid& grid) {
    constexpr double eps_wrap = 1e-4;
    constexpr double nu_max = 2.0;  // stabilized double-well diffusivity
    const double half = 0.5 * grid.box_length();
    return half * half / (4.0 * nu_max * std::log(1.0 / eps_wrap));
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string csv_header(const RecordOptions& opts) {
    std::string h = "time,kinetic,free_energy,dissipation,X,Y";
    for (double s : opts.neg_s) h += ",neg_s" + format_double(s);
    for (int k = 0; k <= opts.max_order_u; ++k) h += ",u_H" + std::to_string(k);
    for (int k = 0; k <= opts.max_order_phi; ++k) h += ",phi_H" + std::to_string(k);
    return h;
}

std::string csv_row(const DiagnosticsRecord& rec, const RecordOptions& opts) {
    std::string row = format_double(rec.time);
    row += "," + format_double(rec.kinetic);
    row += "," + format_double(rec.free_energy);
    row += "," + format_double(rec.dissipation);
    row += "," + format_double(rec.X);
    row += "," + format_double(rec.Y);
    if (rec.neg_norms.size() != opts.neg_s.size() ||
        rec.u_norms.size() != static_cast<std::size_t>(opts.max_order_u + 1) ||
        rec.phi_norms.size() != static_cast<std::size_t>(opts.max_order_phi + 1))
        throw DomainError("csv_row: record does not match the column layout");
    for (const auto& [s, v] : rec.neg_norms) row += "," + format_double(v);
    for (double v : rec.u_norms) row += "," + format_double(v);
    for (double v : rec.phi_norms) row += "," + format_double(v);
    return row;
}

}  // namespace nsch

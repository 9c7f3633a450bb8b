#include "nsch/inequality.hpp"

#include <cmath>

#include "nsch/errors.hpp"
#include "nsch/spectral.hpp"

namespace nsch {

double check_embedding(const Field& f, double s) {
    if (!(s >= 0.0 && s < 1.5))
        throw DomainError("check_embedding: s must lie in [0, 3/2)");
    if (f.grid().dim() != 3)
        throw DomainError("check_embedding: stated for dimension 3");
    const double p = 6.0 / (3.0 - 2.0 * s);
    const double lhs = lp_norm(f, p);
    const double rhs = sobolev_norm(f, s);
    return lhs / rhs;
}

double check_gn(const Field& f, double alpha, double m, double l, double p, double q,
                double r) {
    if (!(m >= 0.0 && alpha >= 0.0 && m <= l && alpha <= l))
        throw DomainError("check_gn: need 0 <= m, alpha <= l");
    const double lhs_scale = alpha / 3.0 - 1.0 / p;
    const double a0 = m / 3.0 - 1.0 / q;
    const double a1 = l / 3.0 - 1.0 / r;
    const double den = a1 - a0;
    double theta;
    if (std::abs(den) < 1e-12) {
        const double residual = lhs_scale - a0;
        if (std::abs(residual) > 1e-12)
            throw ExponentError("check_gn: scaling relation has no solution", residual);
        theta = 0.0;  // degenerate family: both sides share one scaling
    } else {
        theta = (lhs_scale - a0) / den;
        if (theta < -1e-12 || theta > 1.0 + 1e-12)
            throw ExponentError("check_gn: theta outside [0,1]", theta);
        theta = std::min(1.0, std::max(0.0, theta));
    }
    const double lhs = lp_norm(fractional_laplacian(f, alpha / 2.0), p);
    const double nm = lp_norm(fractional_laplacian(f, m / 2.0), q);
    const double nl = lp_norm(fractional_laplacian(f, l / 2.0), r);
    return lhs / (std::pow(nm, 1.0 - theta) * std::pow(nl, theta));
}

KatoPonceRatios check_kato_ponce(const Field& f, const Field& g, double s,
                                 const KatoPonceExponents& e) {
    if (!(s > 0.0)) throw DomainError("check_kato_ponce: s must be positive");
    const double r1 = 1.0 / e.p - (1.0 / e.p1 + 1.0 / e.p2);
    const double r2 = 1.0 / e.p - (1.0 / e.q1 + 1.0 / e.q2);
    if (std::abs(r1) > 1e-12)
        throw ExponentError("check_kato_ponce: 1/p != 1/p1 + 1/p2", r1);
    if (std::abs(r2) > 1e-12)
        throw ExponentError("check_kato_ponce: 1/p != 1/q1 + 1/q2", r2);

    Field fg = dealiased_product(f, g);
    Field ls_fg = fractional_laplacian(fg, s / 2.0);
    Field ls_g = fractional_laplacian(subtract_mean(g), s / 2.0);
    Field ls_f = fractional_laplacian(subtract_mean(f), s / 2.0);

    KatoPonceRatios out;
    {
        const double lhs = lp_norm(ls_fg, e.p);
        const double rhs = lp_norm(f, e.p1) * lp_norm(ls_g, e.p2) +
                           lp_norm(ls_f, e.q1) * lp_norm(g, e.q2);
        out.product_rule = rhs > 0.0 ? lhs / rhs : 0.0;
    }
    {
        Field commutator = sub(ls_fg, dealiased_product(f, ls_g));
        const double lhs = lp_norm(commutator, e.p);
        Field lsm1_g = fractional_laplacian(subtract_mean(g), (s - 1.0) / 2.0);
        double grad_f = 0.0;
        {
            VectorField gf = gradient(f);
            grad_f = lp_norm(gf, e.p1);
        }
        const double rhs =
            grad_f * lp_norm(lsm1_g, e.p2) + lp_norm(ls_f, e.q1) * lp_norm(g, e.q2);
        out.commutator = rhs > 0.0 ? lhs / rhs : 0.0;
    }
    return out;
}

double check_hls(const Field& f, double s, double p) {
    if (!(s >= 0.0 && s < 1.5))
        throw DomainError("check_hls: s must lie in [0, 3/2)");
    const double residual = 0.5 + s / 3.0 - 1.0 / p;
    if (std::abs(residual) > 1e-12)
        throw ExponentError("check_hls: 1/2 + s/3 != 1/p", residual);
    const double lhs = sobolev_norm(subtract_mean(f), -s);
    const double rhs = lp_norm(f, p);
    return lhs / rhs;
}

double check_interpolation(const Field& f, double l, double s) {
    if (!(l >= 0.0 && s >= 0.0))
        throw DomainError("check_interpolation: need l >= 0 and s >= 0");
    const double theta = 1.0 / (l + 1.0 + s);
    Field f0 = subtract_mean(f);
    const double nl = sobolev_norm(f0, l);
    const double nl1 = sobolev_norm(f0, l + 1.0);
    const double nms = sobolev_norm(f0, -s);
    const double rhs = std::pow(nl1, 1.0 - theta) * std::pow(nms, theta);
    return rhs > 0.0 ? nl / rhs : 0.0;
}

}  // namespace nsch

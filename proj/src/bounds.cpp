#include "medax/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace medax {

double federer_reach_bound(double t, double s, double lip_f, double lip_f_inv, double lip_df) {
    if (!(t > 0.0)) fail(errc::out_of_regime, "federer_reach_bound requires t > 0");
    if (!(s > 0.0)) fail(errc::out_of_regime, "federer_reach_bound requires s > 0");
    if (lip_f < 0.0 || lip_f_inv < 0.0 || lip_df < 0.0)
        fail(errc::bad_input, "Lipschitz constants must be nonnegative");
    if (lip_f * lip_f_inv < 1.0 - 1e-12)
        fail(errc::out_of_regime, "Lip(F) * Lip(F^-1) must be >= 1");
    const double first = s / lip_f_inv;
    const double second = 1.0 / ((lip_f / t + lip_df) * lip_f_inv * lip_f_inv);
    return std::min(first, second);
}

std::pair<double, double> rho_prime_interval(double rho, double L_F, double L_DF) {
    if (!(rho > 0.0)) fail(errc::bad_input, "rho_prime_interval requires rho > 0");
    if (L_F < 1.0 - 1e-12) fail(errc::out_of_regime, "L_F must be >= 1 (sphere invariance)");
    if (L_DF < 0.0) fail(errc::bad_input, "L_DF must be nonnegative");
    const double L2 = L_F * L_F;
    const double L3 = L2 * L_F;
    const double rho1 = rho / (L3 + rho * L_DF * L2);
    const double denom = 1.0 - rho * L_DF * L2;
    if (!(denom > 0.0))
        fail(errc::out_of_regime, "rho * L_DF * L_F^2 must be < 1 (got denominator " +
                                      std::to_string(denom) + ")");
    const double rho2 = L3 * rho / denom;
    return {rho1, rho2};
}

double hausdorff_bound_main(double r, double L_F, double L_DF, double eps1, double eps2) {
    if (!(r > 0.0)) fail(errc::bad_input, "hausdorff_bound_main requires r > 0");
    if (L_F < 1.0 - 1e-12) fail(errc::out_of_regime, "violated: L_F >= 1");
    if (!(eps2 >= 0.0 && eps2 < 1.0)) fail(errc::out_of_regime, "violated: eps2 < 1");
    if (eps1 < 0.0 || L_DF < 0.0) fail(errc::bad_input, "constants must be nonnegative");
    if (r * L_DF * L_F * L_F > 0.5 + 1e-15)
        fail(errc::out_of_regime, "violated: r * L_DF * L_F^2 <= 1/2");

    const double L3 = L_F * L_F * L_F;
    const double A = 1.0 + 4.0 * r * L_DF * L_F * L_F;
    const double B = L3 * A;
    double radicand = 1.0 + B * B - 2.0 * B * std::sqrt(1.0 - eps2 * eps2);
    if (radicand < 0.0) {
        if (radicand < -1e-15) fail(errc::out_of_regime, "radicand unexpectedly negative");
        radicand = 0.0;   // identity case sits exactly at 0; absorb fp dust
    }
    return r * std::sqrt(radicand) + eps1;
}

BanachBound banach_bound(double r, double eps_banach) {
    if (!(r > 0.0)) fail(errc::bad_input, "banach_bound requires r > 0");
    if (eps_banach < 0.0) fail(errc::bad_input, "banach_bound requires eps >= 0");
    BanachBound out;
    out.leading = (1.0 + std::sqrt(50.0)) * r * r * eps_banach;
    out.regime_ok = r * eps_banach <= 0.25;
    return out;
}

BoundInput constants_from_banach(double r, double lip_dphi, double lip_dphi_tilde) {
    if (!(r > 0.0)) fail(errc::bad_input, "constants_from_banach requires r > 0");
    if (lip_dphi < 0.0 || lip_dphi_tilde < 0.0)
        fail(errc::bad_input, "Lipschitz inputs must be nonnegative");
    const double eps = std::max(lip_dphi, lip_dphi_tilde);
    BoundInput in;
    in.r = r;
    in.rho = r;   // worst-case ball radius
    in.L_F = 1.0 + r * eps;
    in.L_DF = eps;
    in.eps1 = r * r * eps;
    in.eps2 = r * eps;
    in.eps_banach = eps;
    return in;
}

} // namespace medax

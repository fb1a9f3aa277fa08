#pragma once

#include <utility>

#include "medax/error.hpp"

namespace medax {

struct BoundInput {
    double r = 1.0;         // bounding radius
    double rho = 1.0;       // maximal empty ball radius, in (0, r]
    double L_F = 1.0;
    double L_DF = 0.0;
    double eps1 = 0.0;
    double eps2 = 0.0;
    double eps_banach = 0.0;
};

struct RegimeFlags {
    bool eps2_lt_1 = true;          // eps2 < 1
    bool small_distortion = true;   // r * L_DF * L_F^2 <= 1/2
    bool banach_regime = true;      // r * eps_banach <= 1/4
};

struct BoundReport {
    double rho1 = 0.0;
    double rho2 = 0.0;
    double hausdorff_bound = 0.0;
    double banach_leading = 0.0;
    RegimeFlags regime;
    double measured_dH = -1.0;   // filled by the harness
    double margin = 0.0;
};

// Reach lower bound for the image of a set under a bi-Lipschitz C^{1,1} map:
// min{ s / Lip(F^-1), 1 / ((Lip(F)/t + Lip(DF)) Lip(F^-1)^2) }.
double federer_reach_bound(double t, double s, double lip_f, double lip_f_inv, double lip_df);

// Interval certified for the radius rho' of the image's maximal empty ball:
// [ rho / (L_F^3 + rho L_DF L_F^2),  L_F^3 rho / (1 - rho L_DF L_F^2) ].
std::pair<double, double> rho_prime_interval(double rho, double L_F, double L_DF);

// Bound on the displacement of maximal-empty-ball centres (and hence on the
// Hausdorff distance between the medial axes):
//   r * sqrt(1 + L^6 A^2 - 2 L^3 A sqrt(1 - eps2^2)) + eps1,  A = 1 + 4 r L_DF L^2.
// Valid whenever eps2 < 1 and r L_DF L_F^2 <= 1/2. Identity constants give
// exactly 0. The r prefactor keeps the evaluator asymptotically consistent
// with the (1 + sqrt(50)) r^2 eps leading constant of the Banach form.
double hausdorff_bound_main(double r, double L_F, double L_DF, double eps1, double eps2);

struct BanachBound {
    double leading = 0.0;    // (1 + sqrt(50)) r^2 eps; remainder term not evaluated
    bool regime_ok = true;   // r * eps <= 1/4
};

BanachBound banach_bound(double r, double eps_banach);

// Populate the stability-bound constants from the Banach-norm quantity
// eps = max(Lip(Dphi), Lip(Dphi~)):
//   L_F <= 1 + r eps, L_DF = eps, eps1 <= r^2 eps, eps2 <= r eps.
BoundInput constants_from_banach(double r, double lip_dphi, double lip_dphi_tilde);

} // namespace medax

#include "medax/diffeo.hpp"

#include <cmath>
#include <random>

namespace medax {

namespace {

void validate_family(double support_radius, double plateau_t0) {
    if (!(support_radius > 0.0)) fail(errc::bad_family, "support radius must be positive");
    if (!(plateau_t0 > 0.0 && plateau_t0 < 1.0)) fail(errc::bad_family, "plateau t0 must lie in (0, 1)");
}

} // namespace

DisplacementField zero_field(Vec2 center, double support_radius) {
    if (!(support_radius > 0.0)) fail(errc::bad_family, "support radius must be positive");
    return DisplacementField(
        "identity", center, support_radius, [](Vec2) { return Vec2{0.0, 0.0}; },
        [](Vec2) { return Mat2::zero(); }, FieldBounds{});
}

DisplacementField bump_translation_field(Vec2 v, Vec2 center, double support_radius, double plateau_t0) {
    validate_family(support_radius, plateau_t0);
    if (!v.finite()) fail(errc::bad_family, "bump translation vector must be finite");
    const double vn = v.norm();
    if (vn == 0.0) return zero_field(center, support_radius);

    const Taper eta(plateau_t0);
    const double r = support_radius;

    FieldBounds k;
    k.sup_phi = vn;
    k.sup_dphi = vn * eta.max_abs_derivative() / r;
    k.lip_phi = k.sup_dphi;
    // two Leibniz terms: eta' varies (4/w^2 per unit t) and the radial unit
    // vector varies (1/(t0 r) where eta' is active)
    k.lip_dphi = (vn / (r * r)) * (eta.derivative_lipschitz() + eta.max_abs_derivative() / plateau_t0);

    auto eval = [v, center, r, eta](Vec2 x) -> Vec2 {
        const double t = dist(x, center) / r;
        if (t >= 1.0) return {0.0, 0.0};
        return v * eta.value(t);
    };
    auto jac = [v, center, r, eta](Vec2 x) -> Mat2 {
        const Vec2 off = x - center;
        const double n = off.norm();
        const double t = n / r;
        if (t >= 1.0 || t <= eta.t0 || n == 0.0) return Mat2::zero();
        const Vec2 grad = off * (eta.derivative(t) / (r * n));
        return Mat2::outer(v, grad);
    };
    return DisplacementField("bump", center, r, std::move(eval), std::move(jac), k);
}

DisplacementField twist_field(double theta, Vec2 center, double support_radius, double plateau_t0) {
    validate_family(support_radius, plateau_t0);
    if (!std::isfinite(theta) || std::abs(theta) > 3.0)
        fail(errc::bad_family, "twist angle must be finite and |theta| <= 3");
    if (theta == 0.0) return zero_field(center, support_radius);

    const Taper eta(plateau_t0);
    const double r = support_radius;
    const double w = eta.width;
    const double at = std::abs(theta);

    FieldBounds k;
    // at/2 <= 1.5 < pi/2, so sin stays monotone and these are true sups
    k.sup_phi = 2.0 * r * std::sin(at / 2.0);
    k.sup_dphi = 2.0 * std::sin(at / 2.0) + 2.0 * at / w;
    k.lip_phi = k.sup_dphi;
    // triangle bound over the Leibniz terms of D[(R(alpha)-I) + (theta eta'/r) (R alpha y-perp) yhat^T]
    k.lip_dphi = (at / r) * (2.0 / w + eta.derivative_lipschitz() +
                             (2.0 / w) * (2.0 * at / w + 1.0 + 1.0 / plateau_t0));

    auto eval = [theta, center, r, eta](Vec2 x) -> Vec2 {
        const Vec2 off = x - center;
        const double t = off.norm() / r;
        if (t >= 1.0) return {0.0, 0.0};
        return rotate(off, theta * eta.value(t)) - off;
    };
    auto jac = [theta, center, r, eta](Vec2 x) -> Mat2 {
        const Vec2 off = x - center;
        const double n = off.norm();
        const double t = n / r;
        if (t >= 1.0) return Mat2::zero();
        const double alpha = theta * eta.value(t);
        Mat2 J = Mat2::rotation(alpha) - Mat2::identity();
        if (t > eta.t0 && n > 0.0) {
            const Vec2 grad_alpha = off * (theta * eta.derivative(t) / (r * n));
            J = J + Mat2::outer(rotate(off.perp(), alpha), grad_alpha);
        }
        return J;
    };
    return DisplacementField("twist", center, r, std::move(eval), std::move(jac), k);
}

Diffeomorphism::Diffeomorphism(DisplacementField phi) : phi_(std::move(phi)) {
    const FieldBounds& b = phi_.bounds();
    if (!(b.lip_phi < 1.0))
        fail(errc::not_contraction, "displacement Lipschitz constant must be < 1 (got " +
                                        std::to_string(b.lip_phi) + ")");
    const double shrink = 1.0 - b.sup_dphi;
    k_.L_F = 1.0 / (1.0 - b.lip_phi);
    k_.L_DF = b.lip_dphi / (shrink * shrink * shrink);
    k_.eps1 = b.sup_phi;
    k_.eps2 = b.sup_dphi;
    k_.eps_banach = k_.L_DF;   // majorant for max(Lip(Dphi), Lip(Dphi~))
}

Vec2 Diffeomorphism::inverse(Vec2 y, double tau_inv) const {
    if (!(phi_.bounds().lip_phi < 1.0)) fail(errc::not_contraction, "inverse needs Lip(phi) < 1");
    Vec2 x = y;
    for (int it = 0; it < 200; ++it) {
        const Vec2 next = y - phi_(x);
        const double step = dist(next, x);
        x = next;
        if (step < tau_inv) break;
    }
    return x;
}

AuditRecord certify_constants(const Diffeomorphism& diffeo, int n_probe, std::uint64_t seed) {
    const DisplacementField& phi = diffeo.displacement();
    AuditRecord rec;
    rec.constants = diffeo.constants();
    rec.analytic = phi.bounds();
    rec.n_probe = n_probe;
    rec.seed = seed;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const Vec2 c = phi.center();
    const double r = phi.support_radius();
    const auto sample_disk = [&]() {
        for (;;) {
            const Vec2 q{unit(rng), unit(rng)};
            if (q.norm2() <= 1.0) return c + r * q;
        }
    };

    const double tau_inv = diffeo.default_tau_inv();
    for (int i = 0; i < n_probe; ++i) {
        const Vec2 x = sample_disk();
        const Vec2 y = sample_disk();
        rec.sampled_sup_phi = std::max(rec.sampled_sup_phi, phi(x).norm());
        rec.sampled_sup_dphi = std::max(rec.sampled_sup_dphi, phi.jacobian(x).op_norm());
        const double sep = dist(x, y);
        if (sep > 1e-12 * r) {
            rec.sampled_lip_phi = std::max(rec.sampled_lip_phi, dist(phi(x), phi(y)) / sep);
            rec.sampled_lip_dphi =
                std::max(rec.sampled_lip_dphi, (phi.jacobian(x) - phi.jacobian(y)).op_norm() / sep);
        }

        // Dphi~ = (Id + Dphi)^{-1} - Id evaluated along the inverse orbit
        const Vec2 xi = diffeo.inverse(x, tau_inv);
        const Vec2 yi = diffeo.inverse(y, tau_inv);
        rec.max_inverse_residual =
            std::max(rec.max_inverse_residual, dist(diffeo.forward(xi), x));
        const Mat2 ti = diffeo.jacobian(xi).inverse() - Mat2::identity();
        const Mat2 tj = diffeo.jacobian(yi).inverse() - Mat2::identity();
        if (sep > 1e-12 * r)
            rec.sampled_lip_dphi_tilde = std::max(rec.sampled_lip_dphi_tilde, (ti - tj).op_norm() / sep);
    }

    const double slack = 1.0 + 1e-9;
    const auto breach = [&](const char* what, double sampled, double analytic) {
        if (sampled > analytic * slack + 1e-15)
            fail(errc::constant_breach, std::string(what) + " sampled " + std::to_string(sampled) +
                                            " exceeds analytic " + std::to_string(analytic));
    };
    breach("sup|phi|", rec.sampled_sup_phi, rec.analytic.sup_phi);
    breach("sup||Dphi||", rec.sampled_sup_dphi, rec.analytic.sup_dphi);
    breach("Lip(phi)", rec.sampled_lip_phi, rec.analytic.lip_phi);
    breach("Lip(Dphi)", rec.sampled_lip_dphi, rec.analytic.lip_dphi);
    breach("Lip(Dphi~)", rec.sampled_lip_dphi_tilde, rec.constants.eps_banach);
    return rec;
}

Vec2 transport_normal(const Mat2& J, Vec2 u) {
    if (std::abs(J.det()) <= 1e-12) fail(errc::singular_jacobian, "Jacobian determinant below 1e-12");
    const Vec2 w = J.transpose().inverse().apply(u);
    return w.normalized();
}

double angle_cosine_floor(double eps2) {
    if (!(eps2 >= 0.0) || eps2 >= 1.0)
        fail(errc::out_of_regime, "angle cosine floor needs 0 <= eps2 < 1");
    return std::sqrt(1.0 - eps2 * eps2);
}

} // namespace medax

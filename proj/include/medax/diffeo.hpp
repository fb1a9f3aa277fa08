#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "medax/geometry.hpp"

namespace medax {

// Radial taper used by every built-in family: 1 on [0, t0], piecewise
// quadratic decay to 0 at 1. C^1 with Lipschitz derivative but not C^2;
// the second derivative jumps at the knots, so fields built from it are
// genuinely C^{1,1} and nothing smoother.
struct Taper {
    double t0 = 0.5;
    double width = 0.5;   // 1 - t0

    explicit Taper(double plateau) : t0(plateau), width(1.0 - plateau) {}

    double value(double t) const {
        if (t <= t0) return 1.0;
        if (t >= 1.0) return 0.0;
        const double s = (t - t0) / width;
        return s <= 0.5 ? 1.0 - 2.0 * s * s : 2.0 * (1.0 - s) * (1.0 - s);
    }
    double derivative(double t) const {
        if (t <= t0 || t >= 1.0) return 0.0;
        const double s = (t - t0) / width;
        return (s <= 0.5 ? -4.0 * s : -4.0 * (1.0 - s)) / width;
    }
    double max_abs_derivative() const { return 2.0 / width; }
    double derivative_lipschitz() const { return 4.0 / (width * width); }
};

struct FieldBounds {
    double sup_phi = 0.0;    // ||phi||_inf
    double sup_dphi = 0.0;   // ||Dphi||_inf
    double lip_phi = 0.0;    // Lip(phi) (= ||Dphi||_inf for these fields)
    double lip_dphi = 0.0;   // Lip(Dphi)
};

// A compactly supported displacement field with analytic Jacobian and
// closed-form upper bounds for its norms. Vanishes identically (value and
// Jacobian) outside the support ball.
class DisplacementField {
public:
    DisplacementField(std::string family, Vec2 center, double support_radius,
                      std::function<Vec2(Vec2)> eval, std::function<Mat2(Vec2)> jac,
                      FieldBounds bounds)
        : family_(std::move(family)), center_(center), radius_(support_radius),
          eval_(std::move(eval)), jac_(std::move(jac)), bounds_(bounds) {}

    Vec2 operator()(Vec2 x) const { return eval_(x); }
    Mat2 jacobian(Vec2 x) const { return jac_(x); }

    const FieldBounds& bounds() const { return bounds_; }
    Vec2 center() const { return center_; }
    double support_radius() const { return radius_; }
    const std::string& family() const { return family_; }

private:
    std::string family_;
    Vec2 center_;
    double radius_;
    std::function<Vec2(Vec2)> eval_;
    std::function<Mat2(Vec2)> jac_;
    FieldBounds bounds_;
};

DisplacementField zero_field(Vec2 center, double support_radius);

// phi(x) = v * eta(|x - center| / r); plateau translation by v tapering to 0.
DisplacementField bump_translation_field(Vec2 v, Vec2 center, double support_radius, double plateau_t0);

// phi(x) = R(theta * eta(|x - center| / r)) (x - center) - (x - center).
DisplacementField twist_field(double theta, Vec2 center, double support_radius, double plateau_t0);

struct DiffeoConstants {
    double L_F = 1.0;        // bounds Lip(F) and Lip(F^-1)
    double L_DF = 0.0;       // bounds Lip(DF) and Lip(DF^-1)
    double eps1 = 0.0;       // bounds sup |F(x) - x|
    double eps2 = 0.0;       // bounds sup ||D_x F - Id||
    double eps_banach = 0.0; // max(Lip(Dphi), Lip(Dphi~)) via analytic majorant
};

// F = identity + phi with certified constants derived from the field's
// closed-form bounds. Inversion is fixed-point iteration (phi must be a
// contraction).
class Diffeomorphism {
public:
    explicit Diffeomorphism(DisplacementField phi);

    Vec2 forward(Vec2 x) const { return x + phi_(x); }
    Mat2 jacobian(Vec2 x) const { return Mat2::identity() + phi_.jacobian(x); }
    Vec2 inverse(Vec2 y, double tau_inv) const;
    Vec2 inverse(Vec2 y) const { return inverse(y, default_tau_inv()); }

    double default_tau_inv() const { return 1e-12 * phi_.support_radius(); }

    const DisplacementField& displacement() const { return phi_; }
    const DiffeoConstants& constants() const { return k_; }

private:
    DisplacementField phi_;
    DiffeoConstants k_;
};

struct AuditRecord {
    DiffeoConstants constants;
    FieldBounds analytic;
    double sampled_sup_phi = 0.0;
    double sampled_sup_dphi = 0.0;
    double sampled_lip_phi = 0.0;
    double sampled_lip_dphi = 0.0;
    double sampled_lip_dphi_tilde = 0.0;
    double max_inverse_residual = 0.0;
    int n_probe = 0;
    std::uint64_t seed = 0;
    std::string eps_banach_source = "majorant";
};

// Analytic constants are authoritative; sampling produces lower bounds and
// the audit asserts sampled <= analytic. Throws ConstantBreach otherwise.
AuditRecord certify_constants(const Diffeomorphism& diffeo, int n_probe, std::uint64_t seed);

// u' = (D_p F^t)^{-1} u, normalized: the unit normal of the image tangent
// line that points into the image ball.
Vec2 transport_normal(const Mat2& J, Vec2 u);

// cos(angle(u, u')) >= sqrt(1 - eps2^2) whenever ||J - Id|| <= eps2 < 1.
double angle_cosine_floor(double eps2);

} // namespace medax

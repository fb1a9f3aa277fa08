#pragma once

#include <algorithm>
#include <vector>

#include "medax/geometry.hpp"

namespace medax {

enum class RangeStatus {
    zero,       // every probed travel distance already sees another witness
    finite,     // positive, bounded range: (origin, direction) back-projects
    unbounded,  // projection stays unique out to lambda_max (outward directions)
};

const char* range_status_name(RangeStatus s);

struct ProjectionRange {
    Vec2 origin;
    Vec2 direction;
    double lambda = 0.0;
    RangeStatus status = RangeStatus::zero;
    int iterations = 0;
};

struct RangeOptions {
    double lambda_max = 0.0;
    double tau_bis = 1e-8;
    int max_iterations = 80;
    double zero_probe_factor = 16.0;
    // emptiness tolerance for the deficit predicate; <= 0 means tau_bis.
    // Image sets drive this with tau_bis * L_F^2.
    double deficit_tolerance = -1.0;
};

// Bisection on the emptiness deficit lambda - d(p + lambda u). The nested-ball
// monotonicity of the deficit makes the predicate "deficit <= tol" one-sided,
// so the bracket is certified. Works against any distance field.
template <class DistFn>
ProjectionRange projection_range_over(const DistFn& dist_to_set, Vec2 p, Vec2 u, const RangeOptions& opt) {
    const double tol = opt.deficit_tolerance > 0.0 ? opt.deficit_tolerance : opt.tau_bis;
    const auto deficit = [&](double l) { return l - dist_to_set(Vec2{p.x + l * u.x, p.y + l * u.y}); };

    ProjectionRange out;
    out.origin = p;
    out.direction = u;

    if (deficit(opt.lambda_max) <= tol) {
        out.status = RangeStatus::unbounded;
        out.lambda = std::numeric_limits<double>::infinity();
        return out;
    }

    const double probe = std::min(opt.zero_probe_factor * opt.tau_bis, 0.5 * opt.lambda_max);
    if (deficit(probe) > tol) {
        out.status = RangeStatus::zero;
        out.lambda = 0.0;
        return out;
    }

    double lo = probe;
    double hi = opt.lambda_max;
    int it = 0;
    while (it < opt.max_iterations && (hi - lo) >= opt.tau_bis) {
        const double mid = 0.5 * (lo + hi);
        if (deficit(mid) <= tol)
            lo = mid;
        else
            hi = mid;
        ++it;
    }
    out.status = RangeStatus::finite;
    out.lambda = lo;   // certified-empty side of the bracket
    out.iterations = it;
    return out;
}

struct BackProjectionPair {
    Vec2 p;
    Vec2 u;
    ProjectionRange range;
};

// lambda - distance(shape, p + lambda u); nondecreasing in lambda.
double deficit(const Shape& shape, Vec2 p, Vec2 u, double lambda);

ProjectionRange projection_range(const Shape& shape, Vec2 p, Vec2 u, double lambda_max = -1.0,
                                 double tau_bis = 1e-8);

bool ubp_membership(const Shape& shape, Vec2 p, Vec2 u, double tau_bis = 1e-8);

BackProjectionPair make_back_projection(const Shape& shape, Vec2 p, Vec2 u, double tau_bis = 1e-8);

// p + lambda u for a finite positive range; the centre of the maximal empty
// weakly tangent ball, on the closure of the medial axis.
Vec2 medial_projection(const Shape& shape, const BackProjectionPair& pair);

struct TangentProbe {
    Vec2 p;
    std::vector<Vec2> directions;   // unit tangent directions of S at p
    double resolution = 0.0;
};

TangentProbe tangent_probe(const Shape& shape, Vec2 p, double eps_tan = 1e-6);

struct NormalConeResult {
    bool inside = false;
    bool boundary = false;    // some tangent alignment sits at the tolerance boundary
    double max_alignment = 0.0;
};

NormalConeResult normal_cone_check_detail(const Shape& shape, Vec2 p, Vec2 v, const TangentProbe& probe,
                                          double tau_angle = 1e-9);
bool normal_cone_check(const Shape& shape, Vec2 p, Vec2 v, const TangentProbe& probe,
                       double tau_angle = 1e-9);

// Projection-based cross-check: v is normal at p iff the projection of
// p + rho * v/|v| comes back to p alone. Independent of the tangent-probe route.
bool normal_via_projection(const Shape& shape, Vec2 p, Vec2 v, double rho, double tau, double delta);

} // namespace medax

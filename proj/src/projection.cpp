#include "medax/projection.hpp"

namespace medax {

const char* range_status_name(RangeStatus s) {
    switch (s) {
        case RangeStatus::zero: return "zero";
        case RangeStatus::finite: return "finite";
        case RangeStatus::unbounded: return "unbounded";
    }
    return "unknown";
}

namespace {

void require_on_set(const Shape& shape, Vec2 p) {
    const double d = distance(shape, p);
    if (d > shape.default_tau())
        fail(errc::not_on_set, "point is not on the shape (distance " + std::to_string(d) + ")");
}

void require_unit(Vec2 u) {
    if (std::abs(u.norm() - 1.0) > 1e-12)
        fail(errc::bad_input, "direction must be a unit vector");
}

} // namespace

double deficit(const Shape& shape, Vec2 p, Vec2 u, double lambda) {
    require_on_set(shape, p);
    if (lambda < 0.0) fail(errc::bad_input, "deficit requires lambda >= 0");
    return lambda - distance(shape, p + lambda * u);
}

ProjectionRange projection_range(const Shape& shape, Vec2 p, Vec2 u, double lambda_max, double tau_bis) {
    require_on_set(shape, p);
    require_unit(u);
    RangeOptions opt;
    opt.lambda_max = lambda_max > 0.0 ? lambda_max : 2.0 * shape.radius();
    opt.tau_bis = tau_bis;
    return projection_range_over([&](Vec2 q) { return distance(shape, q); }, p, u, opt);
}

bool ubp_membership(const Shape& shape, Vec2 p, Vec2 u, double tau_bis) {
    const ProjectionRange r = projection_range(shape, p, u, -1.0, tau_bis);
    return r.status == RangeStatus::finite && r.lambda > 0.0;
}

BackProjectionPair make_back_projection(const Shape& shape, Vec2 p, Vec2 u, double tau_bis) {
    BackProjectionPair pair;
    pair.p = p;
    pair.u = u;
    pair.range = projection_range(shape, p, u, -1.0, tau_bis);
    return pair;
}

Vec2 medial_projection(const Shape& shape, const BackProjectionPair& pair) {
    require_on_set(shape, pair.p);
    if (pair.range.status != RangeStatus::finite || !(pair.range.lambda > 0.0))
        fail(errc::not_back_projection,
             std::string("projection range is ") + range_status_name(pair.range.status));
    return pair.p + pair.range.lambda * pair.u;
}

TangentProbe tangent_probe(const Shape& shape, Vec2 p, double eps_tan) {
    require_on_set(shape, p);
    TangentProbe probe;
    probe.p = p;
    probe.resolution = eps_tan;
    const double tol = shape.default_tau();

    for (const Primitive& prim : shape.primitives()) {
        if (distance_to_primitive(p, prim) > tol) continue;
        if (std::holds_alternative<SinglePoint>(prim)) {
            // Tan = {0}: an isolated point contributes no directions.
            continue;
        }
        if (const auto* sg = std::get_if<Segment>(&prim)) {
            const Vec2 t = (sg->b - sg->a).normalized();
            const bool at_a = dist(p, sg->a) <= tol;
            const bool at_b = dist(p, sg->b) <= tol;
            if (at_a) {
                probe.directions.push_back(t);
            } else if (at_b) {
                probe.directions.push_back(-t);
            } else {
                probe.directions.push_back(t);
                probe.directions.push_back(-t);
            }
            continue;
        }
        const auto& ci = std::get<Circle>(prim);
        const Vec2 t = (p - ci.center).perp().normalized();
        probe.directions.push_back(t);
        probe.directions.push_back(-t);
    }
    return probe;
}

NormalConeResult normal_cone_check_detail(const Shape& shape, Vec2 p, Vec2 v, const TangentProbe& probe,
                                          double tau_angle) {
    (void)shape;
    (void)p;
    NormalConeResult res;
    const double vn = v.norm();
    if (vn == 0.0) {
        res.inside = true;  // the zero vector is normal by convention
        return res;
    }
    double max_align = -std::numeric_limits<double>::infinity();
    bool boundary = false;
    for (const Vec2& t : probe.directions) {
        const double a = v.dot(t);
        max_align = std::max(max_align, a);
        if (std::abs(a) <= tau_angle * vn) boundary = true;
    }
    if (probe.directions.empty()) max_align = 0.0;
    res.max_alignment = max_align;
    res.inside = max_align <= tau_angle * vn;
    res.boundary = boundary;
    return res;
}

bool normal_cone_check(const Shape& shape, Vec2 p, Vec2 v, const TangentProbe& probe, double tau_angle) {
    return normal_cone_check_detail(shape, p, v, probe, tau_angle).inside;
}

bool normal_via_projection(const Shape& shape, Vec2 p, Vec2 v, double rho, double tau, double delta) {
    require_on_set(shape, p);
    if (!(rho > 0.0)) fail(errc::bad_input, "normal_via_projection requires rho > 0");
    const Vec2 q = p + rho * v.normalized();
    const NearestSet ns = nearest_set(shape, q, tau, delta);
    if (ns.continuum || ns.witnesses.size() != 1) return false;
    return dist(ns.witnesses.front().point, p) <= delta;
}

} // namespace medax

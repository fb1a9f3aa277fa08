#include "medax/geometry.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace medax {

const char* errc_name(errc code) {
    switch (code) {
        case errc::bad_input: return "BadInput";
        case errc::empty_set: return "EmptySet";
        case errc::not_on_set: return "NotOnSet";
        case errc::not_back_projection: return "NotBackProjection";
        case errc::bad_family: return "BadFamily";
        case errc::not_contraction: return "NotContraction";
        case errc::constant_breach: return "ConstantBreach";
        case errc::singular_jacobian: return "SingularJacobian";
        case errc::out_of_regime: return "OutOfRegime";
        case errc::no_axis: return "NoAxis";
    }
    return "Unknown";
}

std::string describe(const Primitive& prim) {
    char buf[160];
    if (const auto* pt = std::get_if<SinglePoint>(&prim)) {
        std::snprintf(buf, sizeof buf, "point (%g, %g)", pt->p.x, pt->p.y);
    } else if (const auto* sg = std::get_if<Segment>(&prim)) {
        std::snprintf(buf, sizeof buf, "segment (%g, %g)-(%g, %g)", sg->a.x, sg->a.y, sg->b.x, sg->b.y);
    } else {
        const auto& ci = std::get<Circle>(prim);
        std::snprintf(buf, sizeof buf, "circle center (%g, %g) radius %g", ci.center.x, ci.center.y, ci.radius);
    }
    return buf;
}

double distance_to_primitive(Vec2 x, const Primitive& prim) {
    if (const auto* pt = std::get_if<SinglePoint>(&prim)) {
        return dist(x, pt->p);
    }
    if (const auto* sg = std::get_if<Segment>(&prim)) {
        const Vec2 ab = sg->b - sg->a;
        const double t = std::clamp((x - sg->a).dot(ab) / ab.norm2(), 0.0, 1.0);
        return dist(x, sg->a + t * ab);
    }
    const auto& ci = std::get<Circle>(prim);
    return std::abs(dist(x, ci.center) - ci.radius);
}

Vec2 closest_point_on_primitive(Vec2 x, const Primitive& prim) {
    if (const auto* pt = std::get_if<SinglePoint>(&prim)) {
        return pt->p;
    }
    if (const auto* sg = std::get_if<Segment>(&prim)) {
        const Vec2 ab = sg->b - sg->a;
        const double t = std::clamp((x - sg->a).dot(ab) / ab.norm2(), 0.0, 1.0);
        return sg->a + t * ab;
    }
    const auto& ci = std::get<Circle>(prim);
    const Vec2 d = x - ci.center;
    const double n = d.norm();
    if (n == 0.0) return ci.center + Vec2{ci.radius, 0.0}; // canonical pick at the degenerate center
    return ci.center + d * (ci.radius / n);
}

namespace {

void validate_primitive(const Primitive& prim, std::size_t index) {
    const auto where = [&] { return "primitive " + std::to_string(index) + " (" + describe(prim) + ")"; };
    if (const auto* pt = std::get_if<SinglePoint>(&prim)) {
        if (!pt->p.finite()) fail(errc::bad_input, where() + " has non-finite coordinates");
    } else if (const auto* sg = std::get_if<Segment>(&prim)) {
        if (!sg->a.finite() || !sg->b.finite()) fail(errc::bad_input, where() + " has non-finite coordinates");
        if (sg->a.x == sg->b.x && sg->a.y == sg->b.y) fail(errc::bad_input, where() + " has coincident endpoints");
    } else {
        const auto& ci = std::get<Circle>(prim);
        if (!ci.center.finite() || !std::isfinite(ci.radius)) fail(errc::bad_input, where() + " has non-finite coordinates");
        if (!(ci.radius > 0.0)) fail(errc::bad_input, where() + " has non-positive radius");
    }
}

double farthest_from(const Primitive& prim, Vec2 c) {
    if (const auto* pt = std::get_if<SinglePoint>(&prim)) return dist(pt->p, c);
    if (const auto* sg = std::get_if<Segment>(&prim)) return std::max(dist(sg->a, c), dist(sg->b, c));
    const auto& ci = std::get<Circle>(prim);
    return dist(ci.center, c) + ci.radius;
}

bool same_circle(const Primitive& prim, const Circle& c) {
    const auto* ci = std::get_if<Circle>(&prim);
    return ci && ci->center.x == c.center.x && ci->center.y == c.center.y && ci->radius == c.radius;
}

} // namespace

Shape::Shape(std::vector<Primitive> primitives, Circle bounding)
    : primitives_(std::move(primitives)), bounding_(bounding) {
    if (!bounding_.center.finite() || !std::isfinite(bounding_.radius))
        fail(errc::bad_input, "bounding circle has non-finite parameters");
    if (!(bounding_.radius > 0.0)) fail(errc::bad_input, "bounding circle radius must be positive");

    for (std::size_t i = 0; i < primitives_.size(); ++i) {
        validate_primitive(primitives_[i], i);
        const double reach_out = farthest_from(primitives_[i], bounding_.center);
        if (reach_out > bounding_.radius * (1.0 + 1e-9))
            fail(errc::bad_input, "primitive " + std::to_string(i) + " (" + describe(primitives_[i]) +
                                      ") extends outside the bounding ball");
    }

    const bool has_bounding = std::any_of(primitives_.begin(), primitives_.end(),
                                          [&](const Primitive& p) { return same_circle(p, bounding_); });
    if (!has_bounding) primitives_.push_back(bounding_);
}

double distance(std::span<const Primitive> prims, Vec2 x) {
    double best = std::numeric_limits<double>::infinity();
    for (const Primitive& prim : prims) best = std::min(best, distance_to_primitive(x, prim));
    return best;
}

double distance(const Shape& shape, Vec2 x) { return distance(shape.primitives(), x); }

NearestSet nearest_set(std::span<const Primitive> prims, Vec2 x, double tau, double delta) {
    if (!(tau > 0.0)) fail(errc::bad_input, "nearest_set requires tau > 0");
    if (!(delta > tau)) fail(errc::bad_input, "nearest_set requires delta > tau");
    if (prims.empty()) fail(errc::empty_set, "nearest_set on empty primitive list");

    const double d_min = distance(prims, x);

    NearestSet out;
    out.distance = d_min;
    out.tolerance = tau;

    std::vector<Witness> candidates;
    for (std::size_t i = 0; i < prims.size(); ++i) {
        const Primitive& prim = prims[i];
        if (const auto* ci = std::get_if<Circle>(&prim)) {
            const Vec2 off = x - ci->center;
            const double n = off.norm();
            if (n <= tau) {
                // Degenerate query at (or numerically at) the circle centre:
                // the true nearest set is the whole circle. Emit one antipodal
                // representative pair and flag the continuum, provided the
                // circle is distance-competitive at all.
                if (ci->radius - n <= d_min + tau) {
                    const Vec2 dir = n > 0.0 ? off / n : Vec2{1.0, 0.0};
                    candidates.push_back({ci->center + dir * ci->radius, i});
                    candidates.push_back({ci->center - dir * ci->radius, i});
                    out.continuum = true;
                }
                continue;
            }
        }
        if (distance_to_primitive(x, prim) <= d_min + tau)
            candidates.push_back({closest_point_on_primitive(x, prim), i});
    }

    std::sort(candidates.begin(), candidates.end(), [](const Witness& a, const Witness& b) {
        if (a.point.x != b.point.x) return a.point.x < b.point.x;
        if (a.point.y != b.point.y) return a.point.y < b.point.y;
        return a.primitive_index < b.primitive_index;
    });

    // greedy clustering at separation delta; representatives stay pairwise > delta apart
    for (const Witness& cand : candidates) {
        bool merged = false;
        for (const Witness& kept : out.witnesses) {
            if (dist(cand.point, kept.point) <= delta) {
                merged = true;
                break;
            }
        }
        if (!merged) out.witnesses.push_back(cand);
    }
    return out;
}

NearestSet nearest_set(const Shape& shape, Vec2 x, double tau, double delta) {
    return nearest_set(shape.primitives(), x, tau, delta);
}

NearestSet nearest_set(const Shape& shape, Vec2 x) {
    return nearest_set(shape, x, shape.default_tau(), shape.default_delta());
}

double hausdorff_directed(std::span<const Vec2> from, std::span<const Vec2> to) {
    if (from.empty() || to.empty()) fail(errc::empty_set, "hausdorff on empty point set");
    double worst = 0.0;
    for (const Vec2& a : from) {
        double best = std::numeric_limits<double>::infinity();
        for (const Vec2& b : to) best = std::min(best, dist(a, b));
        worst = std::max(worst, best);
    }
    return worst;
}

double hausdorff(std::span<const Vec2> a, std::span<const Vec2> b) {
    return std::max(hausdorff_directed(a, b), hausdorff_directed(b, a));
}

} // namespace medax

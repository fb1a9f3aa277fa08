#include "medax/medial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace medax {

const char* cloud_source_name(CloudSource s) {
    return s == CloudSource::shooting ? "shooting" : "grid_oracle";
}

std::vector<BoundarySample> sample_boundary(const Shape& shape, double h_b, int n_dir) {
    if (!(h_b > 0.0)) fail(errc::bad_input, "sample_boundary requires h_b > 0");
    if (n_dir < 1) fail(errc::bad_input, "sample_boundary requires n_dir >= 1");

    std::vector<BoundarySample> out;
    const auto prims = shape.primitives();
    for (std::size_t i = 0; i < prims.size(); ++i) {
        const Primitive& prim = prims[i];
        if (const auto* pt = std::get_if<SinglePoint>(&prim)) {
            BoundarySample s;
            s.point = pt->p;
            s.primitive_index = i;
            s.isolated = true;
            s.normals.reserve(n_dir);
            for (int k = 0; k < n_dir; ++k) {
                const double a = 2.0 * std::numbers::pi * k / n_dir;
                s.normals.push_back({std::cos(a), std::sin(a)});
            }
            out.push_back(std::move(s));
        } else if (const auto* sg = std::get_if<Segment>(&prim)) {
            const double len = dist(sg->a, sg->b);
            const int n = std::max(1, static_cast<int>(std::ceil(len / h_b)));
            const Vec2 t = (sg->b - sg->a) / len;
            const Vec2 n_side = t.perp();
            for (int k = 0; k <= n; ++k) {
                BoundarySample s;
                s.point = sg->a + (len * k / n) * t;
                s.primitive_index = i;
                s.normals = {n_side, -n_side};
                out.push_back(std::move(s));
            }
        } else {
            const auto& ci = std::get<Circle>(prim);
            const double circumference = 2.0 * std::numbers::pi * ci.radius;
            const int n = std::max(3, static_cast<int>(std::ceil(circumference / h_b)));
            for (int k = 0; k < n; ++k) {
                const double a = 2.0 * std::numbers::pi * k / n;
                const Vec2 radial{std::cos(a), std::sin(a)};
                BoundarySample s;
                s.point = ci.center + ci.radius * radial;
                s.primitive_index = i;
                s.normals = {-radial, radial};   // inward first
                out.push_back(std::move(s));
            }
        }
    }
    return out;
}

std::vector<MedialSample> shoot_raw(const Shape& shape, std::span<const BoundarySample> samples,
                                    double tau_bis) {
    RangeOptions opt;
    opt.lambda_max = 2.0 * shape.radius();
    opt.tau_bis = tau_bis;
    const auto dist_fn = [&](Vec2 q) { return distance(shape, q); };
    std::vector<MedialSample> raw;
    for (const BoundarySample& bs : samples) {
        for (const Vec2& u : bs.normals) {
            const ProjectionRange r = projection_range_over(dist_fn, bs.point, u, opt);
            if (r.status == RangeStatus::finite && r.lambda > 0.0)
                raw.push_back({bs.point + r.lambda * u, r.lambda, bs.point, u});
        }
    }
    return raw;
}

std::vector<ProjectionRange> probe_ranges(const Shape& shape, std::span<const BoundarySample> samples,
                                          double tau_bis) {
    RangeOptions opt;
    opt.lambda_max = 2.0 * shape.radius();
    opt.tau_bis = tau_bis;
    const auto dist_fn = [&](Vec2 q) { return distance(shape, q); };
    std::vector<ProjectionRange> out;
    for (const BoundarySample& bs : samples)
        for (const Vec2& u : bs.normals) out.push_back(projection_range_over(dist_fn, bs.point, u, opt));
    return out;
}

std::vector<MedialSample> dedup_samples(std::vector<MedialSample> samples, double tau_dedup) {
    std::sort(samples.begin(), samples.end(), [](const MedialSample& a, const MedialSample& b) {
        if (a.center.x != b.center.x) return a.center.x < b.center.x;
        if (a.center.y != b.center.y) return a.center.y < b.center.y;
        return a.radius < b.radius;
    });
    std::vector<MedialSample> kept;
    for (const MedialSample& s : samples) {
        bool close = false;
        // sorted by x: only candidates within tau_dedup in x can collide
        for (auto it = kept.rbegin(); it != kept.rend(); ++it) {
            if (s.center.x - it->center.x > tau_dedup) break;
            if (dist(s.center, it->center) < tau_dedup) {
                close = true;
                break;
            }
        }
        if (!close) kept.push_back(s);
    }
    return kept;
}

MedialCloud shoot_medial_cloud(const Shape& shape, double h_b, int n_dir, double tau_bis) {
    const auto samples = sample_boundary(shape, h_b, n_dir);
    MedialCloud cloud;
    cloud.source = CloudSource::shooting;
    cloud.h_b = h_b;
    cloud.n_dir = n_dir;
    cloud.samples = dedup_samples(shoot_raw(shape, samples, tau_bis), 0.5 * h_b);
    return cloud;
}

std::vector<MedialSample> grid_oracle_window(std::span<const Primitive> prims, Vec2 lo, Vec2 hi,
                                             double h_g, double tau, double delta) {
    if (!(h_g > 0.0)) fail(errc::bad_input, "grid oracle requires h_g > 0");
    std::vector<MedialSample> out;
    const int nx = static_cast<int>(std::floor((hi.x - lo.x) / h_g));
    const int ny = static_cast<int>(std::floor((hi.y - lo.y) / h_g));
    for (int i = 0; i <= nx; ++i) {
        for (int j = 0; j <= ny; ++j) {
            const Vec2 g{lo.x + i * h_g, lo.y + j * h_g};
            const NearestSet ns = nearest_set(prims, g, tau, delta);
            if (ns.witnesses.size() < 2 && !ns.continuum) continue;
            const Vec2 p = ns.witnesses.front().point;
            const Vec2 d = g - p;
            const double dn = d.norm();
            if (!(dn > 0.0)) continue;
            out.push_back({g, ns.distance, p, d / dn});
        }
    }
    return out;
}

MedialCloud grid_medial_oracle(const Shape& shape, double h_g, double tau, double delta) {
    if (!(h_g > 0.0)) fail(errc::bad_input, "grid oracle requires h_g > 0");
    const double tau_eff = tau > 0.0 ? tau : h_g;
    const double delta_eff = delta > 0.0 ? delta : 8.0 * h_g;
    if (!(delta_eff > tau_eff)) fail(errc::bad_input, "grid oracle requires delta > tau");

    const Vec2 c0 = shape.center();
    const double r = shape.radius();
    MedialCloud cloud;
    cloud.source = CloudSource::grid_oracle;
    cloud.h_g = h_g;

    const int n = static_cast<int>(std::floor(2.0 * r / h_g));
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            const Vec2 g{c0.x - r + i * h_g, c0.y - r + j * h_g};
            if (dist(g, c0) > r) continue;   // scan stays inside the bounding ball
            const NearestSet ns = nearest_set(shape, g, tau_eff, delta_eff);
            if (ns.witnesses.size() < 2 && !ns.continuum) continue;
            const Vec2 p = ns.witnesses.front().point;
            const Vec2 d = g - p;
            const double dn = d.norm();
            if (!(dn > 0.0)) continue;
            cloud.samples.push_back({g, ns.distance, p, d / dn});
        }
    }
    return cloud;
}

double local_feature_size(const Shape& shape, Vec2 p, const MedialCloud& cloud) {
    (void)shape;
    if (cloud.samples.empty()) fail(errc::no_axis, "medial cloud is empty");
    double best = std::numeric_limits<double>::infinity();
    for (const MedialSample& s : cloud.samples) best = std::min(best, dist(p, s.center));
    return best;
}

double reach(const Shape& shape, const MedialCloud& cloud, double h_b) {
    if (cloud.samples.empty()) fail(errc::no_axis, "medial cloud is empty");
    const auto samples = sample_boundary(shape, h_b, 1);
    double best = std::numeric_limits<double>::infinity();
    for (const BoundarySample& bs : samples)
        best = std::min(best, local_feature_size(shape, bs.point, cloud));
    return best;
}

std::vector<Vec2> sample_centers(std::span<const MedialSample> samples) {
    std::vector<Vec2> pts;
    pts.reserve(samples.size());
    for (const MedialSample& s : samples) pts.push_back(s.center);
    return pts;
}

std::vector<Vec2> cloud_centers(const MedialCloud& cloud) { return sample_centers(cloud.samples); }

} // namespace medax

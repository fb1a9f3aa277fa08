#pragma once

#include <span>
#include <vector>

#include "medax/geometry.hpp"
#include "medax/projection.hpp"

namespace medax {

// A point on (the closure of) the medial axis with its maximal-empty-ball
// witness: center = witness + radius * direction.
struct MedialSample {
    Vec2 center;
    double radius = 0.0;
    Vec2 witness;
    Vec2 direction;
};

enum class CloudSource { shooting, grid_oracle };

const char* cloud_source_name(CloudSource s);

struct MedialCloud {
    std::vector<MedialSample> samples;
    CloudSource source = CloudSource::shooting;
    double h_b = 0.0;
    int n_dir = 0;
    double h_g = 0.0;
};

struct BoundarySample {
    Vec2 point;
    std::vector<Vec2> normals;     // candidate shooting directions
    std::size_t primitive_index = 0;
    bool isolated = false;          // sample of a point primitive (full fan)
};

// Arclength-uniform samples on every primitive. Segments and circles carry
// their two side normals; isolated points carry an n_dir fan.
std::vector<BoundarySample> sample_boundary(const Shape& shape, double h_b, int n_dir = 256);

struct Shot {
    Vec2 origin;
    Vec2 direction;
};

template <class DistFn>
std::vector<MedialSample> shoot_over(const DistFn& dist_to_set, std::span<const Shot> shots,
                                     const RangeOptions& opt) {
    std::vector<MedialSample> raw;
    raw.reserve(shots.size());
    for (const Shot& s : shots) {
        const ProjectionRange r = projection_range_over(dist_to_set, s.origin, s.direction, opt);
        if (r.status == RangeStatus::finite && r.lambda > 0.0)
            raw.push_back({s.origin + r.lambda * s.direction, r.lambda, s.origin, s.direction});
    }
    return raw;
}

std::vector<MedialSample> shoot_raw(const Shape& shape, std::span<const BoundarySample> samples,
                                    double tau_bis);

// Every projection range probed from the samples, including zero/unbounded
// outcomes (shoot_raw keeps only the finite positive ones).
std::vector<ProjectionRange> probe_ranges(const Shape& shape, std::span<const BoundarySample> samples,
                                          double tau_bis);

// Deterministic dedup: sort centers lexicographically, then greedily keep
// samples at pairwise separation >= tau_dedup.
std::vector<MedialSample> dedup_samples(std::vector<MedialSample> samples, double tau_dedup);

MedialCloud shoot_medial_cloud(const Shape& shape, double h_b, int n_dir, double tau_bis);

// Brute-force transcription of the medial axis definition: a grid point joins
// the cloud iff its nearest set has more than one witness. tau <= 0 defaults
// to h_g; delta <= 0 defaults to 8 * h_g (off-lattice multiplicity needs
// tolerances at the grid scale, not the engine's exact-query defaults).
MedialCloud grid_medial_oracle(const Shape& shape, double h_g, double tau = -1.0, double delta = -1.0);

// Window-restricted oracle over a raw primitive list; no bounding-circle
// requirement (used to demonstrate why the bounding sphere is needed).
std::vector<MedialSample> grid_oracle_window(std::span<const Primitive> prims, Vec2 lo, Vec2 hi,
                                             double h_g, double tau, double delta);

double local_feature_size(const Shape& shape, Vec2 p, const MedialCloud& cloud);

double reach(const Shape& shape, const MedialCloud& cloud, double h_b);

std::vector<Vec2> cloud_centers(const MedialCloud& cloud);
std::vector<Vec2> sample_centers(std::span<const MedialSample> samples);

} // namespace medax

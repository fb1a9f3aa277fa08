#include "medax/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace medax {

const char* run_mode_name(RunMode m) {
    switch (m) {
        case RunMode::verify: return "verify";
        case RunMode::sweep: return "sweep";
        case RunMode::scaling: return "scaling";
        case RunMode::oracle_compare: return "oracle-compare";
        case RunMode::demo_unbounded: return "demo-unbounded";
        case RunMode::bounds_only: return "bounds";
    }
    return "verify";
}

RunMode run_mode_from_name(const std::string& name) {
    if (name == "verify") return RunMode::verify;
    if (name == "sweep") return RunMode::sweep;
    if (name == "scaling") return RunMode::scaling;
    if (name == "oracle-compare") return RunMode::oracle_compare;
    if (name == "demo-unbounded") return RunMode::demo_unbounded;
    if (name == "bounds") return RunMode::bounds_only;
    fail(errc::bad_input, "unknown mode '" + name + "'");
}

double ExperimentConfig::resolved_tau() const {
    return tolerances.tau > 0.0 ? tolerances.tau : shape.default_tau();
}
double ExperimentConfig::resolved_delta() const {
    return tolerances.delta > 0.0 ? tolerances.delta : shape.default_delta();
}
double ExperimentConfig::resolved_tau_inv() const {
    return tolerances.tau_inv > 0.0 ? tolerances.tau_inv : 1e-12 * shape.radius();
}
double ExperimentConfig::resolved_tau_grid() const {
    return tolerances.tau_grid > 0.0 ? tolerances.tau_grid : densities.h_g;
}
double ExperimentConfig::resolved_delta_grid() const {
    return tolerances.delta_grid > 0.0 ? tolerances.delta_grid : 8.0 * densities.h_g;
}

DisplacementField build_displacement(const DiffeoSpec& spec, Vec2 center, double radius) {
    if (spec.family == "identity") return zero_field(center, radius);
    if (spec.family == "bump") return bump_translation_field(spec.v, center, radius, spec.t0);
    if (spec.family == "twist") return twist_field(spec.theta, center, radius, spec.t0);
    fail(errc::bad_family, "unknown diffeomorphism family '" + spec.family + "'");
}

ImageSet::ImageSet(const Shape& base, const Diffeomorphism& diffeo, double h_b, double tau_inv)
    : base_(&base), diffeo_(&diffeo), L_F_(diffeo.constants().L_F), tau_inv_(tau_inv) {
    const auto samples = sample_boundary(base, h_b, 1);
    pts_.reserve(samples.size());
    for (const BoundarySample& s : samples) pts_.push_back(diffeo.forward(s.point));
    xs_.reserve(pts_.size());
    ys_.reserve(pts_.size());
    for (const Vec2& p : pts_) {
        xs_.push_back(p.x);
        ys_.push_back(p.y);
    }
}

double ImageSet::distance_direct(Vec2 y) const {
    double best2 = std::numeric_limits<double>::infinity();
    const std::size_t n = xs_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs_[i] - y.x;
        const double dy = ys_[i] - y.y;
        const double d2 = dx * dx + dy * dy;
        if (d2 < best2) best2 = d2;
    }
    return std::sqrt(best2);
}

double ImageSet::distance_pullback(Vec2 y) const {
    return distance(*base_, diffeo_->inverse(y, tau_inv_));
}

std::pair<double, double> ImageSet::certified_bracket(Vec2 y) const {
    const double pull = distance_pullback(y);
    return {pull / L_F_, pull * L_F_};
}

double ImageSet::distance_upper(Vec2 y) const {
    return std::min(distance_direct(y), L_F_ * distance_pullback(y));
}

namespace {

struct ImageShot {
    Vec2 origin;
    Vec2 direction;
};

std::vector<ImageShot> image_shots(std::span<const BoundarySample> samples, const Diffeomorphism& F) {
    std::vector<ImageShot> shots;
    for (const BoundarySample& bs : samples) {
        const Vec2 origin = F.forward(bs.point);
        if (bs.isolated) {
            // isolated points stay isolated; every direction remains a candidate
            for (const Vec2& u : bs.normals) shots.push_back({origin, u});
        } else {
            const Mat2 J = F.jacobian(bs.point);
            for (const Vec2& u : bs.normals) shots.push_back({origin, transport_normal(J, u)});
        }
    }
    return shots;
}

} // namespace

namespace {

void validate_run_inputs(const ExperimentConfig& cfg) {
    if (!(cfg.densities.h_b > 0.0) || !(cfg.densities.h_g > 0.0))
        fail(errc::bad_input, "densities h_b and h_g must be positive");
    if (cfg.densities.n_dir < 1) fail(errc::bad_input, "n_dir must be >= 1");
    if (!(cfg.tolerances.tau_bis > 0.0)) fail(errc::bad_input, "tau_bis must be positive");
    if (!(cfg.tolerances.tau_angle >= 0.0)) fail(errc::bad_input, "tau_angle must be nonnegative");
}

} // namespace

RunRecord run_verify(const ExperimentConfig& cfg) {
    const auto t_start = std::chrono::steady_clock::now();
    validate_run_inputs(cfg);

    const Shape& S = cfg.shape;
    const double r = S.radius();
    const double h_b = cfg.densities.h_b;
    const double h_g = cfg.densities.h_g;
    const double tau_bis = cfg.tolerances.tau_bis;

    const Diffeomorphism F(build_displacement(cfg.diffeo, S.center(), r));

    RunRecord rec;
    rec.audit = certify_constants(F, cfg.audit_probes, cfg.seed);
    rec.constants = F.constants();
    const DiffeoConstants& k = rec.constants;

    RegimeFlags flags;
    flags.eps2_lt_1 = k.eps2 < 1.0;
    flags.small_distortion = r * k.L_DF * k.L_F * k.L_F <= 0.5;
    flags.banach_regime = r * k.eps_banach <= 0.25;
    if (!flags.eps2_lt_1) fail(errc::out_of_regime, "violated: eps2 < 1");
    if (!flags.small_distortion) fail(errc::out_of_regime, "violated: r * L_DF * L_F^2 <= 1/2");

    const auto samples = sample_boundary(S, h_b, cfg.densities.n_dir);
    rec.raw_source = shoot_raw(S, samples, tau_bis);
    if (rec.raw_source.empty()) fail(errc::no_axis, "source medial cloud is empty");
    rec.cloud_source.samples = dedup_samples(rec.raw_source, 0.5 * h_b);
    rec.cloud_source.source = CloudSource::shooting;
    rec.cloud_source.h_b = h_b;
    rec.cloud_source.n_dir = cfg.densities.n_dir;

    const ImageSet img(S, F, h_b, cfg.resolved_tau_inv());
    const auto img_dist = [&](Vec2 y) { return img.distance_upper(y); };
    RangeOptions img_opt;
    img_opt.lambda_max = 2.0 * r;
    img_opt.tau_bis = tau_bis;
    img_opt.deficit_tolerance = tau_bis * k.L_F * k.L_F;

    const auto shots = image_shots(samples, F);
    rec.raw_image.reserve(shots.size());
    for (const ImageShot& s : shots) {
        const ProjectionRange pr = projection_range_over(img_dist, s.origin, s.direction, img_opt);
        if (pr.status == RangeStatus::finite && pr.lambda > 0.0)
            rec.raw_image.push_back({s.origin + pr.lambda * s.direction, pr.lambda, s.origin, s.direction});
    }
    if (rec.raw_image.empty()) fail(errc::no_axis, "image medial cloud is empty");
    rec.cloud_image.samples = dedup_samples(rec.raw_image, 0.5 * h_b);
    rec.cloud_image.source = CloudSource::shooting;
    rec.cloud_image.h_b = h_b;
    rec.cloud_image.n_dir = cfg.densities.n_dir;

    const auto src_centers = sample_centers(rec.raw_source);
    const auto img_centers = sample_centers(rec.raw_image);
    rec.measured_dH = hausdorff(src_centers, img_centers);
    rec.slack = 2.0 * (h_b + h_g);

    double rho_max = 0.0;
    for (const MedialSample& s : rec.raw_source) rho_max = std::max(rho_max, s.radius);

    BoundReport& bnd = rec.bounds;
    bnd.regime = flags;
    const auto interval = rho_prime_interval(rho_max, k.L_F, k.L_DF);
    bnd.rho1 = interval.first;
    bnd.rho2 = interval.second;
    bnd.hausdorff_bound = hausdorff_bound_main(r, k.L_F, k.L_DF, k.eps1, k.eps2);
    bnd.banach_leading = banach_bound(r, k.eps_banach).leading;
    bnd.measured_dH = rec.measured_dH;
    bnd.margin = bnd.hausdorff_bound + rec.slack - rec.measured_dH;

    const double cos_floor = angle_cosine_floor(k.eps2);
    const double pair_tol_base = tau_bis * k.L_F * k.L_F;
    bool all_pairs_ok = true;
    rec.pairs.reserve(rec.raw_source.size());
    for (const MedialSample& s : rec.raw_source) {
        const Mat2 J = F.jacobian(s.witness);
        const Vec2 u_prime = transport_normal(J, s.direction);
        const Vec2 origin = F.forward(s.witness);
        const ProjectionRange pr = projection_range_over(img_dist, origin, u_prime, img_opt);
        if (pr.status != RangeStatus::finite || !(pr.lambda > 0.0)) {
            // discretization near the bounding circle can push the matched
            // direction over the sentinel; dropped pairs are counted, not judged
            ++rec.dropped_pairs;
            continue;
        }
        PairSample pair;
        pair.p = s.witness;
        pair.u = s.direction;
        pair.u_prime = u_prime;
        pair.rho = s.radius;
        pair.rho_prime = pr.lambda;
        pair.cosine = std::clamp(s.direction.dot(u_prime), -1.0, 1.0);
        pair.c_dist = dist(s.center, origin + pr.lambda * u_prime);

        const auto [rho1, rho2] = rho_prime_interval(s.radius, k.L_F, k.L_DF);
        // sampled-image representation bias: the image is an h_b * L_F net of
        // F(S), so measured ranges inflate by at most the chord sagitta
        const double rep_slack =
            (h_b * k.L_F) * (h_b * k.L_F) / (2.0 * std::max(pair.rho_prime, h_b));
        const double tol = pair_tol_base + rep_slack;
        const bool ok_interval = pair.rho_prime >= rho1 - tol && pair.rho_prime <= rho2 + tol;
        const bool ok_cosine = pair.cosine >= cos_floor - 1e-10;
        const bool ok_center = pair.c_dist <= bnd.hausdorff_bound + 2.0 * tau_bis + rep_slack;
        pair.bound_ok = ok_interval && ok_cosine && ok_center;
        all_pairs_ok = all_pairs_ok && pair.bound_ok;
        rec.pairs.push_back(pair);
    }

    rec.pass = all_pairs_ok && rec.measured_dH <= bnd.hausdorff_bound + rec.slack && !rec.pairs.empty();
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return rec;
}

namespace {

ExperimentConfig with_magnitude(const ExperimentConfig& cfg, double magnitude) {
    ExperimentConfig out = cfg;
    if (cfg.diffeo.family == "bump") {
        Vec2 dir = cfg.diffeo.v;
        dir = dir.norm() > 0.0 ? dir.normalized() : Vec2{1.0, 0.0};
        out.diffeo.v = dir * magnitude;
    } else if (cfg.diffeo.family == "twist") {
        out.diffeo.theta = magnitude;
    } else if (magnitude != 0.0) {
        fail(errc::bad_family, "sweep needs a bump or twist family");
    }
    return out;
}

} // namespace

SweepReport run_sweep(const ExperimentConfig& cfg) {
    if (cfg.sweep_magnitudes.size() < 5)
        fail(errc::bad_input, "sweep requires at least 5 magnitude grid points");

    SweepReport report;
    report.magnitudes = cfg.sweep_magnitudes;
    bool all_pass = true;
    bool regime_ok = true;
    for (const double m : cfg.sweep_magnitudes) {
        RunRecord rec = run_verify(with_magnitude(cfg, m));
        report.eps_values.push_back(rec.constants.eps_banach);
        report.dh_values.push_back(rec.measured_dH);
        all_pass = all_pass && rec.pass;
        regime_ok = regime_ok && rec.bounds.regime.banach_regime;
        report.runs.push_back(std::move(rec));
    }

    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < report.eps_values.size(); ++i) {
        if (report.eps_values[i] > 0.0 && report.dh_values[i] > 0.0) {
            lx.push_back(std::log(report.eps_values[i]));
            ly.push_back(std::log(report.dh_values[i]));
        }
    }
    if (lx.size() >= 2) {
        const LinearFit fit = linear_fit(lx, ly);
        report.loglog_slope = fit.slope;
        report.loglog_slope_stderr = fit.slope_stderr;
        report.loglog_r2 = fit.r2;
    }
    report.pass = all_pass && regime_ok;
    return report;
}

ExperimentConfig scale_config(const ExperimentConfig& cfg, double lambda) {
    if (!(lambda > 0.0)) fail(errc::bad_input, "scaling factor must be positive");
    const Vec2 c0 = cfg.shape.center();
    const auto scale_point = [&](Vec2 p) { return c0 + (p - c0) * lambda; };

    std::vector<Primitive> prims;
    for (const Primitive& prim : cfg.shape.primitives()) {
        if (const auto* pt = std::get_if<SinglePoint>(&prim)) {
            prims.push_back(SinglePoint{scale_point(pt->p)});
        } else if (const auto* sg = std::get_if<Segment>(&prim)) {
            prims.push_back(Segment{scale_point(sg->a), scale_point(sg->b)});
        } else {
            const auto& ci = std::get<Circle>(prim);
            prims.push_back(Circle{scale_point(ci.center), ci.radius * lambda});
        }
    }
    ExperimentConfig out(Shape(std::move(prims), Circle{c0, cfg.shape.radius() * lambda}));
    out.diffeo = cfg.diffeo;
    if (cfg.diffeo.family == "bump") out.diffeo.v = cfg.diffeo.v * lambda;
    out.densities = cfg.densities;
    out.densities.h_b *= lambda;
    out.densities.h_g *= lambda;
    out.tolerances = cfg.tolerances;
    out.tolerances.tau_bis *= lambda;
    if (out.tolerances.tau > 0.0) out.tolerances.tau *= lambda;
    if (out.tolerances.delta > 0.0) out.tolerances.delta *= lambda;
    if (out.tolerances.tau_inv > 0.0) out.tolerances.tau_inv *= lambda;
    if (out.tolerances.tau_grid > 0.0) out.tolerances.tau_grid *= lambda;
    if (out.tolerances.delta_grid > 0.0) out.tolerances.delta_grid *= lambda;
    out.seed = cfg.seed;
    out.mode = cfg.mode;
    out.sweep_magnitudes = cfg.sweep_magnitudes;
    out.scaling_lambdas = cfg.scaling_lambdas;
    out.demo_windows = cfg.demo_windows;
    out.demo = cfg.demo;
    out.audit_probes = cfg.audit_probes;
    return out;
}

ScalingReport run_scaling(const ExperimentConfig& cfg) {
    if (cfg.scaling_lambdas.empty()) fail(errc::bad_input, "scaling requires a lambda list");

    ScalingReport report;
    report.lambdas = cfg.scaling_lambdas;

    const RunRecord base = run_verify(cfg);
    bool ok = base.pass;
    for (const double lambda : cfg.scaling_lambdas) {
        RunRecord rec = lambda == 1.0 ? base : run_verify(scale_config(cfg, lambda));
        const double leading_ratio = rec.bounds.banach_leading / base.bounds.banach_leading;
        const double dh_ratio = base.measured_dH > 0.0 ? rec.measured_dH / base.measured_dH
                                                       : std::numeric_limits<double>::quiet_NaN();
        report.leading_ratio.push_back(leading_ratio);
        report.dh_ratio.push_back(dh_ratio);
        ok = ok && rec.pass && std::abs(leading_ratio - lambda) <= 1e-12 * lambda;
        // measured d_H must scale within the (scaled) sampling slack
        ok = ok && std::abs(rec.measured_dH - lambda * base.measured_dH) <=
                       2.0 * lambda * (cfg.densities.h_b + cfg.densities.h_g);
        report.runs.push_back(std::move(rec));
    }
    report.pass = ok;
    return report;
}

UnboundedReport run_demo_unbounded(const ExperimentConfig& cfg) {
    if (cfg.demo_windows.size() < 2) fail(errc::bad_input, "demo requires at least 2 window sizes");
    std::vector<double> windows = cfg.demo_windows;
    std::sort(windows.begin(), windows.end());

    const Vec2 p = cfg.demo.p;
    const Vec2 q = cfg.demo.q;
    const Vec2 q_pert = rotate(q, cfg.demo.rotate_q_by);
    if (dist(q, q_pert) == 0.0) fail(errc::bad_input, "demo perturbation must move the second point");

    const std::vector<Primitive> orig{SinglePoint{p}, SinglePoint{q}};
    const std::vector<Primitive> pert{SinglePoint{p}, SinglePoint{q_pert}};
    const double pq = dist(p, q);

    UnboundedReport report;
    report.windows = windows;
    for (const double w : windows) {
        const int n = cfg.demo.grid_per_axis;
        const double h = 2.0 * w / n;
        const double tau_w = 4.0 * pq / n;
        const double delta_w = std::max(8.0 * tau_w, 0.25 * pq);
        const Vec2 lo{-w, -w}, hi{w, w};
        const auto ax_orig = grid_oracle_window(orig, lo, hi, h, tau_w, delta_w);
        const auto ax_pert = grid_oracle_window(pert, lo, hi, h, tau_w, delta_w);
        if (ax_orig.empty() || ax_pert.empty()) fail(errc::no_axis, "window oracle found no axis points");
        report.directed.push_back(
            hausdorff_directed(sample_centers(ax_pert), sample_centers(ax_orig)));
    }

    report.monotone = true;
    for (std::size_t i = 1; i < report.directed.size(); ++i)
        report.monotone = report.monotone && report.directed[i] > report.directed[i - 1];

    const LinearFit fit = linear_fit(report.windows, report.directed);
    report.slope = fit.slope;
    report.intercept = fit.intercept;
    report.r2 = fit.r2;
    report.pass = report.monotone && report.slope > 0.0 && report.r2 > 0.99;
    return report;
}

OracleCompareReport run_oracle_compare(const ExperimentConfig& cfg) {
    OracleCompareReport report;
    const MedialCloud shooting =
        shoot_medial_cloud(cfg.shape, cfg.densities.h_b, cfg.densities.n_dir, cfg.tolerances.tau_bis);
    const MedialCloud oracle = grid_medial_oracle(cfg.shape, cfg.densities.h_g,
                                                  cfg.resolved_tau_grid(), cfg.resolved_delta_grid());
    if (shooting.samples.empty() || oracle.samples.empty())
        fail(errc::no_axis, "empty cloud in oracle comparison");
    const auto a = cloud_centers(shooting);
    const auto b = cloud_centers(oracle);
    report.dh = hausdorff(a, b);
    report.threshold = 2.0 * (cfg.densities.h_g + cfg.densities.h_b);
    report.shooting_size = shooting.samples.size();
    report.oracle_size = oracle.samples.size();
    report.pass = report.dh <= report.threshold;
    return report;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) fail(errc::bad_input, "linear_fit needs >= 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) fail(errc::bad_input, "linear_fit on degenerate abscissae");
    LinearFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double mean_y = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double pred = fit.slope * x[i] + fit.intercept;
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
    }
    fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    if (x.size() > 2) {
        const double sxx_centered = sxx - sx * sx / n;
        if (sxx_centered > 0.0)
            fit.slope_stderr = std::sqrt(ss_res / (n - 2.0) / sxx_centered);
    }
    return fit;
}

} // namespace medax

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <random>

#include "doctest.h"

#include "corpus.hpp"
#include "medax/harness.hpp"
#include "medax/io.hpp"

using namespace medax;

namespace {

ExperimentConfig base_config(Shape shape, double h = 0.1) {
    ExperimentConfig cfg(std::move(shape));
    cfg.densities.h_b = h;
    cfg.densities.h_g = h;
    cfg.densities.n_dir = 128;
    cfg.tolerances.tau_bis = 1e-8;
    cfg.seed = 42;
    cfg.audit_probes = 1024;
    return cfg;
}

ExperimentConfig bump_config(double vx, double h = 0.1) {
    ExperimentConfig cfg = base_config(corpus::circle_plus_center(3.0), h);
    cfg.diffeo.family = "bump";
    cfg.diffeo.v = {vx, 0.0};
    cfg.diffeo.t0 = 0.5;
    return cfg;
}

} // namespace

TEST_CASE("identity run: zero bound, sampling-floor distance, pass") {
    ExperimentConfig cfg = base_config(corpus::circle_plus_center(3.0));
    const RunRecord rec = run_verify(cfg);
    CHECK(rec.bounds.hausdorff_bound == 0.0);   // radicand is exactly zero
    CHECK(rec.measured_dH <= rec.slack);
    CHECK(rec.measured_dH <= 1e-3);             // far below the slack: pure sampling noise
    CHECK(rec.pass);
    CHECK(rec.dropped_pairs == 0);
    CHECK(!rec.pairs.empty());
    for (const PairSample& p : rec.pairs) {
        CHECK(p.bound_ok);
        CHECK(p.cosine >= 1.0 - 1e-10);
        CHECK(std::abs(p.rho_prime - p.rho) <= 0.01);
    }
}

TEST_CASE("bump run on circle+center passes with honest margins") {
    const RunRecord rec = run_verify(bump_config(0.02));
    CHECK(rec.pass);
    CHECK(rec.bounds.hausdorff_bound > 0.0);
    CHECK(rec.measured_dH > 0.0);
    CHECK(rec.measured_dH <= rec.bounds.hausdorff_bound + rec.slack);
    CHECK(rec.bounds.regime.banach_regime);
    // the measured displacement of the axis is about |v|/2, well below the bound
    CHECK(rec.measured_dH <= 0.1);
    for (const PairSample& p : rec.pairs) CHECK(p.bound_ok);
}

TEST_CASE("stronger bump with a wide taper stays inside the regime and passes") {
    ExperimentConfig cfg = bump_config(0.05);
    cfg.diffeo.t0 = 0.4;   // t0 = 0.5 pushes r * L_DF * L_F^2 past 1/2 at this magnitude
    const RunRecord rec = run_verify(cfg);
    CHECK(rec.pass);
    CHECK(rec.bounds.regime.small_distortion);
    for (const PairSample& p : rec.pairs) {
        CHECK(p.bound_ok);
        CHECK(p.c_dist <= rec.bounds.hausdorff_bound + 2.0 * cfg.tolerances.tau_bis + 1e-3);
    }
}

TEST_CASE("twist run on two points passes") {
    ExperimentConfig cfg = base_config(corpus::two_points(3.0));
    cfg.diffeo.family = "twist";
    cfg.diffeo.theta = 0.002;
    const RunRecord rec = run_verify(cfg);
    CHECK(rec.pass);
    for (const PairSample& p : rec.pairs) CHECK(p.bound_ok);
}

TEST_CASE("regime violations abort with OutOfRegime") {
    ExperimentConfig cfg = bump_config(0.3);   // contraction, but far outside the theorem regime
    CHECK_THROWS_AS(run_verify(cfg), Error);
    try {
        run_verify(cfg);
    } catch (const Error& e) {
        CHECK(e.code() == errc::out_of_regime);
    }
}

TEST_CASE("image set: certified bracket and plateau-exact image") {
    const double vx = 0.02;
    const ExperimentConfig cfg = bump_config(vx, 0.05);
    const Diffeomorphism F(build_displacement(cfg.diffeo, {0, 0}, 3.0));
    const ImageSet img(cfg.shape, F, 0.05, 1e-12 * 3.0);

    SUBCASE("bracket sandwiches the direct refinement") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> coord(-3.0, 3.0);
        for (int i = 0; i < 500; ++i) {
            const Vec2 y{coord(rng), coord(rng)};
            const auto [lo, hi] = img.certified_bracket(y);
            CHECK(lo <= hi + 1e-12);
            const double est = img.distance_upper(y);
            CHECK(est >= lo - 1e-9);
            CHECK(est <= hi + 1e-9);
            CHECK(img.distance_direct(y) >= lo - 1e-9);
        }
    }

    SUBCASE("the bump keeps the centre point inside the plateau: image is exact") {
        // exact image shape: same bounding circle, centre moved to v
        const Shape exact_image({Circle{{0, 0}, 3.0}, SinglePoint{{vx, 0.0}}}, Circle{{0, 0}, 3.0});
        std::mt19937_64 rng(6);
        std::uniform_real_distribution<double> coord(-3.0, 3.0);
        const double L = F.constants().L_F;
        for (int i = 0; i < 500; ++i) {
            const Vec2 y{coord(rng), coord(rng)};
            const double d_exact = distance(exact_image, y);
            const auto [lo, hi] = img.certified_bracket(y);
            CHECK(d_exact >= lo - 1e-9);
            CHECK(d_exact <= hi + 1e-9);
            // true upper estimate; bias bounded by the better of the pullback
            // distortion (near the set) and the sample-net sagitta (far field)
            const double est = img.distance_upper(y);
            CHECK(est >= d_exact - 1e-9);
            const double sag = (0.05 * L) * (0.05 * L) / (4.0 * std::max(d_exact, 0.05 * L));
            const double bias = std::min((L * L - 1.0) * d_exact, sag);
            CHECK(est <= d_exact + bias + 1e-9);
        }

        // full pipeline cross-check: harness image cloud vs the exact image's
        // own shooting cloud
        const RunRecord rec = run_verify(cfg);
        const MedialCloud exact_cloud = shoot_medial_cloud(exact_image, 0.05, 128, 1e-8);
        const double dh =
            hausdorff(cloud_centers(rec.cloud_image), cloud_centers(exact_cloud));
        CHECK(dh <= 2.0 * 0.05);
    }
}

TEST_CASE("sweep: slope fit and per-run verdicts") {
    ExperimentConfig cfg = bump_config(0.01);
    cfg.sweep_magnitudes = {0.0, 0.00075, 0.0015, 0.003, 0.006};
    const SweepReport rep = run_sweep(cfg);
    REQUIRE(rep.runs.size() == 5);
    CHECK(rep.pass);
    // identity endpoint sits at the sampling noise floor
    CHECK(rep.runs[0].measured_dH <= 1e-3);
    // log-log slope of d_H against eps is at most ~linear
    CHECK(rep.loglog_slope <= 1.1);
    CHECK(rep.loglog_slope > 0.0);
    for (std::size_t i = 0; i < rep.runs.size(); ++i) {
        const RunRecord& r = rep.runs[i];
        CHECK(r.measured_dH <= r.bounds.hausdorff_bound + r.slack);
        // leading-constant ceiling from the Banach form
        CHECK(r.measured_dH <= banach_bound(3.0, r.constants.eps_banach).leading + r.slack);
    }
    CHECK_THROWS_AS(run_sweep(base_config(corpus::circle_only(3.0))), Error);  // < 5 points
}

TEST_CASE("scaling homogeneity") {
    ExperimentConfig cfg = bump_config(0.02);
    cfg.scaling_lambdas = {1.0, 2.0};
    const ScalingReport rep = run_scaling(cfg);
    REQUIRE(rep.lambdas.size() == 2);
    CHECK(rep.pass);
    CHECK(std::abs(rep.leading_ratio[0] - 1.0) <= 1e-15);
    CHECK(std::abs(rep.leading_ratio[1] - 2.0) <= 2e-12);
    CHECK(std::abs(rep.dh_ratio[1] - 2.0) <= 2.0 * (0.1 + 0.1) / rep.runs[0].measured_dH * 2.0);

    SUBCASE("scaled config scales lengths exactly") {
        const ExperimentConfig scaled = scale_config(cfg, 2.0);
        CHECK(scaled.shape.radius() == 6.0);
        CHECK(scaled.densities.h_b == 0.2);
        CHECK(scaled.diffeo.v.x == 0.04);
        CHECK(scaled.tolerances.tau_bis == 2e-8);
    }
}

TEST_CASE("unbounded demo grows linearly") {
    ExperimentConfig cfg = base_config(corpus::two_points(3.0));
    cfg.demo_windows = {4.0, 8.0, 12.0, 16.0, 20.0};
    cfg.demo.grid_per_axis = 512;
    const UnboundedReport rep = run_demo_unbounded(cfg);
    CHECK(rep.monotone);
    CHECK(rep.slope > 0.0);
    CHECK(rep.r2 > 0.99);
    CHECK(rep.pass);
}

TEST_CASE("oracle compare on the corpus") {
    for (Shape s : {corpus::circle_plus_center(3.0), corpus::segment_plus_circle(3.0)}) {
        ExperimentConfig cfg = base_config(std::move(s), 0.05);
        const OracleCompareReport rep = run_oracle_compare(cfg);
        CHECK(rep.pass);
        CHECK(rep.dh <= rep.threshold);
    }
}

TEST_CASE("determinism: identical config and seed give identical CSV bytes") {
    const ExperimentConfig cfg = bump_config(0.02);
    const RunRecord a = run_verify(cfg);
    const RunRecord b = run_verify(cfg);
    CHECK(samples_csv(a.pairs) == samples_csv(b.pairs));
    CHECK(cloud_csv(a.cloud_source) == cloud_csv(b.cloud_source));
    CHECK(cloud_csv(a.cloud_image) == cloud_csv(b.cloud_image));
}

TEST_CASE("config serialization round trip") {
    ExperimentConfig cfg = bump_config(0.025);
    cfg.mode = RunMode::sweep;
    cfg.sweep_magnitudes = {0.001, 0.002, 0.003, 0.004, 0.005};
    cfg.seed = 77;
    const std::string text = config_to_json_text(cfg);
    const ExperimentConfig back = config_from_json_text(text);
    CHECK(back.mode == RunMode::sweep);
    CHECK(back.diffeo.family == "bump");
    CHECK(back.diffeo.v.x == 0.025);
    CHECK(back.densities.h_b == cfg.densities.h_b);
    CHECK(back.seed == 77);
    CHECK(back.sweep_magnitudes == cfg.sweep_magnitudes);
    CHECK(back.shape.radius() == 3.0);
    CHECK(config_hash(back) == config_hash(cfg));

    // a changed field changes the hash
    ExperimentConfig other = cfg;
    other.seed = 78;
    CHECK(config_hash(other) != config_hash(cfg));
}

TEST_CASE("shape loader diagnostics name the offending primitive") {
    const std::string bad = R"({
      "bounding": {"center": [0, 0], "radius": 2.0},
      "primitives": [{"type": "point", "p": [0, 0]}, {"type": "point", "p": [5, 0]}]
    })";
    CHECK_THROWS_WITH_AS(shape_from_json_text(bad), doctest::Contains("primitive 1"), Error);

    const std::string unknown = R"({
      "bounding": {"center": [0, 0], "radius": 2.0},
      "primitives": [{"type": "blob"}]
    })";
    CHECK_THROWS_WITH_AS(shape_from_json_text(unknown), doctest::Contains("unknown type"), Error);

    const std::string garbage = "{not json";
    CHECK_THROWS_AS(config_from_json_text(garbage), Error);
}

TEST_CASE("serialized floats carry 17 significant digits") {
    CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
    PairSample p;
    p.p = {1.0 / 3.0, 0.1};
    p.rho = M_PI;
    const std::string csv = samples_csv(std::span<const PairSample>(&p, 1));
    CHECK(csv.find("0.33333333333333331") != std::string::npos);
    CHECK(csv.find("3.1415926535897931") != std::string::npos);
    CHECK(csv.rfind("px,py,ux,uy,rho,rho_prime,cosine,c_dist,bound_ok\n", 0) == 0);
}

TEST_CASE("cli exit-code contract" * doctest::skip(std::getenv("MEDAX_CLI") == nullptr)) {
    const char* cli = std::getenv("MEDAX_CLI");
    REQUIRE(cli != nullptr);
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "medax-cli-exit";
    fs::create_directories(dir);
    const auto run = [&](const std::string& sub, const std::string& cfg_text) {
        const fs::path p = dir / (sub + ".json");
        write_text_file(p.string(), cfg_text);
        const std::string cmd =
            "\"" + std::string(cli) + "\" " + sub + " --config \"" + p.string() + "\" > /dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };

    // pass -> 0
    ExperimentConfig ok = bump_config(0.02);
    CHECK(run("verify", config_to_json_text(ok)) == 0);
    // regime violation -> 2
    ExperimentConfig regime = bump_config(0.3);
    CHECK(run("verify", config_to_json_text(regime)) == 2);
    // malformed input -> 3
    CHECK(run("verify", "{broken") == 3);
    ExperimentConfig badfam = base_config(corpus::circle_only(3.0));
    badfam.diffeo.family = "warp";
    CHECK(run("verify", config_to_json_text(badfam)) == 3);
    // bounds evaluator mode -> 0 with a constants block
    ExperimentConfig bounds_cfg = base_config(corpus::circle_only(3.0));
    BoundInput in;
    in.r = 1.0;
    in.rho = 1.0;
    in.L_F = 1.1;
    in.L_DF = 0.1;
    in.eps1 = 0.01;
    in.eps2 = 0.1;
    in.eps_banach = 0.1;
    bounds_cfg.bound_input = in;
    CHECK(run("bounds", config_to_json_text(bounds_cfg)) == 0);
}

TEST_CASE("probed ranges serialize with status names") {
    const ExperimentConfig cfg = base_config(corpus::circle_only(3.0), 2.0);
    const auto samples = sample_boundary(cfg.shape, 2.0, 8);
    const auto ranges = probe_ranges(cfg.shape, samples, 1e-8);
    REQUIRE(!ranges.empty());
    bool seen_finite = false, seen_unbounded = false;
    for (const ProjectionRange& r : ranges) {
        seen_finite = seen_finite || r.status == RangeStatus::finite;
        seen_unbounded = seen_unbounded || r.status == RangeStatus::unbounded;
    }
    CHECK(seen_finite);
    CHECK(seen_unbounded);
    const std::string csv = ranges_csv(ranges);
    CHECK(csv.rfind("px,py,ux,uy,lambda,status,iterations\n", 0) == 0);
    CHECK(csv.find("finite") != std::string::npos);
    CHECK(csv.find("unbounded") != std::string::npos);
}

TEST_CASE("svg rendering contains shape and cloud elements") {
    const ExperimentConfig cfg = base_config(corpus::circle_plus_center(3.0));
    const MedialCloud cloud = shoot_medial_cloud(cfg.shape, 0.3, 16, 1e-6);
    const std::string svg = render_svg(cfg.shape, cloud, nullptr);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("circle") != std::string::npos);
    CHECK(svg.find("#1c8a3a") != std::string::npos);
}

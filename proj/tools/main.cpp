#include <cstdio>
#include <filesystem>
#include <string>

#include "CLI11.hpp"
#include "medax/io.hpp"

namespace fs = std::filesystem;
using namespace medax;

namespace {

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;      // a certified bound was violated
constexpr int exit_regime = 2;    // a theorem hypothesis does not hold
constexpr int exit_input = 3;     // bad config / input

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    long long seed = -1;
    bool svg = false;
};

void apply_overrides(ExperimentConfig& cfg, const CliOptions& opt, RunMode mode) {
    cfg.mode = mode;
    if (opt.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opt.seed);
}

void ensure_out_dir(const std::string& dir) {
    if (dir.empty()) return;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) fail(errc::bad_input, "cannot create output directory '" + dir + "': " + ec.message());
}

std::string out_path(const std::string& dir, const char* name) {
    return (fs::path(dir) / name).string();
}

int do_verify(const ExperimentConfig& cfg, const CliOptions& opt) {
    const RunRecord rec = run_verify(cfg);
    const std::string summary = run_record_json(rec, cfg);
    std::puts(summary.c_str());
    if (!opt.out_dir.empty()) {
        ensure_out_dir(opt.out_dir);
        write_text_file(out_path(opt.out_dir, "run.json"), summary);
        write_text_file(out_path(opt.out_dir, "samples.csv"), samples_csv(rec.pairs));
        write_text_file(out_path(opt.out_dir, "clouds_source.csv"), cloud_csv(rec.cloud_source));
        write_text_file(out_path(opt.out_dir, "clouds_image.csv"), cloud_csv(rec.cloud_image));
        const auto samples = sample_boundary(cfg.shape, cfg.densities.h_b, cfg.densities.n_dir);
        write_text_file(out_path(opt.out_dir, "ranges.csv"),
                        ranges_csv(probe_ranges(cfg.shape, samples, cfg.tolerances.tau_bis)));
        if (opt.svg)
            write_text_file(out_path(opt.out_dir, "figure.svg"),
                            render_svg(cfg.shape, rec.cloud_source, &rec.cloud_image));
    }
    return rec.pass ? exit_pass : exit_fail;
}

int do_sweep(const ExperimentConfig& cfg, const CliOptions& opt) {
    const SweepReport rep = run_sweep(cfg);
    const std::string summary = sweep_report_json(rep, cfg);
    std::puts(summary.c_str());
    if (!opt.out_dir.empty()) {
        ensure_out_dir(opt.out_dir);
        write_text_file(out_path(opt.out_dir, "sweep.json"), summary);
        std::vector<PairSample> all_pairs;
        for (const RunRecord& r : rep.runs)
            all_pairs.insert(all_pairs.end(), r.pairs.begin(), r.pairs.end());
        write_text_file(out_path(opt.out_dir, "samples.csv"), samples_csv(all_pairs));
    }
    return rep.pass ? exit_pass : exit_fail;
}

int do_scaling(const ExperimentConfig& cfg, const CliOptions& opt) {
    const ScalingReport rep = run_scaling(cfg);
    const std::string summary = scaling_report_json(rep, cfg);
    std::puts(summary.c_str());
    if (!opt.out_dir.empty()) {
        ensure_out_dir(opt.out_dir);
        write_text_file(out_path(opt.out_dir, "scaling.json"), summary);
    }
    return rep.pass ? exit_pass : exit_fail;
}

int do_oracle_compare(const ExperimentConfig& cfg, const CliOptions& opt) {
    const OracleCompareReport rep = run_oracle_compare(cfg);
    const std::string summary = oracle_compare_json(rep);
    std::puts(summary.c_str());
    if (!opt.out_dir.empty()) {
        ensure_out_dir(opt.out_dir);
        write_text_file(out_path(opt.out_dir, "oracle_compare.json"), summary);
        const MedialCloud shooting =
            shoot_medial_cloud(cfg.shape, cfg.densities.h_b, cfg.densities.n_dir, cfg.tolerances.tau_bis);
        const MedialCloud oracle = grid_medial_oracle(cfg.shape, cfg.densities.h_g,
                                                      cfg.resolved_tau_grid(), cfg.resolved_delta_grid());
        write_text_file(out_path(opt.out_dir, "clouds_shooting.csv"), cloud_csv(shooting));
        write_text_file(out_path(opt.out_dir, "clouds_oracle.csv"), cloud_csv(oracle));
        if (opt.svg)
            write_text_file(out_path(opt.out_dir, "figure.svg"), render_svg(cfg.shape, shooting, &oracle));
    }
    return rep.pass ? exit_pass : exit_fail;
}

int do_demo(const ExperimentConfig& cfg, const CliOptions& opt) {
    const UnboundedReport rep = run_demo_unbounded(cfg);
    const std::string summary = unbounded_report_json(rep);
    std::puts(summary.c_str());
    if (!opt.out_dir.empty()) {
        ensure_out_dir(opt.out_dir);
        write_text_file(out_path(opt.out_dir, "demo_unbounded.json"), summary);
    }
    return rep.pass ? exit_pass : exit_fail;
}

int do_bounds(const ExperimentConfig& cfg, const CliOptions& opt) {
    if (!cfg.bound_input) fail(errc::bad_input, "bounds mode needs a 'bounds' constants block");
    const BoundInput& in = *cfg.bound_input;
    BoundReport rep;
    rep.regime.eps2_lt_1 = in.eps2 < 1.0;
    rep.regime.small_distortion = in.r * in.L_DF * in.L_F * in.L_F <= 0.5;
    rep.regime.banach_regime = in.r * in.eps_banach <= 0.25;
    const auto interval = rho_prime_interval(in.rho, in.L_F, in.L_DF);
    rep.rho1 = interval.first;
    rep.rho2 = interval.second;
    rep.hausdorff_bound = hausdorff_bound_main(in.r, in.L_F, in.L_DF, in.eps1, in.eps2);
    rep.banach_leading = banach_bound(in.r, in.eps_banach).leading;
    const std::string summary = bound_report_json(rep);
    std::puts(summary.c_str());
    if (!opt.out_dir.empty()) {
        ensure_out_dir(opt.out_dir);
        write_text_file(out_path(opt.out_dir, "bounds.json"), summary);
    }
    return exit_pass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"medax: medial axis engine with deformation-stability certification"};
    app.require_subcommand(1);

    CliOptions opt;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "experiment config (JSON)")->required();
        sub->add_option("--out", opt.out_dir, "output directory for reports");
        sub->add_option("--seed", opt.seed, "override the config seed");
        sub->add_flag("--svg", opt.svg, "also render figure.svg");
        return sub;
    };

    auto* verify = add_common(app.add_subcommand("verify", "certify one deformation experiment"));
    auto* sweep = add_common(app.add_subcommand("sweep", "magnitude sweep with log-log slope fit"));
    auto* scaling = add_common(app.add_subcommand("scaling", "scaling homogeneity check"));
    auto* oracle =
        add_common(app.add_subcommand("oracle-compare", "shooting cloud vs brute-force grid oracle"));
    auto* demo = add_common(
        app.add_subcommand("demo-unbounded", "two points without a bounding circle: unbounded drift"));
    auto* bounds = add_common(app.add_subcommand("bounds", "evaluate the closed-form bounds only"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_pass : exit_input;
    }

    try {
        ExperimentConfig cfg = config_from_file(opt.config_path);
        if (verify->parsed()) {
            apply_overrides(cfg, opt, RunMode::verify);
            return do_verify(cfg, opt);
        }
        if (sweep->parsed()) {
            apply_overrides(cfg, opt, RunMode::sweep);
            return do_sweep(cfg, opt);
        }
        if (scaling->parsed()) {
            apply_overrides(cfg, opt, RunMode::scaling);
            return do_scaling(cfg, opt);
        }
        if (oracle->parsed()) {
            apply_overrides(cfg, opt, RunMode::oracle_compare);
            return do_oracle_compare(cfg, opt);
        }
        if (demo->parsed()) {
            apply_overrides(cfg, opt, RunMode::demo_unbounded);
            return do_demo(cfg, opt);
        }
        if (bounds->parsed()) {
            apply_overrides(cfg, opt, RunMode::bounds_only);
            return do_bounds(cfg, opt);
        }
        return exit_input;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.code() == errc::out_of_regime ? exit_regime : exit_input;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_input;
    }
}

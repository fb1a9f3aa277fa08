// Acceptance suite: runs every certification criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion. Exit code is the
// number of failed criteria. Criteria that exercise the CLI need --cli PATH.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "medax/harness.hpp"
#include "medax/io.hpp"

namespace fs = std::filesystem;
using namespace medax;

namespace {

int g_failures = 0;

void report(int id, const char* label, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s -- %s\n", pass ? "PASS" : "FAIL", id, label, detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

Shape circle_only(double r = 3.0) { return Shape({Circle{{0, 0}, r}}, Circle{{0, 0}, r}); }
Shape circle_plus_center(double r = 3.0) {
    return Shape({Circle{{0, 0}, r}, SinglePoint{{0, 0}}}, Circle{{0, 0}, r});
}
Shape two_points(double r = 3.0) {
    return Shape({SinglePoint{{-1, 0}}, SinglePoint{{1, 0}}, Circle{{0, 0}, r}}, Circle{{0, 0}, r});
}
Shape segment_plus_circle(double r = 3.0) {
    return Shape({Segment{{-1, 0}, {1, 0}}, Circle{{0, 0}, r}}, Circle{{0, 0}, r});
}

ExperimentConfig standard_config(Shape shape) {
    ExperimentConfig cfg(std::move(shape));
    cfg.densities.h_b = 0.05;
    cfg.densities.h_g = 0.05;
    cfg.densities.n_dir = 256;
    cfg.tolerances.tau_bis = 1e-8;
    cfg.seed = 42;
    cfg.audit_probes = 2048;
    return cfg;
}

struct CliRunner {
    std::string cli_path;
    fs::path work_dir;

    bool available() const { return !cli_path.empty(); }

    int run(const std::string& subcommand, const ExperimentConfig& cfg, const fs::path& out_dir) const {
        const fs::path cfg_path = work_dir / (subcommand + "_config.json");
        write_text_file(cfg_path.string(), config_to_json_text(cfg));
        const std::string cmd = "\"" + cli_path + "\" " + subcommand + " --config \"" +
                                cfg_path.string() + "\" --out \"" + out_dir.string() +
                                "\" > /dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        if (status == -1) return -1;
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }
};

// ---- criterion 1: analytic axis fixture ------------------------------------

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const Shape cc = circle_plus_center(3.0);
    const double h_b = 0.05, tau_bis = 1e-8;
    const MedialCloud cloud = shoot_medial_cloud(cc, h_b, 256, tau_bis);

    std::vector<Vec2> exact;
    const int n = 4096;
    exact.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double a = 2.0 * M_PI * i / n;
        exact.push_back({1.5 * std::cos(a), 1.5 * std::sin(a)});
    }
    const double dh = hausdorff(cloud_centers(cloud), exact);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double tol = std::max(tau_bis, h_b);
    const bool pass = dh <= tol && seconds < 10.0;
    report(1, "analytic axis fixture", pass,
           "d_H(cloud, circle 1.5) = " + fmt(dh) + " <= " + fmt(tol) + ", " + fmt(seconds) + " s");
}

// ---- criterion 2: oracle agreement -----------------------------------------

void criterion_2() {
    struct Entry {
        const char* name;
        Shape shape;
    };
    Entry entries[] = {{"circle-only", circle_only()},
                       {"circle+center", circle_plus_center()},
                       {"two-points+circle", two_points()},
                       {"segment+circle", segment_plus_circle()}};
    const double h = 0.05;
    bool pass = true;
    std::string detail;
    for (Entry& e : entries) {
        ExperimentConfig cfg = standard_config(std::move(e.shape));
        const OracleCompareReport rep = run_oracle_compare(cfg);
        pass = pass && rep.pass;
        detail += std::string(e.name) + " d_H=" + fmt(rep.dh) + "; ";
    }
    detail += "threshold " + fmt(2.0 * (h + h));
    report(2, "shooting vs grid oracle on 4 shapes", pass, detail);
}

// ---- criterion 3: identity diffeomorphism ----------------------------------

void criterion_3(const CliRunner& cli) {
    ExperimentConfig cfg = standard_config(circle_plus_center());
    const RunRecord rec = run_verify(cfg);
    bool pass = rec.bounds.hausdorff_bound == 0.0 && rec.measured_dH <= rec.slack && rec.pass;
    std::string detail = "bound = " + fmt(rec.bounds.hausdorff_bound) +
                         ", measured = " + fmt(rec.measured_dH) + " <= slack " + fmt(rec.slack);
    if (cli.available()) {
        const int code = cli.run("verify", cfg, cli.work_dir / "identity_out");
        pass = pass && code == 0;
        detail += ", CLI exit " + std::to_string(code);
    } else {
        detail += ", CLI not provided";
        pass = false;
    }
    report(3, "identity gives zero bound and exit 0", pass, detail);
}

// ---- criteria 4 + 5: certification sweep and angle bound -------------------

void criteria_4_and_5() {
    struct FamilyGrid {
        const char* family;
        std::vector<double> magnitudes;
    };
    const FamilyGrid grids[] = {{"bump", {0.003, 0.008, 0.02}}, {"twist", {0.0008, 0.002, 0.005}}};
    struct Entry {
        const char* name;
        Shape (*make)(double);
    };
    const Entry shapes[] = {{"circle-only", &circle_only},
                            {"circle+center", &circle_plus_center},
                            {"two-points+circle", &two_points},
                            {"segment+circle", &segment_plus_circle}};

    int configs = 0, failing_runs = 0;
    long pair_count = 0, interval_violations = 0, cosine_violations = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    bool regime_ok = true;

    for (const Entry& entry : shapes) {
        for (const FamilyGrid& grid : grids) {
            for (const double m : grid.magnitudes) {
                ExperimentConfig cfg = standard_config(entry.make(3.0));
                cfg.diffeo.family = grid.family;
                if (std::string(grid.family) == "bump")
                    cfg.diffeo.v = {m, 0.0};
                else
                    cfg.diffeo.theta = m;
                const RunRecord rec = run_verify(cfg);
                ++configs;
                regime_ok = regime_ok && rec.constants.eps_banach * 3.0 <= 0.25;
                if (!(rec.measured_dH <= rec.bounds.hausdorff_bound + rec.slack) || !rec.pass)
                    ++failing_runs;
                worst_margin = std::min(worst_margin, rec.bounds.margin);

                const double k = rec.constants.L_F * rec.constants.L_F;
                const double tol = cfg.tolerances.tau_bis * k;
                const double floor = angle_cosine_floor(rec.constants.eps2);
                for (const PairSample& p : rec.pairs) {
                    ++pair_count;
                    const auto [rho1, rho2] =
                        rho_prime_interval(p.rho, rec.constants.L_F, rec.constants.L_DF);
                    if (!(p.rho_prime >= rho1 - tol && p.rho_prime <= rho2 + tol))
                        ++interval_violations;
                    if (!(p.cosine >= floor - 1e-10)) ++cosine_violations;
                }
            }
        }
    }

    const bool pass4 = configs >= 20 && failing_runs == 0 && interval_violations == 0 && regime_ok;
    report(4, "certification sweep (shape x family x magnitude)", pass4,
           std::to_string(configs) + " configs, " + std::to_string(failing_runs) +
               " failing runs, " + std::to_string(interval_violations) + "/" +
               std::to_string(pair_count) + " interval violations, worst margin " +
               fmt(worst_margin));
    const bool pass5 = pair_count >= 10000 && cosine_violations == 0;
    report(5, "angle bound across the sweep", pass5,
           std::to_string(pair_count) + " pairs, " + std::to_string(cosine_violations) +
               " below the cosine floor");
}

// ---- criterion 6: Banach asymptotics ---------------------------------------

void criterion_6() {
    ExperimentConfig cfg = standard_config(circle_plus_center());
    cfg.diffeo.family = "bump";
    cfg.diffeo.v = {1.0, 0.0};
    cfg.sweep_magnitudes = {0.00075, 0.0015, 0.003, 0.005, 0.0073};
    const SweepReport rep = run_sweep(cfg);
    const bool in_range = rep.eps_values.front() >= 1.9e-3 && rep.eps_values.back() <= 2.1e-2;
    const bool slope_ok = rep.loglog_slope <= 1.1;

    // evaluator-level ratio check at eps = 1e-4
    const double target = 1.0 + std::sqrt(50.0);
    const BoundInput in = constants_from_banach(1.0, 1e-4, 1e-4);
    const double ratio =
        hausdorff_bound_main(in.r, in.L_F, in.L_DF, in.eps1, in.eps2) / (in.r * in.r * 1e-4);
    const bool ratio_ok = std::abs(ratio - target) / target <= 0.05;

    report(6, "Banach asymptotics", in_range && slope_ok && ratio_ok && rep.pass,
           "eps in [" + fmt(rep.eps_values.front()) + ", " + fmt(rep.eps_values.back()) +
               "], slope = " + fmt(rep.loglog_slope) + " <= 1.1, bound/(r^2 eps) = " + fmt(ratio) +
               " vs " + fmt(target));
}

// ---- criterion 7: scaling homogeneity --------------------------------------

void criterion_7() {
    ExperimentConfig cfg = standard_config(circle_plus_center());
    cfg.diffeo.family = "bump";
    cfg.diffeo.v = {0.02, 0.0};
    cfg.scaling_lambdas = {1.0, 2.0, 5.0};
    const ScalingReport rep = run_scaling(cfg);
    bool pass = rep.pass;
    std::string detail;
    for (std::size_t i = 0; i < rep.lambdas.size(); ++i) {
        const double lambda = rep.lambdas[i];
        pass = pass && std::abs(rep.leading_ratio[i] - lambda) <= 1e-12 * lambda;
        const double dh_tol = 2.0 * lambda * (cfg.densities.h_b + cfg.densities.h_g);
        pass = pass && std::abs(rep.runs[i].measured_dH - lambda * rep.runs[0].measured_dH) <= dh_tol;
        detail += "lambda " + fmt(lambda) + ": leading x" + fmt(rep.leading_ratio[i]) + ", dH x" +
                  fmt(rep.dh_ratio[i]) + "; ";
    }
    report(7, "scaling homogeneity", pass, detail);
}

// ---- criterion 8: unbounded demo -------------------------------------------

void criterion_8() {
    ExperimentConfig cfg = standard_config(two_points());
    cfg.demo_windows = {4.0, 8.0, 12.0, 16.0, 20.0};
    cfg.demo.grid_per_axis = 1024;
    const UnboundedReport rep = run_demo_unbounded(cfg);
    report(8, "unbounded drift without the bounding circle", rep.pass,
           "monotone = " + std::string(rep.monotone ? "yes" : "no") + ", slope = " + fmt(rep.slope) +
               ", R^2 = " + fmt(rep.r2));
}

// ---- criterion 9: formula evaluators vs high precision ---------------------

void criterion_9() {
    const auto [rho1, rho2] = rho_prime_interval(1.0, 1.1, 0.1);
    const long double rho1_hp = 1.0L / (1.1L * 1.1L * 1.1L / 1.0L + 0.1L * 1.1L * 1.1L);
    const long double rho2_hp = (1.1L * 1.1L * 1.1L) / (1.0L / 1.0L - 0.1L * 1.1L * 1.1L);
    const double fed = federer_reach_bound(1.0, 1e6, 1.1, 1.1, 0.1);
    const long double fed_hp = [] {
        const long double second = 1.0L / ((1.1L / 1.0L + 0.1L) * 1.1L * 1.1L);
        const long double first = 1e6L / 1.1L;
        return first < second ? first : second;
    }();
    const bool ok1 = std::abs(rho1 - static_cast<double>(rho1_hp)) <= 1e-12 * rho1;
    const bool ok2 = std::abs(rho2 - static_cast<double>(rho2_hp)) <= 1e-12 * rho2;
    const bool ok3 = std::abs(fed - static_cast<double>(fed_hp)) <= 1e-12 * fed;
    report(9, "formula evaluators vs extended precision", ok1 && ok2 && ok3,
           "rho' = (" + fmt(rho1) + ", " + fmt(rho2) + "), federer = " + fmt(fed));
}

// ---- criterion 10: determinism ---------------------------------------------

void criterion_10(const CliRunner& cli) {
    if (!cli.available()) {
        report(10, "byte-identical sweep outputs", false, "CLI not provided");
        return;
    }
    ExperimentConfig cfg = standard_config(circle_plus_center());
    cfg.diffeo.family = "bump";
    cfg.diffeo.v = {1.0, 0.0};
    cfg.sweep_magnitudes = {0.00075, 0.0015, 0.003, 0.005, 0.0073};
    cfg.mode = RunMode::sweep;

    const fs::path out_a = cli.work_dir / "sweep_a";
    const fs::path out_b = cli.work_dir / "sweep_b";
    const int code_a = cli.run("sweep", cfg, out_a);
    const int code_b = cli.run("sweep", cfg, out_b);
    bool pass = code_a == 0 && code_b == 0;
    std::string detail = "exits " + std::to_string(code_a) + "/" + std::to_string(code_b);
    if (pass) {
        const std::string a = read_text_file((out_a / "samples.csv").string());
        const std::string b = read_text_file((out_b / "samples.csv").string());
        pass = !a.empty() && a == b;
        detail += ", samples.csv " + std::to_string(a.size()) + " bytes, " +
                  (a == b ? "identical" : "DIFFER");
    }
    report(10, "byte-identical sweep outputs", pass, detail);
}

} // namespace

int main(int argc, char** argv) {
    CliRunner cli;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") cli.cli_path = argv[i + 1];
    cli.work_dir = fs::temp_directory_path() / "medax-acceptance";
    std::error_code ec;
    fs::remove_all(cli.work_dir, ec);
    fs::create_directories(cli.work_dir, ec);

    try {
        criterion_1();
        criterion_2();
        criterion_3(cli);
        criteria_4_and_5();
        criterion_6();
        criterion_7();
        criterion_8();
        criterion_9();
        criterion_10(cli);
    } catch (const std::exception& e) {
        std::printf("[FAIL] acceptance aborted: %s\n", e.what());
        return 99;
    }

    std::printf("%s: %d criterion failure(s)\n", g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                g_failures);
    return g_failures;
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "medax/bounds.hpp"
#include "medax/diffeo.hpp"
#include "medax/geometry.hpp"
#include "medax/medial.hpp"

namespace medax {

enum class RunMode { verify, sweep, scaling, oracle_compare, demo_unbounded, bounds_only };

const char* run_mode_name(RunMode m);
RunMode run_mode_from_name(const std::string& name);

struct DiffeoSpec {
    std::string family = "identity";   // identity | bump | twist
    Vec2 v{};                          // bump translation
    double theta = 0.0;                // twist angle
    double t0 = 0.5;                   // taper plateau
};

struct Densities {
    double h_b = 0.05;
    int n_dir = 256;
    double h_g = 0.05;
};

struct Tolerances {
    double tau = -1.0;        // multiplicity tolerance; <=0: 1e-9 * r
    double delta = -1.0;      // witness separation; <=0: 1e-3 * r
    double tau_bis = 1e-8;
    double tau_inv = -1.0;    // <=0: 1e-12 * r
    double tau_angle = 1e-9;
    double tau_grid = -1.0;   // oracle multiplicity tolerance; <=0: h_g
    double delta_grid = -1.0; // oracle witness separation; <=0: 8 * h_g
};

struct DemoSpec {
    Vec2 p{-1.0, 0.0};
    Vec2 q{1.0, 0.0};
    double rotate_q_by = 0.2;      // generic perturbation: rotate q about the origin
    int grid_per_axis = 1024;
};

struct ExperimentConfig {
    Shape shape;
    DiffeoSpec diffeo;
    Densities densities;
    Tolerances tolerances;
    std::uint64_t seed = 0;
    RunMode mode = RunMode::verify;
    std::vector<double> sweep_magnitudes;
    std::vector<double> scaling_lambdas;
    std::vector<double> demo_windows;
    DemoSpec demo;
    std::optional<BoundInput> bound_input;   // bounds_only mode
    int audit_probes = 4096;

    explicit ExperimentConfig(Shape s) : shape(std::move(s)) {}

    double resolved_tau() const;
    double resolved_delta() const;
    double resolved_tau_inv() const;
    double resolved_tau_grid() const;
    double resolved_delta_grid() const;
};

DisplacementField build_displacement(const DiffeoSpec& spec, Vec2 center, double radius);

// Distance oracle for F(S): forward-mapped boundary samples refine a
// pullback-certified bracket d(F^-1 y, S)/L_F <= d(y, F(S)) <= L_F d(F^-1 y, S).
class ImageSet {
public:
    ImageSet(const Shape& base, const Diffeomorphism& diffeo, double h_b, double tau_inv);

    double distance_direct(Vec2 y) const;               // nearest forward sample (upper)
    double distance_pullback(Vec2 y) const;             // d(F^-1 y, S)
    std::pair<double, double> certified_bracket(Vec2 y) const;
    double distance_upper(Vec2 y) const;                // min(direct, L_F * pullback)

    const std::vector<Vec2>& samples() const { return pts_; }

private:
    const Shape* base_;
    const Diffeomorphism* diffeo_;
    double L_F_;
    double tau_inv_;
    std::vector<double> xs_, ys_;
    std::vector<Vec2> pts_;
};

struct PairSample {
    Vec2 p;           // boundary witness on S
    Vec2 u;           // unit back projection direction on S
    Vec2 u_prime;     // transported direction on F(S)
    double rho = 0.0;
    double rho_prime = 0.0;
    double cosine = 0.0;
    double c_dist = 0.0;
    bool bound_ok = false;
};

struct RunRecord {
    std::string config_hash;
    DiffeoConstants constants;
    AuditRecord audit;
    BoundReport bounds;
    std::vector<PairSample> pairs;
    std::vector<MedialSample> raw_source;
    std::vector<MedialSample> raw_image;
    MedialCloud cloud_source;
    MedialCloud cloud_image;
    double measured_dH = 0.0;
    double slack = 0.0;
    int dropped_pairs = 0;
    bool pass = false;
    double wall_seconds = 0.0;
};

RunRecord run_verify(const ExperimentConfig& config);

struct SweepReport {
    std::vector<double> magnitudes;
    std::vector<double> eps_values;   // eps_banach per run
    std::vector<double> dh_values;
    std::vector<RunRecord> runs;
    double loglog_slope = 0.0;
    double loglog_slope_stderr = 0.0;
    double loglog_r2 = 0.0;
    bool pass = false;
};

// Grid over the family magnitude (|v| for bump, theta for twist); at least
// five points. Fits the log-log slope of measured d_H against eps.
SweepReport run_sweep(const ExperimentConfig& config);

struct ScalingReport {
    std::vector<double> lambdas;
    std::vector<RunRecord> runs;
    std::vector<double> leading_ratio;   // banach leading bound ratio vs lambda = 1
    std::vector<double> dh_ratio;
    bool pass = false;
};

ScalingReport run_scaling(const ExperimentConfig& config);

ExperimentConfig scale_config(const ExperimentConfig& config, double lambda);

struct UnboundedReport {
    std::vector<double> windows;
    std::vector<double> directed;   // perturbed axis -> original axis, per window
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    bool monotone = false;
    bool pass = false;
};

UnboundedReport run_demo_unbounded(const ExperimentConfig& config);

struct OracleCompareReport {
    double dh = 0.0;
    double threshold = 0.0;
    std::size_t shooting_size = 0;
    std::size_t oracle_size = 0;
    bool pass = false;
};

OracleCompareReport run_oracle_compare(const ExperimentConfig& config);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    double slope_stderr = 0.0;
};

LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

} // namespace medax

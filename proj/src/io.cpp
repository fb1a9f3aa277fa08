#include "medax/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace medax {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

json vec_json(Vec2 v) { return json::array({v.x, v.y}); }

Vec2 vec_from(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(errc::bad_input, std::string(what) + " must be a [x, y] number pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

json primitive_json(const Primitive& prim) {
    json j;
    if (const auto* pt = std::get_if<SinglePoint>(&prim)) {
        j["type"] = "point";
        j["p"] = vec_json(pt->p);
    } else if (const auto* sg = std::get_if<Segment>(&prim)) {
        j["type"] = "segment";
        j["a"] = vec_json(sg->a);
        j["b"] = vec_json(sg->b);
    } else {
        const auto& ci = std::get<Circle>(prim);
        j["type"] = "circle";
        j["center"] = vec_json(ci.center);
        j["radius"] = ci.radius;
    }
    return j;
}

Primitive primitive_from(const json& j, std::size_t index) {
    const auto where = [&] { return "primitive " + std::to_string(index); };
    if (!j.is_object() || !j.contains("type"))
        fail(errc::bad_input, where() + " must be an object with a 'type' field");
    const std::string type = j["type"].get<std::string>();
    if (type == "point") {
        if (!j.contains("p")) fail(errc::bad_input, where() + " (point) needs field 'p'");
        return SinglePoint{vec_from(j["p"], "p")};
    }
    if (type == "segment") {
        if (!j.contains("a") || !j.contains("b"))
            fail(errc::bad_input, where() + " (segment) needs fields 'a' and 'b'");
        return Segment{vec_from(j["a"], "a"), vec_from(j["b"], "b")};
    }
    if (type == "circle") {
        if (!j.contains("center") || !j.contains("radius"))
            fail(errc::bad_input, where() + " (circle) needs fields 'center' and 'radius'");
        return Circle{vec_from(j["center"], "center"), j["radius"].get<double>()};
    }
    fail(errc::bad_input, where() + " has unknown type '" + type + "'");
}

Shape shape_from_json(const json& j) {
    if (!j.is_object() || !j.contains("bounding"))
        fail(errc::bad_input, "shape needs a 'bounding' circle");
    const json& b = j["bounding"];
    if (!b.contains("center") || !b.contains("radius"))
        fail(errc::bad_input, "shape bounding needs 'center' and 'radius'");
    const Circle bounding{vec_from(b["center"], "bounding center"), b["radius"].get<double>()};
    std::vector<Primitive> prims;
    if (j.contains("primitives")) {
        const json& arr = j["primitives"];
        if (!arr.is_array()) fail(errc::bad_input, "shape 'primitives' must be an array");
        for (std::size_t i = 0; i < arr.size(); ++i) prims.push_back(primitive_from(arr[i], i));
    }
    return Shape(std::move(prims), bounding);
}

json shape_json(const Shape& shape) {
    json j;
    j["bounding"] = {{"center", vec_json(shape.center())}, {"radius", shape.radius()}};
    json arr = json::array();
    for (const Primitive& prim : shape.primitives()) arr.push_back(primitive_json(prim));
    j["primitives"] = arr;
    return j;
}

json config_json(const ExperimentConfig& cfg) {
    json j;
    j["mode"] = run_mode_name(cfg.mode);
    j["shape"] = shape_json(cfg.shape);
    json d;
    d["family"] = cfg.diffeo.family;
    d["t0"] = cfg.diffeo.t0;
    if (cfg.diffeo.family == "bump") d["v"] = vec_json(cfg.diffeo.v);
    if (cfg.diffeo.family == "twist") d["theta"] = cfg.diffeo.theta;
    j["diffeo"] = d;
    j["densities"] = {{"h_b", cfg.densities.h_b}, {"n_dir", cfg.densities.n_dir}, {"h_g", cfg.densities.h_g}};
    j["tolerances"] = {{"tau", cfg.tolerances.tau},
                       {"delta", cfg.tolerances.delta},
                       {"tau_bis", cfg.tolerances.tau_bis},
                       {"tau_inv", cfg.tolerances.tau_inv},
                       {"tau_angle", cfg.tolerances.tau_angle},
                       {"tau_grid", cfg.tolerances.tau_grid},
                       {"delta_grid", cfg.tolerances.delta_grid}};
    j["seed"] = cfg.seed;
    j["audit_probes"] = cfg.audit_probes;
    if (!cfg.sweep_magnitudes.empty()) j["sweep"] = {{"magnitudes", cfg.sweep_magnitudes}};
    if (!cfg.scaling_lambdas.empty()) j["scaling"] = {{"lambdas", cfg.scaling_lambdas}};
    if (!cfg.demo_windows.empty()) j["windows"] = cfg.demo_windows;
    j["demo"] = {{"p", vec_json(cfg.demo.p)},
                 {"q", vec_json(cfg.demo.q)},
                 {"rotate_q_by", cfg.demo.rotate_q_by},
                 {"grid_per_axis", cfg.demo.grid_per_axis}};
    if (cfg.bound_input) {
        const BoundInput& b = *cfg.bound_input;
        j["bounds"] = {{"r", b.r},     {"rho", b.rho},   {"L_F", b.L_F},
                       {"L_DF", b.L_DF}, {"eps1", b.eps1}, {"eps2", b.eps2},
                       {"eps_banach", b.eps_banach}};
    }
    return j;
}

} // namespace

Shape shape_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(errc::bad_input, std::string("shape JSON parse error: ") + e.what());
    }
    return shape_from_json(j);
}

std::string shape_to_json_text(const Shape& shape) { return shape_json(shape).dump(2); }

ExperimentConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(errc::bad_input, std::string("config JSON parse error: ") + e.what());
    }
    if (!j.is_object()) fail(errc::bad_input, "config must be a JSON object");
    if (!j.contains("shape")) fail(errc::bad_input, "config needs a 'shape'");

    ExperimentConfig cfg(shape_from_json(j["shape"]));
    if (j.contains("mode")) cfg.mode = run_mode_from_name(j["mode"].get<std::string>());
    if (j.contains("diffeo")) {
        const json& d = j["diffeo"];
        if (d.contains("family")) cfg.diffeo.family = d["family"].get<std::string>();
        if (d.contains("v")) cfg.diffeo.v = vec_from(d["v"], "diffeo v");
        if (d.contains("theta")) cfg.diffeo.theta = d["theta"].get<double>();
        if (d.contains("t0")) cfg.diffeo.t0 = d["t0"].get<double>();
    }
    if (j.contains("densities")) {
        const json& d = j["densities"];
        if (d.contains("h_b")) cfg.densities.h_b = d["h_b"].get<double>();
        if (d.contains("n_dir")) cfg.densities.n_dir = d["n_dir"].get<int>();
        if (d.contains("h_g")) cfg.densities.h_g = d["h_g"].get<double>();
    }
    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        if (t.contains("tau")) cfg.tolerances.tau = t["tau"].get<double>();
        if (t.contains("delta")) cfg.tolerances.delta = t["delta"].get<double>();
        if (t.contains("tau_bis")) cfg.tolerances.tau_bis = t["tau_bis"].get<double>();
        if (t.contains("tau_inv")) cfg.tolerances.tau_inv = t["tau_inv"].get<double>();
        if (t.contains("tau_angle")) cfg.tolerances.tau_angle = t["tau_angle"].get<double>();
        if (t.contains("tau_grid")) cfg.tolerances.tau_grid = t["tau_grid"].get<double>();
        if (t.contains("delta_grid")) cfg.tolerances.delta_grid = t["delta_grid"].get<double>();
    }
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("audit_probes")) cfg.audit_probes = j["audit_probes"].get<int>();
    if (j.contains("sweep") && j["sweep"].contains("magnitudes"))
        cfg.sweep_magnitudes = j["sweep"]["magnitudes"].get<std::vector<double>>();
    if (j.contains("scaling") && j["scaling"].contains("lambdas"))
        cfg.scaling_lambdas = j["scaling"]["lambdas"].get<std::vector<double>>();
    if (j.contains("windows")) cfg.demo_windows = j["windows"].get<std::vector<double>>();
    if (j.contains("demo")) {
        const json& d = j["demo"];
        if (d.contains("p")) cfg.demo.p = vec_from(d["p"], "demo p");
        if (d.contains("q")) cfg.demo.q = vec_from(d["q"], "demo q");
        if (d.contains("rotate_q_by")) cfg.demo.rotate_q_by = d["rotate_q_by"].get<double>();
        if (d.contains("grid_per_axis")) cfg.demo.grid_per_axis = d["grid_per_axis"].get<int>();
    }
    if (j.contains("bounds")) {
        const json& b = j["bounds"];
        BoundInput in;
        if (b.contains("r")) in.r = b["r"].get<double>();
        if (b.contains("rho")) in.rho = b["rho"].get<double>();
        if (b.contains("L_F")) in.L_F = b["L_F"].get<double>();
        if (b.contains("L_DF")) in.L_DF = b["L_DF"].get<double>();
        if (b.contains("eps1")) in.eps1 = b["eps1"].get<double>();
        if (b.contains("eps2")) in.eps2 = b["eps2"].get<double>();
        if (b.contains("eps_banach")) in.eps_banach = b["eps_banach"].get<double>();
        cfg.bound_input = in;
    }
    return cfg;
}

ExperimentConfig config_from_file(const std::string& path) {
    return config_from_json_text(read_text_file(path));
}

std::string config_to_json_text(const ExperimentConfig& cfg) { return config_json(cfg).dump(2); }

std::string config_hash(const ExperimentConfig& cfg) {
    const std::string text = config_json(cfg).dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string samples_csv(std::span<const PairSample> pairs) {
    std::string out = "px,py,ux,uy,rho,rho_prime,cosine,c_dist,bound_ok\n";
    char buf[360];
    for (const PairSample& s : pairs) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", s.p.x,
                      s.p.y, s.u.x, s.u.y, s.rho, s.rho_prime, s.cosine, s.c_dist, s.bound_ok ? 1 : 0);
        out += buf;
    }
    return out;
}

std::string cloud_csv(const MedialCloud& cloud) {
    std::string out = "cx,cy,lambda,px,py,ux,uy,source\n";
    char buf[360];
    const char* source = cloud_source_name(cloud.source);
    for (const MedialSample& s : cloud.samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s\n", s.center.x,
                      s.center.y, s.radius, s.witness.x, s.witness.y, s.direction.x, s.direction.y,
                      source);
        out += buf;
    }
    return out;
}

std::string ranges_csv(std::span<const ProjectionRange> ranges) {
    std::string out = "px,py,ux,uy,lambda,status,iterations\n";
    char buf[260];
    for (const ProjectionRange& r : ranges) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%s,%d\n", r.origin.x, r.origin.y,
                      r.direction.x, r.direction.y, r.lambda, range_status_name(r.status), r.iterations);
        out += buf;
    }
    return out;
}

namespace {

json constants_json(const DiffeoConstants& k) {
    return {{"L_F", k.L_F}, {"L_DF", k.L_DF}, {"eps1", k.eps1}, {"eps2", k.eps2},
            {"eps_banach", k.eps_banach}};
}

json bound_report_to_json(const BoundReport& b) {
    return {{"rho1", b.rho1},
            {"rho2", b.rho2},
            {"hausdorff_bound", b.hausdorff_bound},
            {"banach_leading", b.banach_leading},
            {"regime",
             {{"eps2_lt_1", b.regime.eps2_lt_1},
              {"small_distortion", b.regime.small_distortion},
              {"banach_regime", b.regime.banach_regime}}},
            {"measured_dH", b.measured_dH},
            {"margin", b.margin}};
}

json audit_json(const AuditRecord& a) {
    return {{"analytic",
             {{"sup_phi", a.analytic.sup_phi},
              {"sup_dphi", a.analytic.sup_dphi},
              {"lip_phi", a.analytic.lip_phi},
              {"lip_dphi", a.analytic.lip_dphi}}},
            {"sampled",
             {{"sup_phi", a.sampled_sup_phi},
              {"sup_dphi", a.sampled_sup_dphi},
              {"lip_phi", a.sampled_lip_phi},
              {"lip_dphi", a.sampled_lip_dphi},
              {"lip_dphi_tilde", a.sampled_lip_dphi_tilde},
              {"inverse_residual", a.max_inverse_residual}}},
            {"n_probe", a.n_probe},
            {"seed", a.seed},
            {"eps_banach_source", a.eps_banach_source}};
}

} // namespace

std::string run_record_json(const RunRecord& rec, const ExperimentConfig& cfg) {
    json j;
    j["config_hash"] = config_hash(cfg);
    j["constants"] = constants_json(rec.constants);
    j["audit"] = audit_json(rec.audit);
    j["bounds"] = bound_report_to_json(rec.bounds);
    j["measured_dH"] = rec.measured_dH;
    j["slack"] = rec.slack;
    j["pairs"] = rec.pairs.size();
    j["dropped_pairs"] = rec.dropped_pairs;
    j["cloud_source_size"] = rec.cloud_source.samples.size();
    j["cloud_image_size"] = rec.cloud_image.samples.size();
    j["pass"] = rec.pass;
    j["wall_seconds"] = rec.wall_seconds;
    return j.dump(2);
}

std::string sweep_report_json(const SweepReport& rep, const ExperimentConfig& cfg) {
    json j;
    j["config_hash"] = config_hash(cfg);
    j["magnitudes"] = rep.magnitudes;
    j["eps_values"] = rep.eps_values;
    j["dh_values"] = rep.dh_values;
    j["loglog_slope"] = rep.loglog_slope;
    j["loglog_slope_stderr"] = rep.loglog_slope_stderr;
    j["loglog_r2"] = rep.loglog_r2;
    j["pass"] = rep.pass;
    json runs = json::array();
    for (const RunRecord& r : rep.runs)
        runs.push_back({{"eps_banach", r.constants.eps_banach},
                        {"measured_dH", r.measured_dH},
                        {"hausdorff_bound", r.bounds.hausdorff_bound},
                        {"banach_leading", r.bounds.banach_leading},
                        {"pairs", r.pairs.size()},
                        {"dropped_pairs", r.dropped_pairs},
                        {"pass", r.pass}});
    j["runs"] = runs;
    return j.dump(2);
}

std::string scaling_report_json(const ScalingReport& rep, const ExperimentConfig& cfg) {
    json j;
    j["config_hash"] = config_hash(cfg);
    j["lambdas"] = rep.lambdas;
    j["leading_ratio"] = rep.leading_ratio;
    j["dh_ratio"] = rep.dh_ratio;
    j["pass"] = rep.pass;
    return j.dump(2);
}

std::string unbounded_report_json(const UnboundedReport& rep) {
    json j;
    j["windows"] = rep.windows;
    j["directed"] = rep.directed;
    j["slope"] = rep.slope;
    j["intercept"] = rep.intercept;
    j["r2"] = rep.r2;
    j["monotone"] = rep.monotone;
    j["pass"] = rep.pass;
    return j.dump(2);
}

std::string oracle_compare_json(const OracleCompareReport& rep) {
    json j;
    j["dh"] = rep.dh;
    j["threshold"] = rep.threshold;
    j["shooting_size"] = rep.shooting_size;
    j["oracle_size"] = rep.oracle_size;
    j["pass"] = rep.pass;
    return j.dump(2);
}

std::string bound_report_json(const BoundReport& rep) { return bound_report_to_json(rep).dump(2); }

std::string render_svg(const Shape& shape, const MedialCloud& primary, const MedialCloud* secondary) {
    const Vec2 c = shape.center();
    const double r = shape.radius();
    const double pad = 0.1 * r;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << (c.x - r - pad) << ' '
        << (-c.y - r - pad) << ' ' << 2 * (r + pad) << ' ' << 2 * (r + pad) << "\">\n";
    const double lw = r / 200.0;
    const double dot = r / 150.0;
    svg << "<g transform=\"scale(1,-1)\">\n";

    const auto emit_cloud = [&](const MedialCloud& cloud, const char* color) {
        for (const MedialSample& s : cloud.samples) {
            svg << "<circle cx=\"" << s.center.x << "\" cy=\"" << s.center.y << "\" r=\"" << dot
                << "\" fill=\"" << color << "\"/>\n";
            svg << "<circle cx=\"" << s.witness.x << "\" cy=\"" << s.witness.y << "\" r=\""
                << dot * 0.5 << "\" fill=\"#9a9a9a\"/>\n";
        }
    };
    emit_cloud(primary, "#1c8a3a");
    if (secondary) emit_cloud(*secondary, "#2e6bd6");

    for (const Primitive& prim : shape.primitives()) {
        if (const auto* pt = std::get_if<SinglePoint>(&prim)) {
            svg << "<circle cx=\"" << pt->p.x << "\" cy=\"" << pt->p.y << "\" r=\"" << 1.5 * dot
                << "\" fill=\"black\"/>\n";
        } else if (const auto* sg = std::get_if<Segment>(&prim)) {
            svg << "<line x1=\"" << sg->a.x << "\" y1=\"" << sg->a.y << "\" x2=\"" << sg->b.x
                << "\" y2=\"" << sg->b.y << "\" stroke=\"black\" stroke-width=\"" << lw << "\"/>\n";
        } else {
            const auto& ci = std::get<Circle>(prim);
            svg << "<circle cx=\"" << ci.center.x << "\" cy=\"" << ci.center.y << "\" r=\""
                << ci.radius << "\" fill=\"none\" stroke=\"black\" stroke-width=\"" << lw << "\"/>\n";
        }
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::bad_input, "cannot open '" + path + "' for writing");
    out << content;
    if (!out) fail(errc::bad_input, "failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::bad_input, "cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace medax

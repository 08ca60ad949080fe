#include "ris/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ris {

namespace {

using nlohmann::json;

constexpr double d2r = pi / 180.0;

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

const json& need(const json& j, const char* key, const std::string& scope) {
    auto it = j.find(key);
    if (it == j.end())
        fail("missing field: " + scope + key);
    return *it;
}

double need_num(const json& j, const char* key, const std::string& scope) {
    const json& v = need(j, key, scope);
    if (!v.is_number())
        fail("field " + scope + key + " must be a number");
    return v.get<double>();
}

double opt_num(const json& j, const char* key, double fallback) {
    auto it = j.find(key);
    return it == j.end() ? fallback : it->get<double>();
}

Vec3 need_vec3(const json& j, const char* key, const std::string& scope) {
    const json& v = need(j, key, scope);
    if (!v.is_array() || v.size() != 3)
        fail("field " + scope + key + " must be a 3-element array");
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

Vec3 opt_vec3(const json& j, const char* key, Vec3 fallback) {
    return j.contains(key) ? need_vec3(j, key, "") : fallback;
}

json vec_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

std::vector<std::array<double, 4>> read_gamma_table(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail("cannot open gamma table: " + path);
    std::vector<std::array<double, 4>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        for (char& c : line)
            if (c == ',')
                c = ' ';
        std::istringstream ls(line);
        std::array<double, 4> r{};
        if (ls >> r[0] >> r[1] >> r[2] >> r[3])
            rows.push_back(r);
        else if (rows.empty())
            continue;  // header row
        else
            fail("malformed gamma table row: " + line);
    }
    if (rows.empty())
        fail("gamma table has no data rows: " + path);
    return rows;
}

} // namespace

RisPanel Scenario::build_panel() const {
    double dl = tile_edge_wl * wave.wavelength_m();
    return RisPanel(panel_size_x, panel_size_y, panel_center, panel_normal, panel_x_axis, dl);
}

Scene Scenario::build_scene() const {
    return Scene(wave, build_panel(), *incident, anomalous_modes, *budget, pattern, norm,
                 array_edge_wl() * wave.wavelength_m());
}

ObservationGrid Scenario::build_grid(const RisPanel& panel) const {
    if (scan.type == ScanSpec::Type::cut)
        return ObservationGrid(build_cut(panel));
    if (scan.type != ScanSpec::Type::map)
        fail("scan type has no point grid");
    RasterGrid r;
    r.origin = scan.origin;
    r.axis_a = normalized(scan.axis_a);
    r.axis_b = normalized(scan.axis_b);
    r.count_a = scan.count_a;
    r.count_b = scan.count_b;
    r.step_a = scan.step_a_m;
    r.step_b = scan.step_b_m;
    return ObservationGrid(r);
}

AngularCut Scenario::build_cut(const RisPanel& panel) const {
    AngularCut c;
    c.center = panel.center();
    c.radius = scan.radius_m;
    c.axis_n = panel.normal();
    if (scan.plane == "xz")
        c.axis_u = panel.x_axis();
    else if (scan.plane == "yz")
        c.axis_u = panel.y_axis();
    else
        fail("scan.plane must be \"xz\" or \"yz\"");
    c.angles_rad = linspace_angles_rad(scan.start_deg, scan.stop_deg, scan.step_deg);
    return c;
}

Vec3 Scenario::spreading_direction(const RisPanel& panel) const {
    double th = scan.direction_deg * d2r;
    return std::sin(th) * panel.x_axis() + std::cos(th) * panel.normal();
}

Scenario scenario_from_json(const json& j, const std::string& source_path) {
    Scenario s;
    s.raw = j;
    s.source_path = source_path;

    double f_ghz = need_num(j, "frequency_ghz", "");
    if (!(f_ghz > 0))
        fail("frequency_ghz must be positive");
    s.wave = WaveSpec(f_ghz * 1e9, opt_num(j, "medium_impedance_ohm", free_space_impedance));
    double lambda = s.wave.wavelength_m();

    // --- panel ---
    const json& jp = need(j, "panel", "");
    Vec3 size = {0, 0, 0};
    {
        const json& sz = need(jp, "size_m", "panel.");
        if (!sz.is_array() || sz.size() != 2)
            fail("panel.size_m must be [size_x, size_y]");
        size.x = sz[0].get<double>();
        size.y = sz[1].get<double>();
    }
    s.panel_size_x = size.x;
    s.panel_size_y = size.y;
    s.panel_center = opt_vec3(jp, "center_m", {0, 0, 0});
    s.panel_normal = normalized(opt_vec3(jp, "normal", {0, 0, 1}));
    s.panel_x_axis = normalized(opt_vec3(jp, "x_axis", {1, 0, 0}));
    s.tile_edge_wl = opt_num(jp, "tile_edge_wavelengths", 0.5);
    s.tile_edge_explicit = jp.contains("tile_edge_wavelengths");
    if (!(s.tile_edge_wl > 0))
        fail("panel.tile_edge_wavelengths must be positive");
    if (jp.contains("array_tile_edge_wavelengths"))
        s.array_tile_edge_wl = jp["array_tile_edge_wavelengths"].get<double>();
    s.comparison = j.value("comparison", false);

    // --- engine / element pattern ---
    std::string eng = j.value("engine", "integral");
    if (eng == "integral")
        s.engine = Engine::integral;
    else if (eng == "array")
        s.engine = Engine::array;
    else
        fail("engine must be \"integral\" or \"array\"");

    if (j.contains("element_pattern")) {
        const json& jpat = j["element_pattern"];
        std::string kind = need(jpat, "kind", "element_pattern.").get<std::string>();
        if (kind == "huygens")
            s.pattern = ElementPattern::huygens();
        else if (kind == "lambertian")
            s.pattern = ElementPattern::lambertian(need_num(jpat, "alpha", "element_pattern."));
        else
            fail("element_pattern.kind must be \"huygens\" or \"lambertian\"");
    }
    std::string norm = j.value("element_norm", "aperture");
    if (norm == "aperture")
        s.norm = ElementNorm::aperture;
    else if (norm == "hemisphere")
        s.norm = ElementNorm::hemisphere;
    else
        fail("element_norm must be \"aperture\" or \"hemisphere\"");

    // --- incident wave ---
    const json& ji = need(j, "incident", "");
    std::string itype = need(ji, "type", "incident.").get<std::string>();
    if (itype == "plane") {
        PlaneWave pw;
        pw.amplitude_vpm = need_num(ji, "amplitude_vpm", "incident.");
        pw.k_hat = normalized(need_vec3(ji, "direction", "incident."));
        pw.p_hat = normalized(need_vec3(ji, "polarization", "incident."));
        pw.chi0_rad = opt_num(ji, "phase_deg", 0.0) * d2r;
        s.incident = IncidentWave(pw);
    } else if (itype == "spherical") {
        SphericalSource sp;
        sp.pt_gt_w = need_num(ji, "power_gain_w", "incident.");
        sp.phase_center = need_vec3(ji, "position_m", "incident.");
        sp.p_hat = normalized(need_vec3(ji, "polarization", "incident."));
        sp.chi0_rad = opt_num(ji, "phase_deg", 0.0) * d2r;
        s.incident = IncidentWave(sp);
    } else {
        fail("incident.type must be \"plane\" or \"spherical\"");
    }

    // --- profile ---
    RisPanel panel = s.build_panel();
    double k = s.wave.wavenumber();
    // signed in-plane incidence at the panel center; the focus profile's
    // linear term must cancel the incident in-plane phase, hence the sign
    Vec3 kh = s.incident->local_k_hat(panel.center());
    if (dot(kh, panel.normal()) >= 0)
        fail("incident wave illuminates the panel from behind");
    double s_i = dot(kh, panel.x_axis());
    double out_of_plane = dot(kh, panel.y_axis());

    const json& jprof = need(j, "profile", "");
    std::string ptype = need(jprof, "type", "profile.").get<std::string>();
    auto require_in_plane = [&] {
        if (std::abs(out_of_plane) > 1e-9)
            fail("profile type \"" + ptype + "\" requires incidence in the x'-normal plane");
    };
    std::vector<double> weights;
    if (ptype == "gradient") {
        require_in_plane();
        double theta_i = std::asin(std::clamp(s_i, -1.0, 1.0));
        double theta_r = need_num(jprof, "theta_r_deg", "profile.") * d2r;
        double w = opt_num(jprof, "weight", 1.0);
        s.anomalous_modes.push_back(gradient_profile(theta_i, theta_r, k, w, "mode1"));
        weights.push_back(w);
    } else if (ptype == "focus") {
        require_in_plane();
        double theta_i = -std::asin(std::clamp(s_i, -1.0, 1.0));
        double fd = need_num(jprof, "focus_distance_m", "profile.");
        double w = opt_num(jprof, "weight", 1.0);
        s.anomalous_modes.push_back(focus_profile(theta_i, -fd, k, w, "mode1"));
        weights.push_back(w);
    } else if (ptype == "multimode") {
        require_in_plane();
        double theta_i = std::asin(std::clamp(s_i, -1.0, 1.0));
        const json& jm = need(jprof, "modes", "profile.");
        if (!jm.is_array() || jm.empty())
            fail("profile.modes must be a non-empty array");
        std::size_t n = 1;
        for (const json& m : jm) {
            double w = need_num(m, "weight", "profile.modes[].");
            double th_r = need_num(m, "theta_r_deg", "profile.modes[].") * d2r;
            s.anomalous_modes.push_back(
                gradient_profile(theta_i, th_r, k, w, "mode" + std::to_string(n++)));
            weights.push_back(w);
        }
    } else if (ptype == "custom-table") {
        std::string path = need(jprof, "path", "profile.").get<std::string>();
        if (!path.empty() && path[0] != '/' && !source_path.empty()) {
            auto slash = source_path.find_last_of('/');
            if (slash != std::string::npos)
                path = source_path.substr(0, slash + 1) + path;
        }
        auto rows = read_gamma_table(path);
        ModulationProfile mp = table_profile(rows, panel);
        Mode m = mp.mode(0);
        s.anomalous_modes.push_back(std::move(m));
        weights.push_back(1.0);
    } else {
        fail("profile.type must be one of gradient, focus, multimode, custom-table");
    }

    // --- budget ---
    const json& jb = need(j, "budget", "");
    double rho = opt_num(jb, "rho", 0.0);
    bool strict = jb.value("strict", false);

    // optional angle table: rows of (theta_i_deg, rho, mode_weights, tau),
    // resolved at the panel-center incidence before the balance is completed
    if (jb.contains("angle_table")) {
        const json& jt = jb["angle_table"];
        if (!jt.is_array() || jt.empty())
            fail("budget.angle_table must be a non-empty array");
        std::vector<double> thetas;
        std::vector<AngleTable::Row> rows;
        for (const json& r : jt) {
            thetas.push_back(need_num(r, "theta_i_deg", "budget.angle_table[].") * d2r);
            AngleTable::Row row;
            row.rho = need_num(r, "rho", "budget.angle_table[].");
            row.tau = opt_num(r, "tau", 0.0);
            const json& mw = need(r, "mode_weights", "budget.angle_table[].");
            if (!mw.is_array() || mw.size() != weights.size())
                fail("budget.angle_table[].mode_weights must list one weight per profile mode");
            for (const json& x : mw)
                row.mode_weights.push_back(x.get<double>());
            rows.push_back(std::move(row));
        }
        try {
            AngleTable table(std::move(thetas), std::move(rows));
            double th_i = s.incident->incidence_angle(panel, panel.center());
            AngleTable::Row at = table.at(th_i);
            rho = at.rho;
            weights = at.mode_weights;
            for (std::size_t n = 0; n < weights.size(); ++n)
                s.anomalous_modes[n].weight = weights[n];
            s.warnings.push_back("budget: coefficients interpolated from the angle table at " +
                                 std::to_string(th_i * 180.0 / pi) + " deg incidence");
        } catch (const std::invalid_argument& e) {
            fail(std::string("budget.angle_table: ") + e.what());
        }
    }
    bool has_r = jb.contains("rayleigh");
    bool has_s2 = jb.contains("s_squared");
    try {
        if (has_s2 && !has_r) {
            double s2 = jb["s_squared"].get<double>();
            if (s2 > 0.0) {
                s.budget = PowerBudget::from_diffuse_target(rho, weights, s2, strict);
                s.budget_resolution =
                    "rayleigh re-solved from target s_squared: R^2 = 1 - S^2/(rho + sum m)";
            } else {
                s.budget = PowerBudget::from_rayleigh(rho, weights, 1.0, strict);
                s.budget_resolution = "no diffuse power; R = 1";
            }
        } else {
            double r = has_r ? jb["rayleigh"].get<double>() : 1.0;
            s.budget = PowerBudget::from_rayleigh(rho, weights, r, strict);
            s.budget_resolution = "s_squared solved from rayleigh: S^2 = (1 - R^2)(rho + sum m)";
            if (has_s2) {
                double s2 = jb["s_squared"].get<double>();
                if (std::abs(s2 - s.budget->s_squared()) > 1e-9)
                    fail("budget.s_squared is inconsistent with budget.rayleigh under the power balance");
            }
        }
    } catch (const std::invalid_argument& e) {
        fail(std::string("budget: ") + e.what());
    } catch (const std::domain_error& e) {
        fail(std::string("budget: ") + e.what());
    }
    for (const std::string& w : s.budget->validate())
        s.warnings.push_back("budget: " + w);
    if (rho + s.budget->mode_weight_sum() > 1.0 + 1e-9)
        s.warnings.push_back("budget: tau clamped to 0 (coherent weights exceed unit sum)");

    // --- feasibility (array tiling) ---
    s.feasibility = feasibility_check(s.pattern, s.array_edge_wl() * lambda, lambda);
    for (const auto& v : s.feasibility) {
        if (v.hard) {
            if (s.engine == Engine::array)
                fail("feasibility: " + v.message);
            s.warnings.push_back("feasibility: " + v.message + " (array engine disabled)");
        } else if (!(s.comparison &&
                     v.code == FeasibilityViolation::Code::huygens_pitch)) {
            // comparison mode deliberately shares a sub-0.49 pitch between engines
            s.warnings.push_back("feasibility: " + v.message);
        }
    }
    if (s.tile_edge_wl > 0.5 + 1e-12 && s.engine == Engine::integral)
        fail("panel.tile_edge_wavelengths exceeds 1/2: integrand under-sampled");

    // --- scan ---
    const json& js = need(j, "scan", "");
    std::string stype = need(js, "type", "scan.").get<std::string>();
    if (stype == "map") {
        s.scan.type = ScanSpec::Type::map;
        s.scan.origin = need_vec3(js, "origin_m", "scan.");
        s.scan.axis_a = need_vec3(js, "axis_a", "scan.");
        s.scan.axis_b = need_vec3(js, "axis_b", "scan.");
        s.scan.count_a = std::size_t(need_num(js, "count_a", "scan."));
        s.scan.count_b = std::size_t(need_num(js, "count_b", "scan."));
        s.scan.step_a_m = need_num(js, "step_a_m", "scan.");
        s.scan.step_b_m = need_num(js, "step_b_m", "scan.");
        if (s.scan.count_a < 1 || s.scan.count_b < 1)
            fail("scan counts must be at least 1");
    } else if (stype == "cut") {
        s.scan.type = ScanSpec::Type::cut;
        s.scan.radius_m = need_num(js, "radius_m", "scan.");
        s.scan.plane = js.value("plane", "xz");
        s.scan.start_deg = need_num(js, "start_deg", "scan.");
        s.scan.stop_deg = need_num(js, "stop_deg", "scan.");
        s.scan.step_deg = need_num(js, "step_deg", "scan.");
        if (!(s.scan.radius_m > 3.0 * lambda))
            fail("scan.radius_m must exceed 3 wavelengths");
    } else if (stype == "spreading") {
        s.scan.type = ScanSpec::Type::spreading;
        s.scan.direction_deg = need_num(js, "direction_deg", "scan.");
        s.scan.r_min_m = need_num(js, "r_min_m", "scan.");
        s.scan.r_max_m = need_num(js, "r_max_m", "scan.");
        s.scan.samples = std::size_t(need_num(js, "samples", "scan."));
        s.scan.window_wavelengths = opt_num(js, "window_wavelengths", 10.0);
    } else {
        fail("scan.type must be one of map, cut, spreading");
    }

    s.output_basename = j.value("output_basename", "scan");
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open scenario file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        // nlohmann reports the byte offset; surface it as-is
        throw ValidationError("parse error in " + path + ": " + e.what());
    }
    return scenario_from_json(j, path);
}

json scenario_to_json(const Scenario& s) {
    json j = s.raw;
    j["frequency_ghz"] = s.wave.frequency_hz() / 1e9;
    j["medium_impedance_ohm"] = s.wave.impedance();
    j["panel"]["size_m"] = json::array({s.panel_size_x, s.panel_size_y});
    j["panel"]["center_m"] = vec_to_json(s.panel_center);
    j["panel"]["normal"] = vec_to_json(s.panel_normal);
    j["panel"]["x_axis"] = vec_to_json(s.panel_x_axis);
    j["panel"]["tile_edge_wavelengths"] = s.tile_edge_wl;
    j["engine"] = s.engine == Engine::integral ? "integral" : "array";
    j["element_norm"] = s.norm == ElementNorm::aperture ? "aperture" : "hemisphere";
    j["budget"]["rho"] = s.budget->rho();
    j["budget"]["rayleigh"] = s.budget->rayleigh();
    j["budget"]["s_squared"] = s.budget->s_squared();
    j["budget"]["strict"] = s.budget->strict();
    return j;
}

} // namespace ris

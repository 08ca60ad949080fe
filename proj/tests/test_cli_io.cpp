#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ris/csv_io.hpp"
#include "ris/scenario.hpp"

using namespace ris;
namespace fs = std::filesystem;

namespace {

const std::string kScenarioDir = RIS_SCENARIO_DIR;
const std::string kTool = RIS_TOOL_PATH;

nlohmann::json minimal_config() {
    return nlohmann::json::parse(R"({
      "frequency_ghz": 3.0,
      "panel": { "size_m": [1.0, 1.0], "tile_edge_wavelengths": 0.5 },
      "incident": { "type": "plane", "amplitude_vpm": 1.0,
                    "direction": [0, 0, -1], "polarization": [0, 1, 0] },
      "profile": { "type": "gradient", "theta_r_deg": 30.0 },
      "budget": { "rho": 0.0, "rayleigh": 1.0 },
      "engine": "integral",
      "scan": { "type": "cut", "radius_m": 10.0, "plane": "xz",
                "start_deg": -90, "stop_deg": 90, "step_deg": 5.0 }
    })");
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_tool(const std::string& args, const fs::path& stdout_file = {}) {
    std::string cmd = kTool + " " + args;
    if (!stdout_file.empty())
        cmd += " > " + stdout_file.string() + " 2>&1";
    else
        cmd += " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

fs::path temp_dir() {
    fs::path d = fs::temp_directory_path() / "ris_cli_tests";
    fs::create_directories(d);
    return d;
}

} // namespace

TEST_CASE("minimal scenario loads") {
    Scenario s = scenario_from_json(minimal_config());
    CHECK(s.engine == Engine::integral);
    CHECK(s.anomalous_modes.size() == 1);
    CHECK(s.budget->rho() == 0.0);
    CHECK(s.warnings.empty());
    Scene scene = s.build_scene();
    CHECK(scene.labels().size() == 2);  // specular slot + one mode
}

TEST_CASE("bundled scenario pack validates") {
    int found = 0;
    for (const auto& e : fs::directory_iterator(kScenarioDir)) {
        if (e.path().extension() != ".json")
            continue;
        ++found;
        CAPTURE(e.path().string());
        Scenario s = load_scenario(e.path().string());
        CHECK_NOTHROW(s.build_scene());
    }
    CHECK(found >= 6);
}

TEST_CASE("validation failures carry field names") {
    // coarse tiling in array mode: grating lobes are a hard stop
    auto j = minimal_config();
    j["panel"]["tile_edge_wavelengths"] = 0.6;
    j["engine"] = "array";
    CHECK_THROWS_WITH_AS(scenario_from_json(j), doctest::Contains("grating"), ValidationError);

    // missing polarization
    j = minimal_config();
    j["incident"].erase("polarization");
    CHECK_THROWS_WITH_AS(scenario_from_json(j), doctest::Contains("incident.polarization"),
                         ValidationError);

    // unknown profile type
    j = minimal_config();
    j["profile"]["type"] = "spiral";
    CHECK_THROWS_AS(scenario_from_json(j), ValidationError);

    // inconsistent explicit budget pair
    j = minimal_config();
    j["budget"]["rayleigh"] = 0.9;
    j["budget"]["s_squared"] = 0.5;
    CHECK_THROWS_WITH_AS(scenario_from_json(j), doctest::Contains("inconsistent"),
                         ValidationError);

    // strict budget rejects over-unity coherent weights
    j = minimal_config();
    j["profile"] = {{"type", "multimode"},
                    {"modes", {{{"weight", 0.76}, {"theta_r_deg", 70.0}},
                               {{"weight", 0.17}, {"theta_r_deg", -70.0}}}}};
    j["budget"] = {{"rho", 0.17}, {"rayleigh", 1.0}, {"strict", true}};
    CHECK_THROWS_AS(scenario_from_json(j), ValidationError);
    // and the same set passes in lenient mode, with a warning
    j["budget"]["strict"] = false;
    Scenario lenient = scenario_from_json(j);
    CHECK_FALSE(lenient.warnings.empty());
}

TEST_CASE("scenario round-trip") {
    Scenario a = load_scenario(kScenarioDir + "/multimode_70deg.json");
    Scenario b = scenario_from_json(scenario_to_json(a));
    CHECK(a.wave.frequency_hz() == b.wave.frequency_hz());
    CHECK(a.panel_size_x == b.panel_size_x);
    CHECK(a.tile_edge_wl == b.tile_edge_wl);
    CHECK(a.budget->rho() == b.budget->rho());
    CHECK(a.budget->rayleigh() == b.budget->rayleigh());
    CHECK(a.budget->s_squared() == b.budget->s_squared());
    CHECK(a.anomalous_modes.size() == b.anomalous_modes.size());
    CHECK(a.engine == b.engine);
    CHECK(a.scan.radius_m == b.scan.radius_m);

    // the re-solved diffuse budget also survives the round trip
    Scenario c = load_scenario(kScenarioDir + "/multimode_70deg_diffuse.json");
    CHECK(c.budget->rayleigh() * c.budget->rayleigh() == doctest::Approx(0.6).epsilon(1e-12));
    Scenario d = scenario_from_json(scenario_to_json(c));
    CHECK(c.budget->rayleigh() == d.budget->rayleigh());
}

TEST_CASE("tool: validate and budget subcommands") {
    for (const auto& e : fs::directory_iterator(kScenarioDir)) {
        if (e.path().extension() != ".json")
            continue;
        CAPTURE(e.path().string());
        CHECK(run_tool("validate --config " + e.path().string()) == 0);
    }

    fs::path out = temp_dir() / "budget.txt";
    CHECK(run_tool("budget --config " + kScenarioDir + "/multimode_70deg.json", out) == 0);
    std::string text = slurp(out);
    CHECK(text.find("sum(rho+m) = 1.1") != std::string::npos);
    CHECK(text.find("warning") != std::string::npos);  // lenient over-unity note
}

TEST_CASE("tool: exit codes") {
    fs::path bad = temp_dir() / "bad.json";
    std::ofstream(bad) << "{ not json";
    CHECK(run_tool("validate --config " + bad.string()) == 2);

    fs::path missing = temp_dir() / "missing_field.json";
    auto j = minimal_config();
    j.erase("incident");
    std::ofstream(missing) << j.dump();
    CHECK(run_tool("validate --config " + missing.string()) == 2);

    CHECK(run_tool("validate --config /nonexistent/path.json") == 2);
}

TEST_CASE("tool: cut output schema") {
    fs::path dir = temp_dir() / "cut_out";
    int rc = run_tool("cut --config " + kScenarioDir + "/lossy_reflector_70deg.json --out " +
                      dir.string() + " --threads 2");
    CHECK(rc == 0);
    std::string csv = slurp(dir / "lossy_reflector_70deg.csv");
    std::string header = csv.substr(0, csv.find('\n'));
    CHECK(header.find("angle_deg") == 0);
    CHECK(header.find("abs_E_dBVpm") != std::string::npos);
    CHECK(header.find("abs_E_specular_Vpm") != std::string::npos);
    CHECK(header.find("abs_E_mode1_Vpm") != std::string::npos);
    CHECK(header.find("diffuse_V2pm2") != std::string::npos);
    CHECK(header.find("flags") != std::string::npos);

    // sidecar carries the content hash of the CSV body
    auto side = nlohmann::json::parse(slurp(dir / "lossy_reflector_70deg.json"));
    CHECK(side["content_hash_fnv1a64"] == fnv1a64_hex(csv));
    CHECK(side["schema_version"] == 1);
    CHECK(side["engine"] == "array");
}

TEST_CASE("tool: thread count does not change bytes") {
    fs::path cfg = temp_dir() / "tiny_map.json";
    auto j = minimal_config();
    j["scan"] = {{"type", "map"},      {"origin_m", {-0.5, 0.0, 2.0}},
                 {"axis_a", {1, 0, 0}}, {"axis_b", {0, 0, 1}},
                 {"count_a", 11},       {"count_b", 7},
                 {"step_a_m", 0.1},     {"step_b_m", 0.1}};
    j["output_basename"] = "tiny";
    std::ofstream(cfg) << j.dump();

    fs::path d1 = temp_dir() / "t1", d4 = temp_dir() / "t4";
    CHECK(run_tool("map --config " + cfg.string() + " --out " + d1.string() + " --threads 1") == 0);
    CHECK(run_tool("map --config " + cfg.string() + " --out " + d4.string() + " --threads 4") == 0);
    CHECK(slurp(d1 / "tiny.csv") == slurp(d4 / "tiny.csv"));
    CHECK(!slurp(d1 / "tiny.csv").empty());
}

TEST_CASE("tool: tile-edge override") {
    fs::path out = temp_dir() / "override";
    int rc = run_tool("validate --config " + kScenarioDir +
                      "/multimode_70deg.json --tile-edge 0.125");
    CHECK(rc == 0);
}

TEST_CASE("angle-dependent budget table") {
    auto j = minimal_config();
    // 30-degree incidence in the x'-normal plane
    j["incident"]["direction"] = {0.5, 0.0, -0.8660254037844386};
    j["budget"]["angle_table"] = {
        {{"theta_i_deg", 0.0}, {"rho", 0.1}, {"mode_weights", {0.8}}, {"tau", 0.1}},
        {{"theta_i_deg", 60.0}, {"rho", 0.3}, {"mode_weights", {0.4}}, {"tau", 0.3}},
    };
    Scenario s = scenario_from_json(j);
    // interpolated halfway between the 0 and 60 degree rows
    CHECK(s.budget->rho() == doctest::Approx(0.2));
    CHECK(s.budget->mode_weights()[0] == doctest::Approx(0.6));
    CHECK(s.anomalous_modes[0].weight == doctest::Approx(0.6));

    // row/mode mismatch is a named failure
    j["budget"]["angle_table"] = {
        {{"theta_i_deg", 0.0}, {"rho", 0.1}, {"mode_weights", {0.8, 0.1}}, {"tau", 0.1}},
    };
    CHECK_THROWS_WITH_AS(scenario_from_json(j), doctest::Contains("angle_table"),
                         ValidationError);
}

TEST_CASE("custom gamma table scenario") {
    // build a table matching a 2x2 tile panel and load it end to end
    fs::path dir = temp_dir();
    fs::path table = dir / "gamma_table.csv";
    {
        WaveSpec w(3.0e9);
        RisPanel p = RisPanel::centered(0.1, 0.1, 0.5 * w.wavelength_m());
        std::ofstream t(table);
        t << "x_m,y_m,re_gamma,im_gamma\n";
        for (std::size_t u = 0; u < p.nx(); ++u)
            for (std::size_t v = 0; v < p.ny(); ++v)
                t << p.tile_x(u) << "," << p.tile_y(v) << ",0.6,0.2\n";
    }
    auto j = minimal_config();
    j["panel"]["size_m"] = {0.1, 0.1};
    j["profile"] = {{"type", "custom-table"}, {"path", table.filename().string()}};
    fs::path cfg = dir / "table_scene.json";
    std::ofstream(cfg) << j.dump();
    Scenario s = load_scenario(cfg.string());
    Scene scene = s.build_scene();
    auto g = scene.profile().sample_mode(1, scene.panel());
    CHECK(std::abs(g[0] - cplx(0.6, 0.2)) < 1e-12);
}

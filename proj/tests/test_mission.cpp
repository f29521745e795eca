#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "deorbit/mission.hpp"

using namespace deorbit;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct CommandResult {
    int exit_code;
    std::string output;
};

// Run the installed CLI, capturing stdout+stderr.
CommandResult run_cli(const std::string& args) {
    const fs::path out = fs::temp_directory_path() / "deorbitkit_cli_out.txt";
    const std::string cmd = std::string(DEORBITKIT_CLI) + " " + args + " > " + out.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    CommandResult result;
    result.exit_code = WEXITSTATUS(status);
    result.output = slurp(out);
    fs::remove(out);
    return result;
}

// First number following `label` in the rendered text.
double value_after(const std::string& text, const std::string& label) {
    const auto pos = text.find(label);
    REQUIRE(pos != std::string::npos);
    std::istringstream in(text.substr(pos + label.size()));
    double value;
    REQUIRE(in >> value);
    return value;
}

} // namespace

TEST_CASE("mission config defaults and unit conversions") {
    const MissionConfig config;
    CHECK(config.r1() == 6.970e6);
    CHECK(config.r2() == 6.770e6);
    CHECK(config.body().mu == 3.986e14);
    CHECK(config.body().radius == 6.370e6);
    CHECK(config.chamber().p0 == 1e5);
    CHECK(config.chamber().t0 == 290.0);
    CHECK(config.ambient_pa() == 1e4);
    CHECK_THAT(config.tank(1e6).r_inner, WithinRel(8.28e-3, 1e-12));
    CHECK_THAT(config.tank(1e6).thickness, WithinRel(3.1e-3, 1e-12));
    CHECK(config.material().tensile_strength == 3e9);
    CHECK(config.material().load_factor == 1.5);
}

TEST_CASE("mission config json round trip and partial files") {
    MissionConfig config;
    config.alt_initial_km = 725.0;
    config.catalog_path = "objects.tle";
    nlohmann::json j;
    to_json(j, config);
    const MissionConfig back = j.get<MissionConfig>();
    CHECK(back.alt_initial_km == 725.0);
    CHECK(back.catalog_path == "objects.tle");
    CHECK(back.gamma == config.gamma);

    const MissionConfig partial = nlohmann::json::parse(R"({"alt_initial_km": 810})")
                                      .get<MissionConfig>();
    CHECK(partial.alt_initial_km == 810.0);
    CHECK(partial.alt_final_km == 400.0); // untouched default
    CHECK(partial.throat_diameter_mm == 5.0);
}

TEST_CASE("mission report pipeline on the default scenario") {
    const MissionReport report = build_mission_report(MissionConfig{});

    CHECK_THAT(report.plan.dv_total, WithinRel(110.883787489748, 1e-12));
    CHECK_THAT(report.performance.u_eq, WithinRel(529.951531475578, 1e-9));
    // exp(dv_total/u_eq) at the exact plan dv, not the rounded table value
    CHECK_THAT(report.budget.mass_ratio, WithinRel(1.2327332121525, 1e-9));
    CHECK_THAT(report.budget.m_propellant, WithinRel(1.8879446895579, 1e-9));
    CHECK(report.tank_pressure_derived);
    CHECK_THAT(report.tank_pressure_pa, WithinRel(309210253.822832, 1e-9));
    CHECK(report.verdict.pass);
    CHECK_THAT(report.deorbit.coast_duration, WithinAbs(2833.455074318, 1.0));
    CHECK_FALSE(report.conjunctions.screened);
    CHECK_FALSE(report.notes.empty());

    SECTION("text rendering is deterministic and unit-labelled") {
        const std::string text = render_report_text(report);
        const std::string again = render_report_text(build_mission_report(MissionConfig{}));
        CHECK(text == again);
        for (const char* label : {" km/s", " km", " kg", " m/s", " N", " MPa", " GPa", " s"})
            CHECK(text.find(label) != std::string::npos);
        CHECK(text.find("flagged") != std::string::npos);
    }
    SECTION("json mirrors the text content deterministically") {
        const nlohmann::json j = report_to_json(report);
        CHECK(j["hohmann"]["dv_total_mps"].get<double>() == report.plan.dv_total);
        CHECK(j["tank"]["pass"].get<bool>());
        CHECK(j["notes"].size() == report.notes.size());
        const nlohmann::json j2 = report_to_json(build_mission_report(MissionConfig{}));
        CHECK(j.dump(2) == j2.dump(2));
    }
    SECTION("printed values re-parse to the internal SI values") {
        const std::string text = render_hohmann_text(report.plan);
        CHECK_THAT(value_after(text, "dv_total") * 1e3,
                   WithinAbs(report.plan.dv_total, 0.5e-4 * 1e3));
        CHECK_THAT(value_after(text, "tof") , WithinAbs(report.plan.tof, 0.05));
        const std::string nozzle = render_nozzle_text(report.geometry, report.performance);
        CHECK_THAT(value_after(nozzle, "exit diameter") * 1e-3,
                   WithinAbs(report.geometry.d_exit, 0.5e-4 * 1e-3));
    }
}

TEST_CASE("golden verification table") {
    const auto checks = run_verification();

    int table1_rows = 0;
    bool flagged_length = false;
    for (const GoldenCheck& c : checks) {
        INFO(c.name << ": expected " << c.expected << " computed " << c.computed);
        CHECK(c.pass);
        if (c.name.rfind("table1.", 0) == 0)
            ++table1_rows;
        if (c.name == "table2.divergent_length") {
            flagged_length = true;
            CHECK(c.note.find("flagged") != std::string::npos);
        }
        if (c.name == "table1.dv1" || c.name == "table1.dv2")
            CHECK_FALSE(c.note.empty());
    }
    CHECK(table1_rows == 15);
    CHECK(flagged_length);

    const std::string rendered = render_verification(checks);
    CHECK(rendered.find("FAIL") == std::string::npos);
    CHECK(rendered.find("all checks passed") != std::string::npos);
}

TEST_CASE("cli integration") {
    SECTION("hohmann subcommand prints the design values") {
        const CommandResult r = run_cli("hohmann --alt1-km 600 --alt2-km 400");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("0.1109") != std::string::npos);
        CHECK(r.output.find("2833.5") != std::string::npos);
    }
    SECTION("missing required flag is a usage error") {
        CHECK(run_cli("hohmann --alt1-km 600").exit_code == 2);
    }
    SECTION("unknown subcommand is a usage error") {
        CHECK(run_cli("warkalizer").exit_code == 2);
    }
    SECTION("nozzle subcommand reports the designed exit diameter") {
        const CommandResult r =
            run_cli("nozzle --p0-bar 1 --pamb-bar 0.1 --t0-k 290 --throat-mm 5");
        CHECK(r.exit_code == 0);
        const double d_exit = value_after(r.output, "exit diameter");
        CHECK_THAT(d_exit, WithinAbs(6.9559, 0.01));
        CHECK(r.output.find("thrust") != std::string::npos);
    }
    SECTION("infeasible nozzle design is a computation error") {
        CHECK(run_cli("nozzle --p0-bar 1 --pamb-bar 0.9 --t0-k 290 --throat-mm 5").exit_code == 1);
    }
    SECTION("tank inverse mode reports the derived pressure") {
        const CommandResult r = run_cli("tank --target-vm-gpa 1.19");
        CHECK(r.exit_code == 0);
        CHECK_THAT(value_after(r.output, "internal pressure"), WithinAbs(309.21, 0.01));
        CHECK(r.output.find("PASS") != std::string::npos);
    }
    SECTION("tank without a pressure or target is a computation error") {
        CHECK(run_cli("tank").exit_code == 1);
    }
    SECTION("missing and malformed config files are computation errors") {
        const CommandResult missing = run_cli("--config /nonexistent/config.json verify");
        CHECK(missing.exit_code == 1);
        CHECK(missing.output.find("cannot open config file") != std::string::npos);

        const fs::path bad = fs::temp_directory_path() / "deorbitkit_bad_config.json";
        std::ofstream(bad) << "{ not json";
        CHECK(run_cli("--config " + bad.string() + " verify").exit_code == 1);
        fs::remove(bad);
    }
    SECTION("verify passes on a clean build") {
        const CommandResult r = run_cli("verify");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("all checks passed") != std::string::npos);
        CHECK(r.output.find("FAIL") == std::string::npos);
    }
    SECTION("mission artifacts are deterministic") {
        const fs::path base = fs::temp_directory_path() / "deorbitkit_mission_test";
        fs::remove_all(base);
        fs::create_directories(base);
        const fs::path a = base / "a";
        const fs::path b = base / "b";
        REQUIRE(run_cli("mission --outdir " + a.string()).exit_code == 0);
        REQUIRE(run_cli("mission --outdir " + b.string()).exit_code == 0);

        for (const char* artifact : {"report.txt", "report.json", "flow_profile.csv",
                                     "stress_profile.csv", "ephemeris.csv", "ground_track.csv"}) {
            INFO(artifact);
            REQUIRE(fs::exists(a / artifact));
            CHECK(slurp(a / artifact) == slurp(b / artifact));
        }
        const std::string report = slurp(a / "report.txt");
        CHECK(report.find("deorbit mission report") != std::string::npos);
        CHECK(report.find("verdict            PASS") != std::string::npos);
        fs::remove_all(base);
    }
    SECTION("config file feeds the pipeline and flags override it") {
        const fs::path base = fs::temp_directory_path() / "deorbitkit_config_test";
        fs::remove_all(base);
        fs::create_directories(base);
        const fs::path cfg = base / "config.json";
        std::ofstream(cfg) << R"({"alt_initial_km": 650, "alt_final_km": 450})";

        const CommandResult from_file =
            run_cli("--config " + cfg.string() + " mission --outdir " + (base / "o").string());
        CHECK(from_file.exit_code == 0);
        CHECK(from_file.output.find("650.0 km -> 450.0 km") != std::string::npos);

        const CommandResult overridden =
            run_cli("--config " + cfg.string() + " mission --alt2-km 400 --outdir " +
                    (base / "p").string());
        CHECK(overridden.exit_code == 0);
        CHECK(overridden.output.find("650.0 km -> 400.0 km") != std::string::npos);

        // environment variable supplies the default config path
        const fs::path out = base / "env_out.txt";
        const std::string cmd = "DEORBITKIT_CONFIG=" + cfg.string() + " " + DEORBITKIT_CLI +
                                " mission --outdir " + (base / "q").string() + " > " +
                                out.string() + " 2>&1";
        REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
        CHECK(slurp(out).find("650.0 km -> 450.0 km") != std::string::npos);
        fs::remove_all(base);
    }
}

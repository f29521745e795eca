// deorbitkit command line: mission reports, single-module runs, CSV artifacts
// and golden verification for the cold-gas deorbit toolkit.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "deorbit/astro.hpp"
#include "deorbit/io.hpp"
#include "deorbit/mission.hpp"
#include "deorbit/nozzle.hpp"
#include "deorbit/propagate.hpp"
#include "deorbit/tank.hpp"
#include "deorbit/tle.hpp"

namespace {

deorbit::MissionConfig load_config(const std::string& explicit_path) {
    std::string path = explicit_path;
    if (path.empty()) {
        if (const char* env = std::getenv("DEORBITKIT_CONFIG"))
            path = env;
    }
    deorbit::MissionConfig config;
    if (path.empty())
        return config;
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file " + path);
    nlohmann::json j;
    in >> j;
    config = j.get<deorbit::MissionConfig>();
    return config;
}

void write_csv(const std::filesystem::path& path, const std::string& content) {
    deorbit::atomic_write(path, content);
    std::cout << "wrote " << path.string() << "\n";
}

std::string flow_profile_csv(const deorbit::MissionConfig& config,
                             const deorbit::NozzleGeometry& geom) {
    std::ostringstream os;
    deorbit::write_flow_profile_csv(
        os, deorbit::quasi1d_profile(geom, config.chamber(), config.profile_samples));
    return os.str();
}

std::string stress_profile_csv(const deorbit::TankSpec& spec, int stations) {
    std::ostringstream os;
    deorbit::write_stress_profile_csv(os, deorbit::stress_profile(spec, stations));
    return os.str();
}

int run_mission(const deorbit::MissionConfig& config, const std::string& outdir) {
    const deorbit::MissionReport report = deorbit::build_mission_report(config);
    const std::string text = deorbit::render_report_text(report);
    std::cout << text;

    const std::filesystem::path dir(outdir);
    std::filesystem::create_directories(dir);
    deorbit::atomic_write(dir / "report.txt", text);
    deorbit::atomic_write(dir / "report.json", deorbit::report_to_json(report).dump(2) + "\n");

    write_csv(dir / "flow_profile.csv", flow_profile_csv(config, report.geometry));
    write_csv(dir / "stress_profile.csv",
              stress_profile_csv(config.tank(report.tank_pressure_pa), config.stress_stations));
    {
        std::ostringstream os;
        deorbit::write_ephemeris_csv(os, report.deorbit.ephemeris);
        write_csv(dir / "ephemeris.csv", os.str());
    }
    {
        std::ostringstream os;
        deorbit::write_ground_track_csv(
            os, deorbit::ground_track(report.deorbit.ephemeris, config.earth_rotation_rate,
                                      config.initial_gst_rad, config.body()));
        write_csv(dir / "ground_track.csv", os.str());
    }
    std::cout << "wrote " << (dir / "report.txt").string() << " and "
              << (dir / "report.json").string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cold-gas deorbit mission toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path,
                   "JSON mission config (default: $DEORBITKIT_CONFIG if set)");

    // mission
    auto* mission = app.add_subcommand("mission", "full pipeline: report, JSON and CSV artifacts");
    std::string outdir = ".";
    mission->add_option("--outdir", outdir, "artifact output directory");
    double m_alt1 = -1, m_alt2 = -1, m_mass = -1;
    std::string m_catalog;
    mission->add_option("--alt1-km", m_alt1, "initial circular altitude, km");
    mission->add_option("--alt2-km", m_alt2, "final circular altitude, km");
    mission->add_option("--wet-mass-kg", m_mass, "spacecraft wet mass, kg");
    mission->add_option("--catalog", m_catalog, "TLE catalog for conjunction screening");

    // hohmann
    auto* hohmann = app.add_subcommand("hohmann", "two-impulse transfer plan");
    double h_alt1 = 0, h_alt2 = 0, h_mu = -1, h_rearth = -1, h_mass = -1;
    hohmann->add_option("--alt1-km", h_alt1, "initial circular altitude, km")->required();
    hohmann->add_option("--alt2-km", h_alt2, "final circular altitude, km")->required();
    hohmann->add_option("--mu", h_mu, "gravitational parameter, m^3/s^2");
    hohmann->add_option("--r-earth-km", h_rearth, "body radius, km");
    hohmann->add_option("--wet-mass-kg", h_mass, "wet mass for the propellant budget, kg");

    // nozzle
    auto* nozzle = app.add_subcommand("nozzle", "isentropic C-D nozzle design");
    double n_p0 = 0, n_pamb = 0, n_t0 = 0, n_throat = 0;
    double n_inlet = -1, n_div = -1, n_conv = -1, n_gamma = -1, n_rspec = -1;
    int n_samples = -1;
    std::string n_profile_csv;
    nozzle->add_option("--p0-bar", n_p0, "chamber stagnation pressure, bar absolute")->required();
    nozzle->add_option("--pamb-bar", n_pamb, "ambient pressure, bar absolute")->required();
    nozzle->add_option("--t0-k", n_t0, "chamber stagnation temperature, K")->required();
    nozzle->add_option("--throat-mm", n_throat, "throat diameter, mm")->required();
    nozzle->add_option("--inlet-mm", n_inlet, "inlet diameter, mm");
    nozzle->add_option("--div-angle-deg", n_div, "divergent half angle, deg");
    nozzle->add_option("--conv-angle-deg", n_conv, "convergent half angle, deg");
    nozzle->add_option("--gamma", n_gamma, "ratio of specific heats");
    nozzle->add_option("--r-specific", n_rspec, "specific gas constant, J/(kg K)");
    nozzle->add_option("--samples", n_samples, "stations in the flow profile");
    nozzle->add_option("--profile-csv", n_profile_csv, "write the quasi-1D profile here");

    // tank
    auto* tank = app.add_subcommand("tank", "thick-wall stress check");
    double t_pressure = -1, t_target = -1, t_inner = -1, t_thick = -1, t_len = -1, t_pext = -1;
    double t_tensile = -1, t_load = -1;
    std::string t_profile_csv;
    tank->add_option("--pressure-mpa", t_pressure, "internal pressure, MPa");
    tank->add_option("--target-vm-gpa", t_target,
                     "inverse mode: find the pressure reaching this peak von Mises, GPa");
    tank->add_option("--inner-diameter-mm", t_inner, "inner diameter, mm");
    tank->add_option("--thickness-mm", t_thick, "wall thickness, mm");
    tank->add_option("--length-mm", t_len, "cylinder length, mm");
    tank->add_option("--pext-mpa", t_pext, "external pressure, MPa");
    tank->add_option("--tensile-gpa", t_tensile, "material tensile strength, GPa");
    tank->add_option("--load-factor", t_load, "safety load factor");
    tank->add_option("--profile-csv", t_profile_csv, "write the stress profile here");

    // deorbit-sim
    auto* sim = app.add_subcommand("deorbit-sim", "numerical two-burn deorbit simulation");
    double s_alt1 = 0, s_alt2 = 0, s_step = -1;
    std::string s_eph_csv, s_track_csv;
    sim->add_option("--alt1-km", s_alt1, "initial circular altitude, km")->required();
    sim->add_option("--alt2-km", s_alt2, "final circular altitude, km")->required();
    sim->add_option("--step-s", s_step, "integration step, s");
    sim->add_option("--ephemeris-csv", s_eph_csv, "write the ephemeris here");
    sim->add_option("--ground-track-csv", s_track_csv, "write the ground track here");

    // screen
    auto* screen = app.add_subcommand("screen", "TLE conjunction screening of the deorbit");
    std::string sc_catalog;
    double sc_threshold = -1, sc_coarse = -1, sc_alt1 = -1, sc_alt2 = -1, sc_step = -1,
           sc_offset = 0;
    bool sc_offset_set = false;
    screen->add_option("--catalog", sc_catalog, "TLE catalog file (2- or 3-line groups)")
        ->required();
    screen->add_option("--threshold-km", sc_threshold, "miss-distance threshold, km");
    screen->add_option("--coarse-step-s", sc_coarse, "coarse sampling step, s");
    screen->add_option("--alt1-km", sc_alt1, "initial circular altitude, km");
    screen->add_option("--alt2-km", sc_alt2, "final circular altitude, km");
    screen->add_option("--step-s", sc_step, "integration step, s");
    screen
        ->add_option("--epoch-offset-s", sc_offset,
                     "ephemeris t=0 relative to the TLE epochs, s (explicit alignment)")
        ->each([&](const std::string&) { sc_offset_set = true; });

    // verify
    app.add_subcommand("verify", "recompute and check the golden design tables");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        deorbit::MissionConfig config = load_config(config_path);

        if (app.got_subcommand("mission")) {
            if (m_alt1 >= 0)
                config.alt_initial_km = m_alt1;
            if (m_alt2 >= 0)
                config.alt_final_km = m_alt2;
            if (m_mass > 0)
                config.wet_mass_kg = m_mass;
            if (!m_catalog.empty())
                config.catalog_path = m_catalog;
            return run_mission(config, outdir);
        }

        if (app.got_subcommand("hohmann")) {
            config.alt_initial_km = h_alt1;
            config.alt_final_km = h_alt2;
            if (h_mu > 0)
                config.mu = h_mu;
            if (h_rearth > 0)
                config.earth_radius_km = h_rearth;
            if (h_mass > 0)
                config.wet_mass_kg = h_mass;
            const deorbit::HohmannPlan plan =
                deorbit::plan_hohmann(config.r1(), config.r2(), config.mu);
            std::cout << deorbit::render_hohmann_text(plan);
            return 0;
        }

        if (app.got_subcommand("nozzle")) {
            config.chamber_pressure_bar = n_p0;
            config.ambient_pressure_bar = n_pamb;
            config.chamber_temperature_k = n_t0;
            config.throat_diameter_mm = n_throat;
            if (n_inlet > 0)
                config.inlet_diameter_mm = n_inlet;
            if (n_div > 0)
                config.divergent_half_angle_deg = n_div;
            if (n_conv > 0)
                config.convergent_half_angle_deg = n_conv;
            if (n_gamma > 0)
                config.gamma = n_gamma;
            if (n_rspec > 0)
                config.r_specific = n_rspec;
            if (n_samples > 0)
                config.profile_samples = n_samples;
            const deorbit::NozzleGeometry geom = deorbit::design_nozzle(
                config.chamber(), config.ambient_pa(), config.throat_diameter_mm * 1e-3,
                config.inlet_diameter_mm * 1e-3, config.divergent_half_angle_deg * M_PI / 180.0,
                config.convergent_half_angle_deg * M_PI / 180.0);
            const deorbit::NozzlePerformance perf =
                deorbit::performance(geom, config.chamber(), config.ambient_pa());
            std::cout << deorbit::render_nozzle_text(geom, perf);
            if (!n_profile_csv.empty())
                write_csv(n_profile_csv, flow_profile_csv(config, geom));
            return 0;
        }

        if (app.got_subcommand("tank")) {
            if (t_inner > 0)
                config.tank_inner_diameter_mm = t_inner;
            if (t_thick > 0)
                config.tank_thickness_mm = t_thick;
            if (t_len > 0)
                config.tank_length_mm = t_len;
            if (t_pext >= 0)
                config.tank_external_pressure_mpa = t_pext;
            if (t_tensile > 0)
                config.tensile_strength_gpa = t_tensile;
            if (t_load > 0)
                config.load_factor = t_load;
            if (t_pressure <= 0 && t_target <= 0)
                throw std::runtime_error(
                    "tank: give --pressure-mpa, or --target-vm-gpa for the inverse mode");

            double pressure_pa;
            bool derived = false;
            if (t_pressure > 0) {
                pressure_pa = t_pressure * 1e6;
            } else {
                pressure_pa =
                    deorbit::pressure_for_von_mises(config.tank(1e6), t_target * 1e9);
                derived = true;
            }
            const deorbit::TankSpec spec = config.tank(pressure_pa);
            const deorbit::SafetyVerdict verdict =
                deorbit::safety_check(spec, config.material(), config.stress_stations);
            std::cout << deorbit::render_tank_text(spec, verdict, derived);
            if (!t_profile_csv.empty())
                write_csv(t_profile_csv, stress_profile_csv(spec, config.stress_stations));
            return 0;
        }

        if (app.got_subcommand("deorbit-sim")) {
            config.alt_initial_km = s_alt1;
            config.alt_final_km = s_alt2;
            if (s_step > 0)
                config.sim_step_s = s_step;
            const deorbit::DeorbitResult result = deorbit::simulate_deorbit(
                config.r1(), config.r2(), config.body(), config.sim_step_s);
            std::cout << deorbit::render_deorbit_text(result);
            if (!s_eph_csv.empty()) {
                std::ostringstream os;
                deorbit::write_ephemeris_csv(os, result.ephemeris);
                write_csv(s_eph_csv, os.str());
            }
            if (!s_track_csv.empty()) {
                std::ostringstream os;
                deorbit::write_ground_track_csv(
                    os, deorbit::ground_track(result.ephemeris, config.earth_rotation_rate,
                                              config.initial_gst_rad, config.body()));
                write_csv(s_track_csv, os.str());
            }
            return 0;
        }

        if (app.got_subcommand("screen")) {
            config.catalog_path = sc_catalog;
            if (sc_threshold > 0)
                config.screen_threshold_km = sc_threshold;
            if (sc_coarse > 0)
                config.screen_coarse_step_s = sc_coarse;
            if (sc_alt1 > 0)
                config.alt_initial_km = sc_alt1;
            if (sc_alt2 > 0)
                config.alt_final_km = sc_alt2;
            if (sc_step > 0)
                config.sim_step_s = sc_step;
            if (sc_offset_set)
                config.tle_epoch_offset_s = sc_offset;

            std::ifstream in(config.catalog_path);
            if (!in)
                throw std::runtime_error("cannot open TLE catalog " + config.catalog_path);
            const deorbit::CatalogLoad load = deorbit::load_catalog(in);
            const deorbit::DeorbitResult result = deorbit::simulate_deorbit(
                config.r1(), config.r2(), config.body(), config.sim_step_s);
            deorbit::ConjunctionSummary summary;
            summary.screened = true;
            summary.catalog_size = static_cast<int>(load.records.size());
            summary.skipped = load.skipped;
            summary.events = deorbit::screen_conjunctions(
                result.ephemeris, load.records, config.screen_threshold_km * 1e3,
                config.screen_coarse_step_s, config.mu, config.tle_epoch_offset_s);
            std::cout << deorbit::render_screen_text(summary, config.screen_threshold_km);
            return 0;
        }

        if (app.got_subcommand("verify")) {
            const auto checks = deorbit::run_verification();
            std::cout << deorbit::render_verification(checks);
            for (const auto& c : checks)
                if (!c.pass)
                    return 1;
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "deorbit/tank.hpp"

using namespace deorbit;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// 16.56 mm inner diameter, 3.1 mm wall
TankSpec table_tank(double p_internal, double p_external = 0.0) {
    return {8.28e-3, 3.1e-3, 12e-3, p_internal, p_external};
}

MaterialSpec composite() { return {3e9, 2230.0, 1.5, "tungsten/boron-fiber composite"}; }

// Frozen from tests/oracle/golden_values.py.
namespace oracle {
constexpr double lame_a = 112490401.33889;
constexpr double lame_b = 14568.0019311522;
constexpr double hoop_inner = 324980802.67778;
constexpr double hoop_outer = 224980802.67778;
constexpr double von_mises_inner = 384851402.981557;
constexpr double pressure_for_119 = 309210253.822832;
} // namespace oracle

} // namespace

TEST_CASE("lame field") {
    SECTION("hydrostatic pressure gives b = 0 and uniform hoop -p") {
        const TankSpec spec = table_tank(5e6, 5e6);
        const LameField field = solve_lame(spec);
        CHECK(field.coeff_b == 0.0);
        CHECK_THAT(field.coeff_a, WithinRel(-5e6, 1e-12));
        CHECK_THAT(field.sigma_hoop(spec.r_inner), WithinRel(-5e6, 1e-12));
        CHECK_THAT(field.sigma_hoop(spec.r_outer()), WithinRel(-5e6, 1e-12));
    }
    SECTION("unpressurized tank is stress free") {
        const LameField field = solve_lame(table_tank(0.0));
        CHECK(field.coeff_a == 0.0);
        CHECK(field.coeff_b == 0.0);
    }
    SECTION("100 MPa internal pressure golden case") {
        const LameField field = solve_lame(table_tank(100e6));
        CHECK_THAT(field.coeff_a, WithinRel(oracle::lame_a, 1e-12));
        CHECK_THAT(field.coeff_b, WithinRel(oracle::lame_b, 1e-12));
        CHECK_THAT(field.sigma_hoop(8.28e-3), WithinRel(oracle::hoop_inner, 1e-12));
        CHECK_THAT(field.sigma_hoop(8.28e-3) / 1e6, WithinAbs(325.0, 0.5));
    }
    SECTION("boundary conditions for random specs") {
        std::mt19937 rng(99);
        std::uniform_real_distribution<double> radius(1e-3, 0.5);
        std::uniform_real_distribution<double> thickness(1e-4, 0.1);
        std::uniform_real_distribution<double> pressure(0.0, 5e8);
        for (int i = 0; i < 1000; ++i) {
            const TankSpec spec{radius(rng), thickness(rng), 0.1, pressure(rng), pressure(rng)};
            const LameField field = solve_lame(spec);
            const double scale = std::max({spec.p_internal, spec.p_external, 1.0});
            CHECK(std::fabs(field.sigma_radial(spec.r_inner) + spec.p_internal) <= 1e-9 * scale);
            CHECK(std::fabs(field.sigma_radial(spec.r_outer()) + spec.p_external) <= 1e-9 * scale);
        }
    }
    SECTION("zero wall thickness is singular") {
        CHECK_THROWS_AS(solve_lame(TankSpec{8.28e-3, 0.0, 12e-3, 1e5, 0.0}), std::domain_error);
        CHECK_THROWS_AS(solve_lame(TankSpec{0.0, 1e-3, 12e-3, 1e5, 0.0}), std::domain_error);
        CHECK_THROWS_AS(solve_lame(TankSpec{8.28e-3, 1e-3, 12e-3, -1.0, 0.0}), std::domain_error);
    }
}

TEST_CASE("stress profile") {
    const TankSpec spec = table_tank(100e6);
    const auto profile = stress_profile(spec, 101);
    REQUIRE(profile.size() == 101);

    SECTION("radial stress boundary conditions are exact") {
        CHECK_THAT(profile.front().sigma_radial, WithinRel(-spec.p_internal, 1e-12));
        CHECK(std::fabs(profile.back().sigma_radial) <= 1e-9 * spec.p_internal);
        CHECK(profile.front().r == spec.r_inner);
        CHECK(profile.back().r == spec.r_outer());
    }
    SECTION("outer-face hoop stress golden value") {
        CHECK_THAT(profile.back().sigma_hoop, WithinRel(oracle::hoop_outer, 1e-12));
        CHECK_THAT(profile.back().sigma_hoop / 1e6, WithinAbs(225.0, 0.5));
        // Lame identity for p_o = 0: inner hoop - outer hoop = p_internal
        CHECK_THAT(profile.front().sigma_hoop - profile.back().sigma_hoop,
                   WithinRel(spec.p_internal, 1e-12));
    }
    SECTION("hoop stress decreases monotonically outward") {
        for (size_t i = 1; i < profile.size(); ++i)
            CHECK(profile[i].sigma_hoop < profile[i - 1].sigma_hoop);
    }
    SECTION("peak von Mises sits at the inner face") {
        CHECK_THAT(profile.front().von_mises, WithinRel(oracle::von_mises_inner, 1e-12));
        for (const StressStation& st : profile)
            CHECK(st.von_mises <= profile.front().von_mises);
    }
    SECTION("stresses scale linearly with pressure") {
        const auto doubled = stress_profile(table_tank(200e6), 101);
        for (size_t i = 0; i < profile.size(); ++i) {
            CHECK_THAT(doubled[i].sigma_radial, WithinRel(2.0 * profile[i].sigma_radial, 1e-12));
            CHECK_THAT(doubled[i].sigma_hoop, WithinRel(2.0 * profile[i].sigma_hoop, 1e-12));
            CHECK_THAT(doubled[i].von_mises, WithinRel(2.0 * profile[i].von_mises, 1e-12));
        }
    }
    SECTION("lame sum rule sigma_h + sigma_r = 2a") {
        const LameField field = solve_lame(spec);
        for (const StressStation& st : profile)
            CHECK_THAT(st.sigma_hoop + st.sigma_radial, WithinRel(2.0 * field.coeff_a, 1e-12));
    }
    SECTION("closed-end axial term") {
        const LameField field = solve_lame(spec);
        const auto closed = stress_profile(spec, 11, true);
        // with sigma_z = a = (sigma_r + sigma_h)/2 the equivalent stress is
        // sqrt(3) b / r^2
        for (const StressStation& st : closed)
            CHECK_THAT(st.von_mises, WithinRel(std::sqrt(3.0) * field.coeff_b / (st.r * st.r), 1e-12));
    }
    CHECK_THROWS_AS(stress_profile(spec, 1), std::domain_error);
}

TEST_CASE("safety check") {
    SECTION("margin verdict for the 1.19 GPa load case") {
        const double pressure = pressure_for_von_mises(table_tank(100e6), 1.19e9);
        CHECK_THAT(pressure, WithinRel(oracle::pressure_for_119, 1e-9));

        const SafetyVerdict verdict = safety_check(table_tank(pressure), composite());
        CHECK_THAT(verdict.max_von_mises, WithinRel(1.19e9, 1e-9));
        CHECK_THAT(verdict.allowable, WithinRel(2e9, 1e-12));
        CHECK(verdict.pass);
        CHECK_THAT(verdict.margin, WithinRel(2.0 / 1.19, 1e-9));
    }
    SECTION("direct verdict from the reported peak stress") {
        const SafetyVerdict verdict = verdict_from(1.19e9, composite());
        CHECK_THAT(verdict.allowable, WithinRel(2e9, 1e-12));
        CHECK(verdict.pass);
    }
    SECTION("zero pressure passes with maximal margin") {
        const SafetyVerdict verdict = safety_check(table_tank(0.0), composite());
        CHECK(verdict.pass);
        CHECK(std::isinf(verdict.margin));
    }
    SECTION("crossing the allowable fails") {
        const MaterialSpec mat = composite();
        const double allowable = mat.tensile_strength / mat.load_factor;
        CHECK_FALSE(verdict_from(allowable * 1.01, mat).pass);
        CHECK(verdict_from(allowable, mat).pass);

        // synthetic spec pushed just past the allowable
        const double pressure = pressure_for_von_mises(table_tank(100e6), allowable * 1.01);
        CHECK_FALSE(safety_check(table_tank(pressure), mat).pass);
    }
    SECTION("inverse mode input validation") {
        CHECK_THROWS_AS(pressure_for_von_mises(table_tank(0.0), 1e9), std::domain_error);
        CHECK_THROWS_AS(pressure_for_von_mises(table_tank(1e6), 0.0), std::domain_error);
    }
}

TEST_CASE("stress profile csv schema") {
    std::ostringstream os;
    write_stress_profile_csv(os, stress_profile(table_tank(100e6), 5));
    const std::string text = os.str();
    CHECK(text.rfind("r_m,sigma_radial_pa,sigma_hoop_pa,von_mises_pa\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 6);
}

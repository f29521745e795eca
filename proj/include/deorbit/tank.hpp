#pragma once

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace deorbit {

/// Thick-walled cylindrical tank under internal/external pressure.
struct TankSpec {
    double r_inner;    // m
    double thickness;  // m
    double length;     // m
    double p_internal; // Pa
    double p_external; // Pa

    double r_outer() const { return r_inner + thickness; }
};

/// Lame coefficient pair. In the tension-positive convention used throughout
/// the toolkit the stress field is
///     sigma_radial(r) = a - b/r^2,   sigma_hoop(r) = a + b/r^2,
/// which matches the pressure-positive pair (a, b) of p = b/r^2 - a at each
/// pressurized face: sigma_radial(r_inner) = -p_internal and
/// sigma_radial(r_outer) = -p_external.
struct LameField {
    double coeff_a; // Pa
    double coeff_b; // Pa m^2

    double sigma_radial(double r) const { return coeff_a - coeff_b / (r * r); }
    double sigma_hoop(double r) const { return coeff_a + coeff_b / (r * r); }
};

struct MaterialSpec {
    double tensile_strength; // Pa
    double density;          // kg/m^3
    double load_factor;      // >= 1
    std::string name;
};

struct StressStation {
    double r;            // m
    double sigma_radial; // Pa, tension positive
    double sigma_hoop;   // Pa, tension positive
    double von_mises;    // Pa
};

struct SafetyVerdict {
    double max_von_mises; // Pa
    double allowable;     // Pa, tensile strength / load factor
    double margin;        // allowable / max_von_mises
    bool pass;
};

namespace detail {

inline void check_tank(const TankSpec& spec) {
    if (spec.r_inner <= 0.0)
        throw std::domain_error("tank: inner radius must be positive");
    if (spec.thickness == 0.0)
        throw std::domain_error("tank: r_outer = r_inner makes the Lame system singular");
    if (spec.thickness < 0.0)
        throw std::domain_error("tank: thickness must be positive");
    if (spec.p_internal < 0.0 || spec.p_external < 0.0)
        throw std::domain_error("tank: pressures must be non-negative");
}

} // namespace detail

/// Solve the 2x2 linear system given by the two radial boundary conditions.
inline LameField solve_lame(const TankSpec& spec) {
    detail::check_tank(spec);
    const double ri2 = spec.r_inner * spec.r_inner;
    const double re2 = spec.r_outer() * spec.r_outer();
    LameField field;
    field.coeff_a = (spec.p_internal * ri2 - spec.p_external * re2) / (re2 - ri2);
    field.coeff_b = (spec.p_internal - spec.p_external) * ri2 * re2 / (re2 - ri2);
    return field;
}

namespace detail {

inline double von_mises_plane(double s_r, double s_h) {
    return std::sqrt(s_h * s_h - s_h * s_r + s_r * s_r);
}

inline double von_mises_triaxial(double s_r, double s_h, double s_z) {
    const double d1 = s_r - s_h;
    const double d2 = s_h - s_z;
    const double d3 = s_z - s_r;
    return std::sqrt(0.5 * (d1 * d1 + d2 * d2 + d3 * d3));
}

} // namespace detail

/// Sample the stress field at n_stations radii spanning [r_inner, r_outer].
/// Plane stress by default (open-ended cylinder); closed_end adds the axial
/// component sigma_z = (p_i r_i^2 - p_o r_e^2)/(r_e^2 - r_i^2), which equals
/// the Lame coefficient a.
inline std::vector<StressStation> stress_profile(const TankSpec& spec, int n_stations,
                                                 bool closed_end = false) {
    if (n_stations < 2)
        throw std::domain_error("stress_profile: need at least 2 stations");
    const LameField field = solve_lame(spec);
    const double r_in = spec.r_inner;
    const double r_out = spec.r_outer();

    std::vector<StressStation> profile;
    profile.reserve(static_cast<size_t>(n_stations));
    for (int i = 0; i < n_stations; ++i) {
        const double f = static_cast<double>(i) / (n_stations - 1);
        const double r = i == n_stations - 1 ? r_out : r_in + f * (r_out - r_in);
        StressStation st;
        st.r = r;
        st.sigma_radial = field.sigma_radial(r);
        st.sigma_hoop = field.sigma_hoop(r);
        st.von_mises = closed_end
                           ? detail::von_mises_triaxial(st.sigma_radial, st.sigma_hoop, field.coeff_a)
                           : detail::von_mises_plane(st.sigma_radial, st.sigma_hoop);
        profile.push_back(st);
    }
    return profile;
}

inline SafetyVerdict verdict_from(double max_von_mises, const MaterialSpec& material) {
    if (material.tensile_strength <= 0.0)
        throw std::domain_error("safety_check: tensile strength must be positive");
    if (material.load_factor < 1.0)
        throw std::domain_error("safety_check: load factor must be >= 1");
    SafetyVerdict verdict;
    verdict.max_von_mises = max_von_mises;
    verdict.allowable = material.tensile_strength / material.load_factor;
    verdict.margin = max_von_mises > 0.0 ? verdict.allowable / max_von_mises
                                         : std::numeric_limits<double>::infinity();
    verdict.pass = max_von_mises <= verdict.allowable;
    return verdict;
}

/// Compare the peak von Mises stress against tensile strength derated by the
/// load factor. For internal pressurization the peak sits at the inner face.
inline SafetyVerdict safety_check(const TankSpec& spec, const MaterialSpec& material,
                                  int n_stations = 201, bool closed_end = false) {
    double max_vm = 0.0;
    for (const StressStation& st : stress_profile(spec, n_stations, closed_end))
        max_vm = std::max(max_vm, st.von_mises);
    return verdict_from(max_vm, material);
}

/// Inverse mode: the internal pressure at which the peak von Mises stress
/// reaches target_von_mises, holding the internal/external pressure ratio
/// fixed. Stresses are linear in the pressure pair, so this is one scaling.
inline double pressure_for_von_mises(const TankSpec& spec, double target_von_mises,
                                     bool closed_end = false) {
    if (target_von_mises <= 0.0)
        throw std::domain_error("pressure_for_von_mises: target must be positive");
    if (spec.p_internal <= 0.0)
        throw std::domain_error("pressure_for_von_mises: spec needs a nonzero internal pressure to scale");
    double max_vm = 0.0;
    for (const StressStation& st : stress_profile(spec, 201, closed_end))
        max_vm = std::max(max_vm, st.von_mises);
    return spec.p_internal * target_von_mises / max_vm;
}

/// Stress profile CSV, one row per radius.
inline void write_stress_profile_csv(std::ostream& os, const std::vector<StressStation>& profile) {
    os << "r_m,sigma_radial_pa,sigma_hoop_pa,von_mises_pa\n";
    char line[128];
    for (const StressStation& st : profile) {
        std::snprintf(line, sizeof line, "%.9e,%.9e,%.9e,%.9e\n",
                      st.r, st.sigma_radial, st.sigma_hoop, st.von_mises);
        os << line;
    }
}

} // namespace deorbit

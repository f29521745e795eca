#pragma once

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace deorbit {

/// Calorically perfect gas.
struct GasModel {
    double gamma;      // ratio of specific heats, > 1
    double r_specific; // specific gas constant, J/(kg K)
    std::string name;

    static GasModel air() { return {1.4, 287.0, "air"}; }
};

/// Stagnation (reservoir) conditions feeding the nozzle.
struct ChamberState {
    double p0; // stagnation pressure, Pa (absolute)
    double t0; // stagnation temperature, K
    GasModel gas;
};

struct IsentropicRatios {
    double t0_over_t;
    double p0_over_p;
    double a_over_astar; // +infinity at mach 0
};

enum class FlowBranch { subsonic, supersonic };

/// Conical converging-diverging nozzle. Radius varies linearly with x in each
/// cone; tan(half angle) = delta_r / length.
struct NozzleGeometry {
    double d_inlet;  // m
    double d_throat; // m
    double d_exit;   // m
    double len_convergent; // m
    double len_divergent;  // m
    double half_angle_divergent; // rad

    double inlet_area() const { return M_PI * d_inlet * d_inlet / 4.0; }
    double throat_area() const { return M_PI * d_throat * d_throat / 4.0; }
    double exit_area() const { return M_PI * d_exit * d_exit / 4.0; }
    double total_length() const { return len_convergent + len_divergent; }
};

/// One sampled point of the quasi-1D solution.
struct FlowStation {
    double x;    // axial position from inlet, m
    double area; // m^2
    double mach;
    double p; // static pressure, Pa
    double t; // static temperature, K
    double v; // flow speed, m/s
};

struct NozzlePerformance {
    double mdot;   // choked mass flow, kg/s
    double v_exit; // m/s
    double thrust; // N at the given ambient pressure
    double u_eq;   // effective exhaust velocity thrust/mdot, m/s
};

namespace detail {

inline void check_gamma(double gamma) {
    if (gamma <= 1.0)
        throw std::domain_error("gamma must exceed 1");
}

} // namespace detail

/// Isentropic stagnation-to-static ratios at a given Mach number.
/// T0/T = 1 + (gamma-1)/2 M^2; the pressure and area ratios follow from the
/// isentropic p-T relation and choked mass conservation.
inline IsentropicRatios isentropic_ratios(double mach, double gamma) {
    detail::check_gamma(gamma);
    if (mach < 0.0)
        throw std::domain_error("isentropic_ratios: mach must be non-negative");

    IsentropicRatios out;
    out.t0_over_t = 1.0 + 0.5 * (gamma - 1.0) * mach * mach;
    out.p0_over_p = std::pow(out.t0_over_t, gamma / (gamma - 1.0));
    if (mach == 0.0) {
        out.a_over_astar = std::numeric_limits<double>::infinity();
    } else {
        const double exponent = (gamma + 1.0) / (2.0 * (gamma - 1.0));
        out.a_over_astar =
            std::pow(2.0 / (gamma + 1.0) * out.t0_over_t, exponent) / mach;
    }
    return out;
}

/// Critical (sonic) stagnation-to-static pressure ratio ((gamma+1)/2)^(gamma/(gamma-1)).
inline double critical_pressure_ratio(double gamma) {
    detail::check_gamma(gamma);
    return std::pow(0.5 * (gamma + 1.0), gamma / (gamma - 1.0));
}

/// Closed-form inverse of the isentropic pressure ratio.
inline double mach_from_pressure_ratio(double p0_over_p, double gamma) {
    detail::check_gamma(gamma);
    if (p0_over_p < 1.0)
        throw std::domain_error("mach_from_pressure_ratio: ratio must be >= 1");
    const double g1 = (gamma - 1.0) / gamma;
    return std::sqrt(2.0 / (gamma - 1.0) * (std::pow(p0_over_p, g1) - 1.0));
}

/// Invert the area-Mach relation on the requested branch by bisection.
/// Brackets are fixed at [1e-6, 1] (subsonic) and [1, 50] (supersonic); the
/// solve runs to machine-level interval width, well inside the 1e-10
/// area-ratio contract for any ratio of practical size.
inline double mach_from_area_ratio(double a_over_astar, FlowBranch branch, double gamma) {
    detail::check_gamma(gamma);
    if (a_over_astar < 1.0)
        throw std::domain_error("mach_from_area_ratio: area ratio must be >= 1");
    if (a_over_astar == 1.0)
        return 1.0;

    double lo = branch == FlowBranch::subsonic ? 1e-6 : 1.0;
    double hi = branch == FlowBranch::subsonic ? 1.0 : 50.0;
    if (a_over_astar > isentropic_ratios(branch == FlowBranch::subsonic ? lo : hi, gamma).a_over_astar)
        throw std::domain_error("mach_from_area_ratio: area ratio outside solver bracket");

    // On the subsonic branch A/A* falls with Mach, on the supersonic branch it rises.
    const bool rising = branch == FlowBranch::supersonic;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        const double ratio = isentropic_ratios(mid, gamma).a_over_astar;
        if ((ratio > a_over_astar) == rising)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

/// Size a conical C-D nozzle for perfect expansion from chamber conditions to
/// the given ambient pressure. Exit Mach comes from the pressure ratio, exit
/// area from the area-Mach relation, cone lengths from the radius differences
/// and half-angle tangents.
inline NozzleGeometry design_nozzle(const ChamberState& chamber, double p_ambient,
                                    double d_throat, double d_inlet,
                                    double half_angle_divergent,
                                    double half_angle_convergent) {
    detail::check_gamma(chamber.gas.gamma);
    if (chamber.p0 <= 0.0 || chamber.t0 <= 0.0)
        throw std::domain_error("design_nozzle: chamber state must be positive");
    if (p_ambient <= 0.0)
        throw std::domain_error("design_nozzle: ambient pressure must be positive");
    if (d_throat <= 0.0 || d_inlet <= d_throat)
        throw std::domain_error("design_nozzle: need d_inlet > d_throat > 0");
    if (half_angle_divergent <= 0.0 || half_angle_divergent >= M_PI_2 ||
        half_angle_convergent <= 0.0 || half_angle_convergent >= M_PI_2)
        throw std::domain_error("design_nozzle: half angles must lie in (0, pi/2)");

    const double gamma = chamber.gas.gamma;
    const double pressure_ratio = chamber.p0 / p_ambient;
    if (pressure_ratio < 1.0)
        throw std::domain_error("design_nozzle: chamber pressure below ambient");

    const double mach_exit = mach_from_pressure_ratio(pressure_ratio, gamma);
    if (mach_exit < 1.0 - 1e-4)
        throw std::domain_error(
            "design_nozzle: pressure ratio " + std::to_string(pressure_ratio) +
            " is below the critical ratio " + std::to_string(critical_pressure_ratio(gamma)) +
            "; supersonic design infeasible");

    NozzleGeometry geom;
    geom.d_throat = d_throat;
    geom.d_inlet = d_inlet;
    geom.d_exit = d_throat * std::sqrt(isentropic_ratios(mach_exit, gamma).a_over_astar);
    geom.half_angle_divergent = half_angle_divergent;
    geom.len_divergent = 0.5 * (geom.d_exit - d_throat) / std::tan(half_angle_divergent);
    geom.len_convergent = 0.5 * (d_inlet - d_throat) / std::tan(half_angle_convergent);
    return geom;
}

/// Sample the fully started, shock-free quasi-1D isentropic solution along the
/// nozzle axis: subsonic branch upstream of the throat, exactly sonic at the
/// throat, supersonic downstream. The throat is always one of the stations.
inline std::vector<FlowStation> quasi1d_profile(const NozzleGeometry& geom,
                                                const ChamberState& chamber,
                                                int n_samples) {
    if (n_samples < 3)
        throw std::domain_error("quasi1d_profile: need at least 3 samples");
    if (geom.d_throat <= 0.0 || geom.d_inlet <= geom.d_throat || geom.d_exit <= geom.d_throat)
        throw std::domain_error("quasi1d_profile: invalid nozzle geometry");
    if (geom.len_convergent <= 0.0 || geom.len_divergent <= 0.0)
        throw std::domain_error("quasi1d_profile: cone lengths must be positive");
    if (chamber.p0 <= 0.0 || chamber.t0 <= 0.0)
        throw std::domain_error("quasi1d_profile: chamber state must be positive");

    const double gamma = chamber.gas.gamma;
    const double r_gas = chamber.gas.r_specific;
    const double r_inlet = geom.d_inlet / 2.0;
    const double r_throat = geom.d_throat / 2.0;
    const double r_exit = geom.d_exit / 2.0;
    const double throat_area = geom.throat_area();

    // Split stations between the cones in proportion to length, always keeping
    // the throat as a shared station.
    const double total = geom.total_length();
    int n_conv = static_cast<int>(std::lround((n_samples - 1) * geom.len_convergent / total));
    n_conv = std::max(1, std::min(n_samples - 2, n_conv));
    const int n_div = n_samples - 1 - n_conv;

    std::vector<FlowStation> stations;
    stations.reserve(static_cast<size_t>(n_samples));

    auto emit = [&](double x, double radius, bool upstream, bool at_throat) {
        FlowStation st;
        st.x = x;
        st.area = M_PI * radius * radius;
        if (at_throat) {
            st.mach = 1.0;
        } else {
            const double ratio = st.area / throat_area;
            st.mach = mach_from_area_ratio(
                ratio, upstream ? FlowBranch::subsonic : FlowBranch::supersonic, gamma);
        }
        const IsentropicRatios iso = isentropic_ratios(st.mach, gamma);
        st.t = chamber.t0 / iso.t0_over_t;
        st.p = chamber.p0 / iso.p0_over_p;
        st.v = st.mach * std::sqrt(gamma * r_gas * st.t);
        stations.push_back(st);
    };

    for (int i = 0; i < n_conv; ++i) {
        const double f = static_cast<double>(i) / n_conv;
        emit(f * geom.len_convergent, r_inlet + f * (r_throat - r_inlet), true, false);
    }
    emit(geom.len_convergent, r_throat, false, true);
    for (int j = 1; j <= n_div; ++j) {
        const double f = static_cast<double>(j) / n_div;
        emit(geom.len_convergent + f * geom.len_divergent,
             r_throat + f * (r_exit - r_throat), false, false);
    }
    return stations;
}

/// Choked mass flow, exit velocity and thrust of a started nozzle.
/// mdot = p0 A* sqrt(gamma/(R T0)) (2/(gamma+1))^((gamma+1)/(2(gamma-1)));
/// thrust = mdot v_exit + (p_exit - p_ambient) A_exit.
inline NozzlePerformance performance(const NozzleGeometry& geom, const ChamberState& chamber,
                                     double p_ambient) {
    detail::check_gamma(chamber.gas.gamma);
    if (chamber.p0 <= 0.0 || chamber.t0 <= 0.0)
        throw std::domain_error("performance: chamber state must be positive");
    if (p_ambient < 0.0)
        throw std::domain_error("performance: ambient pressure must be non-negative");

    const double gamma = chamber.gas.gamma;
    if (p_ambient > 0.0 && chamber.p0 / p_ambient < critical_pressure_ratio(gamma))
        throw std::domain_error("performance: nozzle unstarted, chamber-to-ambient ratio below critical");

    const double r_gas = chamber.gas.r_specific;
    const double mach_exit =
        mach_from_area_ratio(geom.exit_area() / geom.throat_area(), FlowBranch::supersonic, gamma);
    const IsentropicRatios iso = isentropic_ratios(mach_exit, gamma);
    const double t_exit = chamber.t0 / iso.t0_over_t;
    const double p_exit = chamber.p0 / iso.p0_over_p;

    NozzlePerformance perf;
    perf.mdot = chamber.p0 * geom.throat_area() * std::sqrt(gamma / (r_gas * chamber.t0)) *
                std::pow(2.0 / (gamma + 1.0), (gamma + 1.0) / (2.0 * (gamma - 1.0)));
    perf.v_exit = mach_exit * std::sqrt(gamma * r_gas * t_exit);
    perf.thrust = perf.mdot * perf.v_exit + (p_exit - p_ambient) * geom.exit_area();
    perf.u_eq = perf.thrust / perf.mdot;
    return perf;
}

/// Flow profile CSV, one row per station.
inline void write_flow_profile_csv(std::ostream& os, const std::vector<FlowStation>& profile) {
    os << "x_m,area_m2,mach,p_pa,t_k,v_mps\n";
    char line[160];
    for (const FlowStation& st : profile) {
        std::snprintf(line, sizeof line, "%.9e,%.9e,%.9e,%.9e,%.9e,%.9e\n",
                      st.x, st.area, st.mach, st.p, st.t, st.v);
        os << line;
    }
}

} // namespace deorbit

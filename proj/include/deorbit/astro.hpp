#pragma once

#include <cmath>
#include <stdexcept>

namespace deorbit {

/// Central body. Defaults match the mission tables: mu = 398600 km^3/s^2,
/// mean equatorial radius 6370 km.
struct Body {
    double mu;     // gravitational parameter, m^3/s^2
    double radius; // mean equatorial radius, m

    static constexpr Body earth() { return {3.986e14, 6.370e6}; }
};

struct CircularOrbit {
    double r; // orbit radius from body center, m
    Body body;

    double speed() const { return std::sqrt(body.mu / r); }
    double energy() const { return -body.mu / (2.0 * r); }
    double altitude() const { return r - body.radius; }
    double period() const { return 2.0 * M_PI * std::sqrt(r * r * r / body.mu); }
};

// Two-impulse coplanar circular-to-circular transfer. All quantities SI.
struct HohmannPlan {
    double r1 = 0.0; // initial circular radius, m
    double r2 = 0.0; // final circular radius, m
    double a_transfer = 0.0;   // transfer semi-major axis, m
    double eps_transfer = 0.0; // specific mechanical energies, m^2/s^2
    double eps_orbit1 = 0.0;
    double eps_orbit2 = 0.0;
    double v_orbit1 = 0.0; // circular speeds, m/s
    double v_orbit2 = 0.0;
    double v_t1 = 0.0; // transfer-orbit speeds at r1 and r2, m/s
    double v_t2 = 0.0;
    double dv1 = 0.0; // impulse magnitudes, m/s
    double dv2 = 0.0;
    double dv_total = 0.0;
    double tof = 0.0; // transfer time of flight (half ellipse period), s
};

struct PropellantBudget {
    double dv = 0.0;           // required velocity change, m/s
    double u_eq = 0.0;         // effective exhaust velocity, m/s
    double mass_ratio = 1.0;   // m_initial / m_final
    double m_initial = 0.0;    // kg
    double m_final = 0.0;      // kg
    double m_propellant = 0.0; // kg
};

/// Circular orbit speed sqrt(mu/r).
inline double circular_velocity(double r, double mu) {
    if (r <= 0.0)
        throw std::domain_error("circular_velocity: radius must be positive");
    if (mu <= 0.0)
        throw std::domain_error("circular_velocity: mu must be positive");
    return std::sqrt(mu / r);
}

/// Specific mechanical energy -mu/(2a) of an orbit with semi-major axis a.
inline double specific_energy(double a, double mu) {
    if (a == 0.0)
        throw std::domain_error("specific_energy: semi-major axis must be nonzero");
    if (mu <= 0.0)
        throw std::domain_error("specific_energy: mu must be positive");
    return -mu / (2.0 * a);
}

/// Plan a two-impulse transfer between coplanar circular orbits of radii r1
/// and r2. Works for descent (r1 > r2) and ascent alike; for r1 == r2 the plan
/// degenerates to zero burns with tof = half the circular period.
///
/// Transfer-orbit speeds come from vis-viva v = sqrt(2(mu/r + eps)) evaluated
/// at each terminal radius with eps = -mu/(2 a_transfer).
inline HohmannPlan plan_hohmann(double r1, double r2, double mu) {
    if (r1 <= 0.0 || r2 <= 0.0)
        throw std::domain_error("plan_hohmann: radii must be positive");
    if (mu <= 0.0)
        throw std::domain_error("plan_hohmann: mu must be positive");

    HohmannPlan plan;
    plan.r1 = r1;
    plan.r2 = r2;
    plan.a_transfer = 0.5 * (r1 + r2);
    plan.eps_transfer = specific_energy(plan.a_transfer, mu);
    plan.eps_orbit1 = specific_energy(r1, mu);
    plan.eps_orbit2 = specific_energy(r2, mu);
    plan.v_orbit1 = circular_velocity(r1, mu);
    plan.v_orbit2 = circular_velocity(r2, mu);
    plan.v_t1 = std::sqrt(2.0 * (mu / r1 + plan.eps_transfer));
    plan.v_t2 = std::sqrt(2.0 * (mu / r2 + plan.eps_transfer));
    plan.dv1 = std::fabs(plan.v_t1 - plan.v_orbit1);
    plan.dv2 = std::fabs(plan.v_orbit2 - plan.v_t2);
    plan.dv_total = plan.dv1 + plan.dv2;
    plan.tof = M_PI * std::sqrt(plan.a_transfer * plan.a_transfer * plan.a_transfer / mu);
    return plan;
}

/// Rocket-equation propellant sizing: dv = u_eq * ln(m_i/m_f).
inline PropellantBudget size_propellant(double dv, double u_eq, double m_initial) {
    if (u_eq <= 0.0)
        throw std::domain_error("size_propellant: u_eq must be positive");
    if (dv < 0.0)
        throw std::domain_error("size_propellant: dv must be non-negative");
    if (m_initial <= 0.0)
        throw std::domain_error("size_propellant: initial mass must be positive");

    PropellantBudget budget;
    budget.dv = dv;
    budget.u_eq = u_eq;
    budget.mass_ratio = std::exp(dv / u_eq);
    budget.m_initial = m_initial;
    budget.m_final = m_initial / budget.mass_ratio;
    budget.m_propellant = m_initial - budget.m_final;
    return budget;
}

} // namespace deorbit

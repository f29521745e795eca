#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "deorbit/astro.hpp"
#include "deorbit/vec3.hpp"

namespace deorbit {

/// Inertial Cartesian orbit state at epoch offset t (single Earth-centered
/// inertial frame, no precession/nutation).
struct StateVector {
    double t = 0.0; // s
    Vec3 position;  // m
    Vec3 velocity;  // m/s
};

/// Time-ordered trajectory with step metadata. If the trajectory hit the body
/// surface, `reentered` is set and the last state is the first sample at or
/// below the surface.
struct Ephemeris {
    std::vector<StateVector> states;
    double step = 0.0; // nominal step, s
    bool reentered = false;

    const StateVector& front() const { return states.front(); }
    const StateVector& back() const { return states.back(); }
    double duration() const { return states.back().t - states.front().t; }
};

struct GeodeticPoint {
    double t;   // s
    double lat; // rad
    double lon; // rad, wrapped to (-pi, pi]
    double alt; // m above the spherical surface
};

struct BurnRecord {
    double t; // s
    Vec3 dv;  // m/s
};

struct DeorbitResult {
    Ephemeris ephemeris; // coast + verification orbit, burns applied in place
    std::array<BurnRecord, 2> burns;
    double transfer_apogee_radius = 0.0;  // m, osculating after burn 1
    double transfer_perigee_radius = 0.0; // m
    double final_radius = 0.0;            // m, osculating semi-major axis after burn 2
    double final_eccentricity = 0.0;
    double coast_duration = 0.0; // s between the burns
};

/// Re-entry during a maneuver simulation; carries whatever trajectory was
/// integrated before the stop.
struct ReentryError : std::runtime_error {
    Ephemeris partial;
    ReentryError(const char* msg, Ephemeris eph)
        : std::runtime_error(msg), partial(std::move(eph)) {}
};

/// Newtonian point-mass gravity -mu r / |r|^3.
inline Vec3 two_body_accel(const Vec3& position, double mu) {
    const double r = position.norm();
    if (r <= 0.0)
        throw std::domain_error("two_body_accel: position must be nonzero");
    return position * (-mu / (r * r * r));
}

namespace detail {

struct Deriv {
    Vec3 dr;
    Vec3 dv;
};

inline Deriv eval(const Vec3& r, const Vec3& v, double mu) { return {v, two_body_accel(r, mu)}; }

} // namespace detail

/// One classical RK4 step of size h.
inline StateVector rk4_step(const StateVector& s, double h, double mu) {
    using detail::eval;
    const detail::Deriv k1 = eval(s.position, s.velocity, mu);
    const detail::Deriv k2 = eval(s.position + k1.dr * (h / 2), s.velocity + k1.dv * (h / 2), mu);
    const detail::Deriv k3 = eval(s.position + k2.dr * (h / 2), s.velocity + k2.dv * (h / 2), mu);
    const detail::Deriv k4 = eval(s.position + k3.dr * h, s.velocity + k3.dv * h, mu);

    StateVector out;
    out.t = s.t + h;
    out.position = s.position + (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr) * (h / 6.0);
    out.velocity = s.velocity + (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv) * (h / 6.0);
    return out;
}

/// Fixed-step RK4 propagation of the two-body equations. The final sample
/// lands exactly at `duration` (last step shortened). Stops early with the
/// reentered flag set if the trajectory reaches the body surface.
inline Ephemeris propagate(const StateVector& initial, double duration, double step,
                           const Body& body) {
    if (step <= 0.0)
        throw std::domain_error("propagate: step must be positive");
    if (duration < 0.0)
        throw std::domain_error("propagate: duration must be non-negative");

    Ephemeris eph;
    eph.step = step;
    eph.states.push_back(initial);

    StateVector current = initial;
    double elapsed = 0.0;
    for (long long k = 1; elapsed < duration; ++k) {
        const double target = std::min(static_cast<double>(k) * step, duration);
        current = rk4_step(current, target - elapsed, body.mu);
        current.t = initial.t + target; // exact tag, no accumulated roundoff
        elapsed = target;
        eph.states.push_back(current);
        if (current.position.norm() <= body.radius) {
            eph.reentered = true;
            break;
        }
    }
    return eph;
}

/// Instantaneous along-track impulse: velocity += dv * unit(velocity).
/// Negative magnitudes are retrograde. Position and epoch are unchanged.
inline StateVector apply_impulse(const StateVector& state, double dv_along_track) {
    const double speed = state.velocity.norm();
    if (speed <= 0.0)
        throw std::domain_error("apply_impulse: velocity must be nonzero");
    StateVector out = state;
    out.velocity += state.velocity * (dv_along_track / speed);
    return out;
}

/// Osculating semi-major axis from vis-viva.
inline double osculating_semi_major_axis(const StateVector& s, double mu) {
    const double r = s.position.norm();
    const double energy = 0.5 * s.velocity.norm_squared() - mu / r;
    return -mu / (2.0 * energy);
}

/// Eccentricity vector ((v^2 - mu/r) r - (r.v) v) / mu.
inline Vec3 eccentricity_vector(const StateVector& s, double mu) {
    const double r = s.position.norm();
    const double v2 = s.velocity.norm_squared();
    const double rv = s.position.dot(s.velocity);
    return (s.position * (v2 - mu / r) - s.velocity * rv) / mu;
}

/// Simulate the two-burn circular-to-circular deorbit: retrograde burn at r1,
/// coast to perigee (radial-velocity sign change, bisected to 1e-3 s),
/// retrograde burn there, then one verification orbit at the target radius.
inline DeorbitResult simulate_deorbit(double r1, double r2, const Body& body, double step) {
    if (!(r1 >= r2 && r2 > body.radius))
        throw std::domain_error("simulate_deorbit: need r1 >= r2 > body radius");
    if (step <= 0.0)
        throw std::domain_error("simulate_deorbit: step must be positive");

    const double mu = body.mu;
    const HohmannPlan plan = plan_hohmann(r1, r2, mu);

    StateVector start;
    start.t = 0.0;
    start.position = {r1, 0.0, 0.0};
    start.velocity = {0.0, plan.v_orbit1, 0.0};

    DeorbitResult result;
    result.ephemeris.step = step;

    // Burn 1: signed along-track delta onto the transfer ellipse.
    StateVector onTransfer = apply_impulse(start, plan.v_t1 - plan.v_orbit1);
    result.burns[0] = {0.0, onTransfer.velocity - start.velocity};
    result.ephemeris.states.push_back(onTransfer);

    const Vec3 ecc_t = eccentricity_vector(onTransfer, mu);
    const double a_t = osculating_semi_major_axis(onTransfer, mu);
    result.transfer_apogee_radius = a_t * (1.0 + ecc_t.norm());
    result.transfer_perigee_radius = a_t * (1.0 - ecc_t.norm());

    StateVector atPerigee;
    if (plan.dv_total == 0.0) {
        // Degenerate r1 == r2 case: no perigee crossing exists, coast half a period.
        Ephemeris coast = propagate(onTransfer, plan.tof, step, body);
        if (coast.reentered)
            throw ReentryError("simulate_deorbit: re-entry during coast", std::move(coast));
        result.ephemeris.states.assign(coast.states.begin(), coast.states.end());
        atPerigee = result.ephemeris.states.back();
    } else {
        // Step along the transfer ellipse watching the radial velocity sign.
        const double t_limit = 4.0 * plan.tof + 10.0 * step;
        StateVector prev = onTransfer;
        double prev_rv = 0.0; // start is apoapsis, radial velocity exactly zero
        bool found = false;
        while (prev.t < t_limit) {
            StateVector next = rk4_step(prev, step, mu);
            if (next.position.norm() <= body.radius) {
                result.ephemeris.states.push_back(next);
                throw ReentryError("simulate_deorbit: re-entry during coast",
                                   std::move(result.ephemeris));
            }
            const double rv = next.position.dot(next.velocity);
            if (prev_rv < 0.0 && rv >= 0.0) {
                // Bisect the step for the crossing time to 1e-3 s.
                double lo = 0.0;
                double hi = step;
                while (hi - lo > 1e-3) {
                    const double mid = 0.5 * (lo + hi);
                    const StateVector probe = rk4_step(prev, mid, mu);
                    (probe.position.dot(probe.velocity) < 0.0 ? lo : hi) = mid;
                }
                const double dt = 0.5 * (lo + hi);
                atPerigee = dt > 1e-9 ? rk4_step(prev, dt, mu) : prev;
                found = true;
                break;
            }
            result.ephemeris.states.push_back(next);
            prev = next;
            prev_rv = rv;
        }
        if (!found)
            throw std::runtime_error("simulate_deorbit: no perigee crossing detected");
    }
    result.coast_duration = atPerigee.t;

    // Burn 2: circularize. The post-burn state replaces the perigee sample.
    StateVector onFinal = apply_impulse(atPerigee, plan.v_orbit2 - plan.v_t2);
    result.burns[1] = {atPerigee.t, onFinal.velocity - atPerigee.velocity};
    while (!result.ephemeris.states.empty() && result.ephemeris.states.back().t >= onFinal.t)
        result.ephemeris.states.pop_back();
    result.ephemeris.states.push_back(onFinal);

    result.final_radius = osculating_semi_major_axis(onFinal, mu);
    result.final_eccentricity = eccentricity_vector(onFinal, mu).norm();

    const double verification = 2.0 * M_PI * std::sqrt(r2 * r2 * r2 / mu);
    Ephemeris finalOrbit = propagate(onFinal, verification, step, body);
    if (finalOrbit.reentered)
        throw ReentryError("simulate_deorbit: re-entry on final orbit", std::move(finalOrbit));
    result.ephemeris.states.insert(result.ephemeris.states.end(), finalOrbit.states.begin() + 1,
                                   finalOrbit.states.end());
    return result;
}

namespace detail {

/// Wrap an angle into (-pi, pi].
inline double wrap_longitude(double x) {
    double y = std::fmod(x + M_PI, 2.0 * M_PI);
    if (y <= 0.0)
        y += 2.0 * M_PI;
    return y - M_PI;
}

} // namespace detail

/// Spherical-Earth ground track: latitude from z/|r|, longitude from inertial
/// longitude minus the accumulated rotation, altitude above the mean sphere.
inline std::vector<GeodeticPoint> ground_track(const Ephemeris& eph, double earth_rotation_rate,
                                               double initial_gst, const Body& body) {
    if (eph.states.empty())
        throw std::domain_error("ground_track: empty ephemeris");
    std::vector<GeodeticPoint> track;
    track.reserve(eph.states.size());
    for (const StateVector& s : eph.states) {
        const double r = s.position.norm();
        GeodeticPoint pt;
        pt.t = s.t;
        pt.lat = std::asin(std::clamp(s.position.z / r, -1.0, 1.0));
        pt.lon = detail::wrap_longitude(std::atan2(s.position.y, s.position.x) - initial_gst -
                                        earth_rotation_rate * s.t);
        pt.alt = r - body.radius;
        track.push_back(pt);
    }
    return track;
}

/// Cubic Hermite interpolation of the trajectory between stored samples
/// (positions and velocities define the segment polynomial).
inline StateVector interpolate_state(const Ephemeris& eph, double t) {
    const auto& states = eph.states;
    if (states.empty())
        throw std::domain_error("interpolate_state: empty ephemeris");
    if (t <= states.front().t)
        return states.front();
    if (t >= states.back().t)
        return states.back();

    auto it = std::lower_bound(states.begin(), states.end(), t,
                               [](const StateVector& s, double value) { return s.t < value; });
    const StateVector& s1 = *it;
    const StateVector& s0 = *(it - 1);
    const double h = s1.t - s0.t;
    const double u = (t - s0.t) / h;

    const double u2 = u * u;
    const double u3 = u2 * u;
    const double h00 = 2 * u3 - 3 * u2 + 1;
    const double h10 = u3 - 2 * u2 + u;
    const double h01 = -2 * u3 + 3 * u2;
    const double h11 = u3 - u2;
    // Derivatives of the basis functions with respect to u.
    const double d00 = 6 * u2 - 6 * u;
    const double d10 = 3 * u2 - 4 * u + 1;
    const double d01 = -6 * u2 + 6 * u;
    const double d11 = 3 * u2 - 2 * u;

    StateVector out;
    out.t = t;
    out.position = s0.position * h00 + s0.velocity * (h * h10) + s1.position * h01 +
                   s1.velocity * (h * h11);
    out.velocity = (s0.position * d00 + s0.velocity * (h * d10) + s1.position * d01 +
                    s1.velocity * (h * d11)) /
                   h;
    return out;
}

/// Ephemeris CSV.
inline void write_ephemeris_csv(std::ostream& os, const Ephemeris& eph) {
    os << "t_s,x_m,y_m,z_m,vx_mps,vy_mps,vz_mps\n";
    char line[224];
    for (const StateVector& s : eph.states) {
        std::snprintf(line, sizeof line, "%.6f,%.6f,%.6f,%.6f,%.9f,%.9f,%.9f\n", s.t,
                      s.position.x, s.position.y, s.position.z, s.velocity.x, s.velocity.y,
                      s.velocity.z);
        os << line;
    }
}

/// Ground-track CSV (degrees for the angles).
inline void write_ground_track_csv(std::ostream& os, const std::vector<GeodeticPoint>& track) {
    os << "t_s,lat_deg,lon_deg,alt_m\n";
    char line[128];
    for (const GeodeticPoint& pt : track) {
        std::snprintf(line, sizeof line, "%.6f,%.9f,%.9f,%.3f\n", pt.t, pt.lat * 180.0 / M_PI,
                      pt.lon * 180.0 / M_PI, pt.alt);
        os << line;
    }
}

} // namespace deorbit

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "deorbit/propagate.hpp"
#include "deorbit/vec3.hpp"

namespace deorbit {

struct TleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TleFormatError : TleError {
    using TleError::TleError;
};
struct TleChecksumError : TleError {
    using TleError::TleError;
};
struct TleConsistencyError : TleError {
    using TleError::TleError;
};
struct TleRangeError : TleError {
    using TleError::TleError;
};

/// Parsed two-line element set. Angles are degrees, mean motion rev/day,
/// matching the printed record; conversions happen in tle_to_state.
struct TleRecord {
    std::string name; // optional line-0 label
    int catalog_number = 0;
    char classification = 'U';
    std::string intl_designator; // trailing spaces trimmed
    int epoch_year = 0;          // two-digit year as printed
    double epoch_day = 0.0;      // fractional day of year
    double mean_motion_dot = 0.0;  // rev/day^2, line-1 col 34-43 as printed
    double mean_motion_ddot = 0.0; // rev/day^3, implied-decimal field
    double bstar = 0.0;            // 1/earth radii
    int ephemeris_type = 0;
    int element_set_number = 0;
    double inclination = 0.0;  // deg
    double raan = 0.0;         // deg
    double eccentricity = 0.0;
    double arg_perigee = 0.0;  // deg
    double mean_anomaly = 0.0; // deg
    double mean_motion = 0.0;  // rev/day
    int rev_number = 0;
    int checksum1 = 0; // as parsed / as serialized
    int checksum2 = 0;
};

struct ConjunctionEvent {
    double t_closest;     // s, ephemeris time scale
    double miss_distance; // m
    int object_id;        // catalog number
    double relative_speed; // m/s at closest approach
};

/// Modulo-10 checksum over a 68-character line payload: digits count as their
/// value, each '-' counts 1, everything else 0.
inline int checksum(std::string_view payload) {
    if (payload.size() != 68)
        throw TleFormatError("checksum: payload must be 68 characters");
    int sum = 0;
    for (char c : payload) {
        if (c >= '0' && c <= '9')
            sum += c - '0';
        else if (c == '-')
            sum += 1;
    }
    return sum % 10;
}

namespace tle_detail {

/// 1-indexed inclusive column slice.
inline std::string_view columns(std::string_view line, int from, int to) {
    return line.substr(static_cast<size_t>(from - 1), static_cast<size_t>(to - from + 1));
}

inline std::string trimmed(std::string_view field) {
    const auto begin = field.find_first_not_of(' ');
    if (begin == std::string_view::npos)
        return {};
    const auto end = field.find_last_not_of(' ');
    return std::string(field.substr(begin, end - begin + 1));
}

inline int parse_int(std::string_view field, const char* what) {
    const std::string text = trimmed(field);
    if (text.empty())
        return 0;
    char* end = nullptr;
    const long value = std::strtol(text.c_str(), &end, 10);
    if (end != text.c_str() + text.size())
        throw TleFormatError(std::string("tle: malformed integer field: ") + what);
    return static_cast<int>(value);
}

inline double parse_fixed(std::string_view field, const char* what) {
    const std::string text = trimmed(field);
    if (text.empty())
        return 0.0;
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size())
        throw TleFormatError(std::string("tle: malformed numeric field: ") + what);
    return value;
}

/// Implied-decimal exponent field, e.g. " 34469-4" meaning 0.34469e-4.
inline double parse_implied_exp(std::string_view field, const char* what) {
    if (field.size() != 8)
        throw TleFormatError(std::string("tle: implied-decimal field must be 8 chars: ") + what);
    if (trimmed(field).empty())
        return 0.0;
    const double sign = field[0] == '-' ? -1.0 : 1.0;
    if (field[0] != ' ' && field[0] != '+' && field[0] != '-')
        throw TleFormatError(std::string("tle: bad mantissa sign: ") + what);
    long digits = 0;
    for (int i = 1; i <= 5; ++i) {
        const char c = field[static_cast<size_t>(i)];
        if (c < '0' || c > '9')
            throw TleFormatError(std::string("tle: bad mantissa digit: ") + what);
        digits = digits * 10 + (c - '0');
    }
    const char exp_sign = field[6];
    if (exp_sign != '+' && exp_sign != '-' && exp_sign != ' ')
        throw TleFormatError(std::string("tle: bad exponent sign: ") + what);
    const char exp_char = field[7];
    if (exp_char < '0' || exp_char > '9')
        throw TleFormatError(std::string("tle: bad exponent digit: ") + what);
    const int exponent = (exp_sign == '-' ? -1 : 1) * (exp_char - '0');
    return sign * (static_cast<double>(digits) / 1e5) * std::pow(10.0, exponent);
}

/// 7-digit field with an implied leading decimal point ("0006703" -> 0.0006703).
inline double parse_implied_point(std::string_view field, const char* what) {
    long digits = 0;
    for (char c : field) {
        if (c < '0' || c > '9')
            throw TleFormatError(std::string("tle: bad implied-point digit: ") + what);
        digits = digits * 10 + (c - '0');
    }
    return static_cast<double>(digits) / 1e7;
}

inline void check_line(std::string_view line, char number, int which) {
    if (line.size() != 69)
        throw TleFormatError("tle: line " + std::to_string(which) + " must be 69 characters");
    if (line[0] != number)
        throw TleFormatError("tle: line " + std::to_string(which) + " has wrong line number");
    const char check_char = line[68];
    if (check_char < '0' || check_char > '9')
        throw TleChecksumError("tle: line " + std::to_string(which) +
                               " checksum column is not a digit");
    if (check_char - '0' != checksum(line.substr(0, 68)))
        throw TleChecksumError("tle: checksum mismatch on line " + std::to_string(which));
}

} // namespace tle_detail

/// Parse a two-line element set (plus optional name) with checksum validation.
inline TleRecord parse_tle(std::string_view line1, std::string_view line2,
                           std::string name = {}) {
    using namespace tle_detail;
    check_line(line1, '1', 1);
    check_line(line2, '2', 2);

    TleRecord rec;
    rec.name = std::move(name);
    rec.catalog_number = parse_int(columns(line1, 3, 7), "catalog number");
    if (parse_int(columns(line2, 3, 7), "catalog number") != rec.catalog_number)
        throw TleConsistencyError("tle: catalog numbers differ between lines");
    rec.classification = line1[7];
    rec.intl_designator = trimmed(columns(line1, 10, 17));
    rec.epoch_year = parse_int(columns(line1, 19, 20), "epoch year");
    rec.epoch_day = parse_fixed(columns(line1, 21, 32), "epoch day");
    rec.mean_motion_dot = parse_fixed(columns(line1, 34, 43), "mean motion dot");
    rec.mean_motion_ddot = parse_implied_exp(columns(line1, 45, 52), "mean motion ddot");
    rec.bstar = parse_implied_exp(columns(line1, 54, 61), "bstar");
    rec.ephemeris_type = parse_int(columns(line1, 63, 63), "ephemeris type");
    rec.element_set_number = parse_int(columns(line1, 65, 68), "element set number");
    rec.checksum1 = line1[68] - '0';

    rec.inclination = parse_fixed(columns(line2, 9, 16), "inclination");
    rec.raan = parse_fixed(columns(line2, 18, 25), "raan");
    rec.eccentricity = parse_implied_point(columns(line2, 27, 33), "eccentricity");
    rec.arg_perigee = parse_fixed(columns(line2, 35, 42), "argument of perigee");
    rec.mean_anomaly = parse_fixed(columns(line2, 44, 51), "mean anomaly");
    rec.mean_motion = parse_fixed(columns(line2, 53, 63), "mean motion");
    rec.rev_number = parse_int(columns(line2, 64, 68), "revolution number");
    rec.checksum2 = line2[68] - '0';

    if (rec.eccentricity < 0.0 || rec.eccentricity >= 1.0)
        throw TleRangeError("tle: eccentricity out of [0,1)");
    if (rec.inclination < 0.0 || rec.inclination > 180.0)
        throw TleRangeError("tle: inclination out of [0,180]");
    return rec;
}

namespace tle_detail {

inline void put(std::string& line, int from, std::string_view text) {
    std::copy(text.begin(), text.end(), line.begin() + (from - 1));
}

inline std::string format_fixed(double value, int width, int decimals, const char* what) {
    char buf[32];
    const int written = std::snprintf(buf, sizeof buf, "%*.*f", width, decimals, value);
    if (written != width)
        throw TleRangeError(std::string("tle: field out of printable range: ") + what);
    return buf;
}

/// Canonical implied-decimal encoding with a normalized (nonzero leading
/// digit) mantissa; zero prints as " 00000-0".
inline std::string format_implied_exp(double value, const char* what) {
    if (value == 0.0)
        return " 00000-0";
    const double magnitude = std::fabs(value);
    int exponent = static_cast<int>(std::floor(std::log10(magnitude))) + 1;
    long digits = std::lround(magnitude * std::pow(10.0, 5 - exponent));
    if (digits >= 100000) {
        digits /= 10;
        exponent += 1;
    }
    if (exponent < -9 || exponent > 9 || digits > 99999)
        throw TleRangeError(std::string("tle: field out of printable range: ") + what);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%c%05ld%c%d", value < 0.0 ? '-' : ' ', digits,
                  exponent < 0 ? '-' : '+', std::abs(exponent));
    return buf;
}

inline void require(bool ok, const char* what) {
    if (!ok)
        throw TleRangeError(std::string("tle: field out of printable range: ") + what);
}

} // namespace tle_detail

/// Serialize to the canonical fixed-column two-line layout, recomputing the
/// checksums. parse_tle(serialize_tle(rec)) reproduces rec field for field.
inline std::pair<std::string, std::string> serialize_tle(const TleRecord& rec) {
    using namespace tle_detail;
    require(rec.catalog_number >= 0 && rec.catalog_number <= 99999, "catalog number");
    require(rec.intl_designator.size() <= 8, "international designator");
    require(rec.epoch_year >= 0 && rec.epoch_year <= 99, "epoch year");
    require(rec.epoch_day >= 0.0 && rec.epoch_day < 1000.0, "epoch day");
    require(std::fabs(rec.mean_motion_dot) < 1.0, "mean motion dot");
    require(rec.ephemeris_type >= 0 && rec.ephemeris_type <= 9, "ephemeris type");
    require(rec.element_set_number >= 0 && rec.element_set_number <= 9999,
            "element set number");
    require(rec.inclination >= 0.0 && rec.inclination <= 180.0, "inclination");
    require(rec.raan >= 0.0 && rec.raan < 360.0, "raan");
    require(rec.eccentricity >= 0.0 && rec.eccentricity < 1.0, "eccentricity");
    require(rec.arg_perigee >= 0.0 && rec.arg_perigee < 360.0, "argument of perigee");
    require(rec.mean_anomaly >= 0.0 && rec.mean_anomaly < 360.0, "mean anomaly");
    require(rec.mean_motion >= 0.0 && rec.mean_motion < 100.0, "mean motion");
    require(rec.rev_number >= 0 && rec.rev_number <= 99999, "revolution number");

    char buf[32];
    std::string line1(69, ' ');
    line1[0] = '1';
    std::snprintf(buf, sizeof buf, "%05d", rec.catalog_number);
    put(line1, 3, buf);
    line1[7] = rec.classification;
    put(line1, 10, rec.intl_designator);
    std::snprintf(buf, sizeof buf, "%02d", rec.epoch_year);
    put(line1, 19, buf);
    std::snprintf(buf, sizeof buf, "%012.8f", rec.epoch_day);
    put(line1, 21, buf);
    const long ndot_digits = std::lround(std::fabs(rec.mean_motion_dot) * 1e8);
    require(ndot_digits <= 99999999, "mean motion dot");
    std::snprintf(buf, sizeof buf, "%c.%08ld", rec.mean_motion_dot < 0.0 ? '-' : ' ',
                  ndot_digits);
    put(line1, 34, buf);
    put(line1, 45, format_implied_exp(rec.mean_motion_ddot, "mean motion ddot"));
    put(line1, 54, format_implied_exp(rec.bstar, "bstar"));
    std::snprintf(buf, sizeof buf, "%1d", rec.ephemeris_type);
    put(line1, 63, buf);
    std::snprintf(buf, sizeof buf, "%4d", rec.element_set_number);
    put(line1, 65, buf);
    line1[68] = static_cast<char>('0' + checksum(std::string_view(line1).substr(0, 68)));

    std::string line2(69, ' ');
    line2[0] = '2';
    std::snprintf(buf, sizeof buf, "%05d", rec.catalog_number);
    put(line2, 3, buf);
    put(line2, 9, format_fixed(rec.inclination, 8, 4, "inclination"));
    put(line2, 18, format_fixed(rec.raan, 8, 4, "raan"));
    const long ecc_digits = std::lround(rec.eccentricity * 1e7);
    require(ecc_digits <= 9999999, "eccentricity");
    std::snprintf(buf, sizeof buf, "%07ld", ecc_digits);
    put(line2, 27, buf);
    put(line2, 35, format_fixed(rec.arg_perigee, 8, 4, "argument of perigee"));
    put(line2, 44, format_fixed(rec.mean_anomaly, 8, 4, "mean anomaly"));
    put(line2, 53, format_fixed(rec.mean_motion, 11, 8, "mean motion"));
    std::snprintf(buf, sizeof buf, "%5d", rec.rev_number);
    put(line2, 64, buf);
    line2[68] = static_cast<char>('0' + checksum(std::string_view(line2).substr(0, 68)));

    return {line1, line2};
}

/// Newton iteration for the eccentric anomaly, E - e sin E = M.
inline double solve_kepler(double mean_anomaly, double eccentricity) {
    double e_anom = mean_anomaly;
    for (int i = 0; i < 50; ++i) {
        const double residual = e_anom - eccentricity * std::sin(e_anom) - mean_anomaly;
        if (std::fabs(residual) < 1e-12)
            return e_anom;
        e_anom -= residual / (1.0 - eccentricity * std::cos(e_anom));
    }
    throw std::runtime_error("solve_kepler: no convergence in 50 iterations");
}

/// Keplerian (two-body) state of the TLE mean elements t_offset seconds past
/// the record epoch. Deliberately not SGP4; coarse screening accuracy only.
inline StateVector tle_to_state(const TleRecord& rec, double t_offset, double mu) {
    const double n = rec.mean_motion * 2.0 * M_PI / 86400.0; // rad/s
    if (n <= 0.0)
        throw std::domain_error("tle_to_state: mean motion must be positive");
    const double a = std::cbrt(mu / (n * n));
    const double e = rec.eccentricity;

    double mean_anom = rec.mean_anomaly * M_PI / 180.0 + n * t_offset;
    mean_anom = std::fmod(mean_anom, 2.0 * M_PI);
    if (mean_anom < 0.0)
        mean_anom += 2.0 * M_PI;
    const double e_anom = solve_kepler(mean_anom, e);

    const double cosE = std::cos(e_anom);
    const double sinE = std::sin(e_anom);
    const double r = a * (1.0 - e * cosE);
    const Vec3 pos_pf{a * (cosE - e), a * std::sqrt(1.0 - e * e) * sinE, 0.0};
    const double speed_factor = n * a * a / r;
    const Vec3 vel_pf{-speed_factor * sinE, speed_factor * std::sqrt(1.0 - e * e) * cosE, 0.0};

    const double raan = rec.raan * M_PI / 180.0;
    const double incl = rec.inclination * M_PI / 180.0;
    const double argp = rec.arg_perigee * M_PI / 180.0;

    auto rotate = [&](const Vec3& v) {
        // Rz(raan) Rx(incl) Rz(argp) applied to a perifocal vector.
        const double x1 = v.x * std::cos(argp) - v.y * std::sin(argp);
        const double y1 = v.x * std::sin(argp) + v.y * std::cos(argp);
        const double z1 = v.z;
        const double y2 = y1 * std::cos(incl) - z1 * std::sin(incl);
        const double z2 = y1 * std::sin(incl) + z1 * std::cos(incl);
        return Vec3{x1 * std::cos(raan) - y2 * std::sin(raan),
                    x1 * std::sin(raan) + y2 * std::cos(raan), z2};
    };

    return {t_offset, rotate(pos_pf), rotate(vel_pf)};
}

/// Catalog of 2- or 3-line groups read from plain text. Entries that fail to
/// parse are skipped and counted.
struct CatalogLoad {
    std::vector<TleRecord> records;
    int skipped = 0;
};

inline CatalogLoad load_catalog(std::istream& in) {
    CatalogLoad out;
    std::vector<std::string> lines;
    std::string raw;
    while (std::getline(in, raw)) {
        while (!raw.empty() && (raw.back() == '\r' || raw.back() == '\n'))
            raw.pop_back();
        if (!raw.empty())
            lines.push_back(raw);
    }
    size_t i = 0;
    while (i < lines.size()) {
        std::string name;
        if (lines[i][0] != '1') {
            name = tle_detail::trimmed(lines[i]);
            ++i;
        }
        if (i + 1 >= lines.size()) {
            if (i < lines.size())
                ++out.skipped;
            break;
        }
        try {
            out.records.push_back(parse_tle(lines[i], lines[i + 1], std::move(name)));
        } catch (const TleError&) {
            ++out.skipped;
        }
        i += 2;
    }
    return out;
}

namespace tle_detail {

template <typename Fn>
inline double golden_section_min(Fn&& f, double lo, double hi, double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace tle_detail

/// Coarse conjunction screen of an ephemeris against a TLE catalog: sample the
/// separation at coarse_step, refine every local minimum below 3x the
/// threshold by golden-section search (1e-3 s), and report minima under the
/// threshold sorted by miss distance. TLE epochs are taken to lead the
/// ephemeris t=0 by epoch_offset seconds.
inline std::vector<ConjunctionEvent> screen_conjunctions(const Ephemeris& eph,
                                                         const std::vector<TleRecord>& catalog,
                                                         double threshold, double coarse_step,
                                                         double mu, double epoch_offset = 0.0) {
    if (threshold <= 0.0)
        throw std::domain_error("screen_conjunctions: threshold must be positive");
    if (coarse_step <= 0.0)
        throw std::domain_error("screen_conjunctions: coarse step must be positive");
    if (eph.states.empty())
        throw std::domain_error("screen_conjunctions: empty ephemeris");

    const double t_begin = eph.states.front().t;
    const double t_end = eph.states.back().t;

    std::vector<ConjunctionEvent> events;
    for (const TleRecord& rec : catalog) {
        auto separation = [&](double t) {
            return (interpolate_state(eph, t).position -
                    tle_to_state(rec, t + epoch_offset, mu).position)
                .norm();
        };

        std::vector<double> ts;
        for (double t = t_begin; t < t_end; t += coarse_step)
            ts.push_back(t);
        ts.push_back(t_end);

        std::vector<double> dist(ts.size());
        for (size_t i = 0; i < ts.size(); ++i)
            dist[i] = separation(ts[i]);

        for (size_t i = 0; i < ts.size(); ++i) {
            const bool left_ok = i == 0 ? true : dist[i] < dist[i - 1];
            const bool right_ok = i + 1 == ts.size() ? true : dist[i] <= dist[i + 1];
            if (!(left_ok && right_ok) || dist[i] >= 3.0 * threshold)
                continue;

            const double lo = i == 0 ? ts.front() : ts[i - 1];
            const double hi = i + 1 == ts.size() ? ts.back() : ts[i + 1];
            double t_min = tle_detail::golden_section_min(separation, lo, hi, 1e-3);
            double d_min = separation(t_min);
            if (dist[i] < d_min) { // never report worse than the coarse sample
                t_min = ts[i];
                d_min = dist[i];
            }
            if (d_min >= threshold)
                continue;

            const StateVector ours = interpolate_state(eph, t_min);
            const StateVector theirs = tle_to_state(rec, t_min + epoch_offset, mu);
            events.push_back({t_min, d_min, rec.catalog_number,
                              (ours.velocity - theirs.velocity).norm()});
        }
    }

    std::sort(events.begin(), events.end(), [](const ConjunctionEvent& a, const ConjunctionEvent& b) {
        if (a.miss_distance != b.miss_distance)
            return a.miss_distance < b.miss_distance;
        if (a.object_id != b.object_id)
            return a.object_id < b.object_id;
        return a.t_closest < b.t_closest;
    });
    return events;
}

} // namespace deorbit

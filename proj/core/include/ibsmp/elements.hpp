#pragma once

#include "ibsmp/constants.hpp"

#include <utility>

namespace ibsmp {

/// Classical Keplerian elements. Angles in radians. Inclination may be
/// signed on input; conversions accept it as-is.
struct KeplerianElements {
    double a = 0.0;      // semi-major axis [km]
    double e = 0.0;      // eccentricity
    double i = 0.0;      // inclination [rad]
    double raan = 0.0;   // right ascension of ascending node [rad]
    double argp = 0.0;   // argument of perigee [rad]
    double theta = 0.0;  // true anomaly [rad]
};

/// Non-singular equinoctial state. The true longitude is kept unwrapped so
/// it grows monotonically across revolutions.
struct EquinoctialState {
    double a = 0.0;          // [km]
    double p1 = 0.0;         // e*sin(raan+argp)
    double p2 = 0.0;         // e*cos(raan+argp)
    double q1 = 0.0;         // tan(i/2)*sin(raan)
    double q2 = 0.0;         // tan(i/2)*cos(raan)
    double longitude = 0.0;  // true longitude L [rad], unwrapped
    double epoch = 0.0;      // time since scenario start [s]

    double eccentricity() const;
    double semilatus() const;  // p = a*(1 - e^2) [km]
};

/// Converts Keplerian elements to an equinoctial state. Rejects e >= 1.
EquinoctialState kep_to_equinoctial(const KeplerianElements& kep, double epoch = 0.0);

/// Inverse conversion. i comes back non-negative; raan = 0 when i = 0.
KeplerianElements equinoctial_to_kep(const EquinoctialState& state);

/// Perigee and apogee radii (r_p, r_a) [km].
std::pair<double, double> apsis_radii(const EquinoctialState& state);

/// Geometric angle between two orbit planes given (i, raan) of each,
/// returned in [0, pi]. Signed inclinations are passed through unchanged.
double relative_inclination(double i_a, double raan_a, double i_b, double raan_b);

} // namespace ibsmp

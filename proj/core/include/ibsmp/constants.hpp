#pragma once

namespace ibsmp {

/// Physical constants and mission-wide thresholds. All values in km, s, kg.
struct Constants {
    double mu = 398600.4418;        // Earth gravitational parameter [km^3/s^2]
    double earth_radius = 6378.16;  // [km]
    double rp_threshold = 6678.16;  // de-orbit perigee radius (300 km altitude) [km]
    double g0 = 9.80665e-3;         // standard gravity [km/s^2]
};

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kSecondsPerDay = 86400.0;
constexpr double kDegToRad = kPi / 180.0;
constexpr double kRadToDeg = 180.0 / kPi;

} // namespace ibsmp

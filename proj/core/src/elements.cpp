#include "ibsmp/elements.hpp"

#include <cmath>
#include <stdexcept>

namespace ibsmp {

double EquinoctialState::eccentricity() const {
    return std::hypot(p1, p2);
}

double EquinoctialState::semilatus() const {
    return a * (1.0 - p1 * p1 - p2 * p2);
}

EquinoctialState kep_to_equinoctial(const KeplerianElements& kep, double epoch) {
    if (kep.e < 0.0 || kep.e >= 1.0)
        throw std::domain_error("kep_to_equinoctial: eccentricity must be in [0,1)");
    EquinoctialState s;
    s.a = kep.a;
    const double w = kep.raan + kep.argp;
    s.p1 = kep.e * std::sin(w);
    s.p2 = kep.e * std::cos(w);
    const double th = std::tan(kep.i / 2.0);
    s.q1 = th * std::sin(kep.raan);
    s.q2 = th * std::cos(kep.raan);
    s.longitude = w + kep.theta;
    s.epoch = epoch;
    return s;
}

KeplerianElements equinoctial_to_kep(const EquinoctialState& state) {
    KeplerianElements kep;
    kep.a = state.a;
    kep.e = std::hypot(state.p1, state.p2);
    const double qn = std::hypot(state.q1, state.q2);
    kep.i = 2.0 * std::atan(qn);
    kep.raan = (qn > 0.0) ? std::atan2(state.q1, state.q2) : 0.0;
    const double w = (kep.e > 0.0) ? std::atan2(state.p1, state.p2) : kep.raan;
    kep.argp = w - kep.raan;
    kep.theta = state.longitude - w;
    return kep;
}

std::pair<double, double> apsis_radii(const EquinoctialState& state) {
    const double e = std::hypot(state.p1, state.p2);
    return {state.a * (1.0 - e), state.a * (1.0 + e)};
}

double relative_inclination(double i_a, double raan_a, double i_b, double raan_b) {
    const double c = -std::cos(i_a) * std::cos(kPi - i_b) +
                     std::sin(i_a) * std::sin(kPi - i_b) * std::cos(raan_b - raan_a);
    return std::acos(std::fmin(1.0, std::fmax(-1.0, c)));
}

} // namespace ibsmp

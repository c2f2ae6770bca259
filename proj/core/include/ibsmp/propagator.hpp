#pragma once

#include "ibsmp/constants.hpp"
#include "ibsmp/elements.hpp"
#include "ibsmp/integrals.hpp"

#include <utility>

namespace ibsmp {

/// Constant thrust-acceleration direction and magnitude in the
/// radial-transverse-normal frame:
///   a_r = eps*cos(alpha)*cos(beta), a_theta = eps*sin(alpha)*cos(beta),
///   a_h = eps*sin(beta).
struct ThrustSetting {
    double epsilon = 0.0;  // acceleration magnitude [km/s^2]
    double alpha = 0.0;    // azimuth [rad]
    double beta = 0.0;     // elevation [rad]
};

/// First-order variations of the slow elements over [L0, L0+dL], per unit
/// acceleration. Multiply by epsilon and add to the reference values.
struct FirstOrderTerms {
    double a1 = 0.0;
    double p11 = 0.0;
    double p21 = 0.0;
    double q11 = 0.0;
    double q21 = 0.0;
};

/// Evaluates the first-order element variations at L = state.longitude + dL.
FirstOrderTerms first_order_terms(const EquinoctialState& state, double dl,
                                  double alpha, double beta, const Constants& c);

/// Zero-order (two-body) time to traverse dL in longitude [s].
double coast_time(const EquinoctialState& state, double dl, const Constants& c);

/// First-order time coefficient t1 such that the arc time is
/// t00 + epsilon*t1. Evaluated by Gauss-Legendre quadrature of the exact
/// first-order integrand; exact to first order in epsilon for any alpha,
/// beta, including the out-of-plane contribution to dL/dt.
double first_order_time(const EquinoctialState& state, double dl,
                        double alpha, double beta, const Constants& c);

/// Propagates the state over dL under a constant thrust setting, updating
/// the slow elements by the first-order terms and the epoch by
/// t00 + epsilon*t1. Throws on eccentricity blow-up (P1^2+P2^2 >= 1).
EquinoctialState propagate_first_order(const EquinoctialState& state, double dl,
                                       const ThrustSetting& thrust, const Constants& c);

/// Coasts from the current longitude to L_apsis - dl_semi, then thrusts over
/// 2*dl_semi centred on L_apsis. Returns the post-arc state and the
/// thrusting time (coast time is reflected in the epoch).
std::pair<EquinoctialState, double> apsis_thrust_arc(const EquinoctialState& state,
                                                     double l_apsis, double dl_semi,
                                                     double alpha, double beta,
                                                     double epsilon, const Constants& c);

} // namespace ibsmp

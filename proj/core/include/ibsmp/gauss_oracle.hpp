#pragma once

#include "ibsmp/constants.hpp"
#include "ibsmp/elements.hpp"

#include <array>
#include <functional>
#include <vector>

namespace ibsmp {

/// Perturbing acceleration resolved in radial-transverse-normal axes,
/// as a function of time and the current osculating Keplerian elements.
using ControlProfile =
    std::function<std::array<double, 3>(double t, const KeplerianElements&)>;

/// Time-derivatives of the six Keplerian elements under a perturbing
/// acceleration (full Gauss variational equations). Singular at e = 0 and
/// sin(i) = 0; throws std::domain_error there.
std::array<double, 6> gauss_rhs(const KeplerianElements& kep,
                                const std::array<double, 3>& accel,
                                const Constants& c);

/// Equinoctial-form variational equations (regular at e = 0, i = 0):
/// derivatives of (a, P1, P2, Q1, Q2, L).
std::array<double, 6> gauss_rhs_equinoctial(const EquinoctialState& state,
                                            const std::array<double, 3>& accel,
                                            const Constants& c);

struct IntegrationOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
};

/// High-accuracy adaptive integration of the equinoctial variational
/// equations over t_span seconds. Returns the trajectory sampled at the
/// integrator's accepted steps (last sample lands exactly on t_span).
std::vector<EquinoctialState> integrate_numeric(const EquinoctialState& state0,
                                                const ControlProfile& profile,
                                                double t_span,
                                                const IntegrationOptions& opts,
                                                const Constants& c);

/// Integrates until the unwrapped longitude reaches l_target; used for
/// arc-by-arc comparisons against the analytic propagator.
EquinoctialState integrate_to_longitude(const EquinoctialState& state0,
                                        const ControlProfile& profile,
                                        double l_target,
                                        const IntegrationOptions& opts,
                                        const Constants& c);

} // namespace ibsmp

#pragma once

namespace ibsmp {

/// The seven definite integrals over [L0, Lf] that drive the first-order
/// propagation. With F(L) = 1 + P10*sin(L) + P20*cos(L):
///   i1n = integral of 1/F^n,  icn = cos(L)/F^n,  isn = sin(L)/F^n.
struct IntegralSet {
    double i11 = 0.0;
    double i12 = 0.0;
    double i13 = 0.0;
    double ic2 = 0.0;
    double ic3 = 0.0;
    double is2 = 0.0;
    double is3 = 0.0;
};

/// Closed-form evaluation of the integral set. Continuous in Lf across
/// any number of revolutions. The closed forms are singular at P20 = 0 in
/// their textbook arrangement; this evaluation rotates the longitude
/// reference so the eccentricity vector points along P2, which is regular
/// for any (P10, P20) with e < 1, and switches to a series expansion in e
/// below e = 1e-3 where the exact forms lose accuracy to cancellation.
///
/// Requires P10^2 + P20^2 < 1 and Lf >= L0.
IntegralSet kepler_integrals(double p10, double p20, double l0, double lf);

} // namespace ibsmp

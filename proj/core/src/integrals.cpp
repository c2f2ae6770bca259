#include "ibsmp/integrals.hpp"

#include "ibsmp/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace ibsmp {
namespace {

constexpr double kSeriesThreshold = 1e-3;

// Unwrapped antiderivative of 1/(1 + e*cos(u)) up to the 2/c factor:
// atan(k*tan(u/2)) written as u/2 plus a bounded correction, so it is
// continuous across the tan(u/2) poles at u = pi + 2*m*pi.
double half_angle_atan(double u, double k) {
    const double s = std::sin(u);
    const double c = std::cos(u);
    return 0.5 * u + std::atan((k - 1.0) * s / ((1.0 + k) + (1.0 - k) * c));
}

IntegralSet exact_set(double e, double lam, double l0, double lf) {
    const double u0 = l0 - lam;
    const double uf = lf - lam;
    const double c2 = 1.0 - e * e;
    const double c = std::sqrt(c2);
    const double k = c / (1.0 + e);

    const double g0 = 1.0 + e * std::cos(u0);
    const double gf = 1.0 + e * std::cos(uf);

    const double j1 = 2.0 / c * (half_angle_atan(uf, k) - half_angle_atan(u0, k));
    const double b1 = e * std::sin(uf) / gf - e * std::sin(u0) / g0;
    const double j2 = (j1 - b1) / c2;
    const double b2 = e * std::sin(uf) / (gf * gf) - e * std::sin(u0) / (g0 * g0);
    const double j3 = (3.0 * j2 - j1 - b2) / (2.0 * c2);

    const double cs2 = (j1 - j2) / e;
    const double cs3 = (j2 - j3) / e;
    const double ss2 = (1.0 / gf - 1.0 / g0) / e;
    const double ss3 = (1.0 / (gf * gf) - 1.0 / (g0 * g0)) / (2.0 * e);

    const double cl = std::cos(lam);
    const double sl = std::sin(lam);
    IntegralSet out;
    out.i11 = j1;
    out.i12 = j2;
    out.i13 = j3;
    out.ic2 = cl * cs2 - sl * ss2;
    out.ic3 = cl * cs3 - sl * ss3;
    out.is2 = sl * cs2 + cl * ss2;
    out.is3 = sl * cs3 + cl * ss3;
    return out;
}

// Primitives of cos^k(u) for k = 0..5.
double int_cos_pow(double u, int k) {
    const double s = std::sin(u);
    const double c = std::cos(u);
    switch (k) {
        case 0: return u;
        case 1: return s;
        case 2: return 0.5 * u + 0.5 * s * c;
        case 3: return s - s * s * s / 3.0;
        case 4: return 0.375 * u + 0.25 * c * c * c * s + 0.375 * c * s;
        default: return s - 2.0 * s * s * s / 3.0 + s * s * s * s * s / 5.0;
    }
}

// Series in e of the rotated-frame integrals, through e^4. At the
// switch-over eccentricity the truncation error is ~1e-13 per radian.
IntegralSet series_set(double e, double lam, double l0, double lf) {
    const double u0 = l0 - lam;
    const double uf = lf - lam;
    // 1/G^n = sum_k coef[n][k] e^k cos^k(u)
    static const double coef[4][5] = {
        {0, 0, 0, 0, 0},
        {1, -1, 1, -1, 1},
        {1, -2, 3, -4, 5},
        {1, -3, 6, -10, 15},
    };
    double ek[5] = {1.0, e, e * e, e * e * e, e * e * e * e};
    double j[4] = {0, 0, 0, 0};
    double cs[4] = {0, 0, 0, 0};
    double ss[4] = {0, 0, 0, 0};
    for (int n = 1; n <= 3; ++n) {
        for (int k = 0; k < 5; ++k) {
            const double w = coef[n][k] * ek[k];
            j[n] += w * (int_cos_pow(uf, k) - int_cos_pow(u0, k));
            if (n >= 2) {
                cs[n] += w * (int_cos_pow(uf, k + 1) - int_cos_pow(u0, k + 1));
                // primitive of sin(u)*cos^k(u) is -cos^{k+1}(u)/(k+1)
                const double pf = -std::pow(std::cos(uf), k + 1) / (k + 1);
                const double p0 = -std::pow(std::cos(u0), k + 1) / (k + 1);
                ss[n] += w * (pf - p0);
            }
        }
    }
    const double cl = std::cos(lam);
    const double sl = std::sin(lam);
    IntegralSet out;
    out.i11 = j[1];
    out.i12 = j[2];
    out.i13 = j[3];
    out.ic2 = cl * cs[2] - sl * ss[2];
    out.ic3 = cl * cs[3] - sl * ss[3];
    out.is2 = sl * cs[2] + cl * ss[2];
    out.is3 = sl * cs[3] + cl * ss[3];
    return out;
}

} // namespace

IntegralSet kepler_integrals(double p10, double p20, double l0, double lf) {
    const double e2 = p10 * p10 + p20 * p20;
    if (e2 >= 1.0)
        throw std::domain_error("kepler_integrals: requires P10^2 + P20^2 < 1");
    if (lf < l0)
        throw std::domain_error("kepler_integrals: requires Lf >= L0");
    const double e = std::sqrt(e2);
    const double lam = (e > 0.0) ? std::atan2(p10, p20) : 0.0;
    if (e < kSeriesThreshold)
        return series_set(e, lam, l0, lf);
    return exact_set(e, lam, l0, lf);
}

} // namespace ibsmp

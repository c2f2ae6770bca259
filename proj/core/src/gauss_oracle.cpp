#include "ibsmp/gauss_oracle.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <stdexcept>

namespace ibsmp {
namespace {

namespace ode = boost::numeric::odeint;
using Vec6 = std::array<double, 6>;

KeplerianElements kep_from(const EquinoctialState& s) {
    return equinoctial_to_kep(s);
}

} // namespace

std::array<double, 6> gauss_rhs(const KeplerianElements& kep,
                                const std::array<double, 3>& accel,
                                const Constants& c) {
    if (kep.e < 1e-8)
        throw std::domain_error("gauss_rhs: singular at e ~ 0; use equinoctial form");
    if (std::fabs(std::sin(kep.i)) < 1e-10)
        throw std::domain_error("gauss_rhs: singular at sin(i) ~ 0");
    const double p = kep.a * (1.0 - kep.e * kep.e);
    const double h = std::sqrt(c.mu * p);
    const double r = p / (1.0 + kep.e * std::cos(kep.theta));
    const double st = std::sin(kep.theta);
    const double ct = std::cos(kep.theta);
    const double ar = accel[0], at = accel[1], ah = accel[2];

    std::array<double, 6> d{};
    d[0] = 2.0 * kep.a * kep.a / h * (kep.e * st * ar + p / r * at);
    d[1] = (p * st * ar + ((p + r) * ct + r * kep.e) * at) / h;
    d[2] = r * ct / h * ah;
    d[3] = r * st / (h * std::sin(kep.i)) * ah;
    d[4] = (-p * ct * ar + (p + r) * st * at) / (h * kep.e) -
           r * st * std::cos(kep.i) / (h * std::sin(kep.i)) * ah;
    d[5] = h / (r * r) + (p * ct * ar - (p + r) * st * at) / (kep.e * h);
    return d;
}

std::array<double, 6> gauss_rhs_equinoctial(const EquinoctialState& s,
                                            const std::array<double, 3>& accel,
                                            const Constants& c) {
    const double sl = std::sin(s.longitude);
    const double cl = std::cos(s.longitude);
    const double w = 1.0 + s.p1 * sl + s.p2 * cl;
    const double p = s.semilatus();
    const double sp = std::sqrt(p / c.mu);
    const double h = std::sqrt(c.mu * p);
    const double s2 = 1.0 + s.q1 * s.q1 + s.q2 * s.q2;
    const double node = s.q2 * sl - s.q1 * cl;
    const double ar = accel[0], at = accel[1], ah = accel[2];

    std::array<double, 6> d{};
    d[0] = 2.0 * s.a * s.a / h * ((s.p2 * sl - s.p1 * cl) * ar + w * at);
    d[1] = sp * (-cl * ar + ((w + 1.0) * sl + s.p1) * at / w + node * s.p2 * ah / w);
    d[2] = sp * (sl * ar + ((w + 1.0) * cl + s.p2) * at / w - node * s.p1 * ah / w);
    d[3] = sp * s2 * ah * sl / (2.0 * w);
    d[4] = sp * s2 * ah * cl / (2.0 * w);
    d[5] = h * w * w / (p * p) + sp * node * ah / w;
    return d;
}

std::vector<EquinoctialState> integrate_numeric(const EquinoctialState& state0,
                                                const ControlProfile& profile,
                                                double t_span,
                                                const IntegrationOptions& opts,
                                                const Constants& c) {
    if (opts.rel_tol <= 0.0 || opts.rel_tol > 1e-3 || opts.abs_tol <= 0.0 ||
        opts.abs_tol > 1e-3)
        throw std::domain_error("integrate_numeric: tolerances must be in (0, 1e-3]");

    auto rhs = [&](const Vec6& y, Vec6& dydt, double t) {
        EquinoctialState s;
        s.a = y[0]; s.p1 = y[1]; s.p2 = y[2];
        s.q1 = y[3]; s.q2 = y[4]; s.longitude = y[5];
        s.epoch = state0.epoch + t;
        dydt = gauss_rhs_equinoctial(s, profile(s.epoch, kep_from(s)), c);
    };

    std::vector<EquinoctialState> traj;
    auto observer = [&](const Vec6& y, double t) {
        EquinoctialState s;
        s.a = y[0]; s.p1 = y[1]; s.p2 = y[2];
        s.q1 = y[3]; s.q2 = y[4]; s.longitude = y[5];
        s.epoch = state0.epoch + t;
        traj.push_back(s);
    };

    Vec6 y0 = {state0.a, state0.p1, state0.p2,
               state0.q1, state0.q2, state0.longitude};
    auto stepper = ode::make_controlled(opts.abs_tol, opts.rel_tol,
                                        ode::runge_kutta_fehlberg78<Vec6>());
    const double n0 = std::sqrt(c.mu / (state0.a * state0.a * state0.a));
    ode::integrate_adaptive(stepper, rhs, y0, 0.0, t_span, 0.01 / n0, observer);
    return traj;
}

EquinoctialState integrate_to_longitude(const EquinoctialState& state0,
                                        const ControlProfile& profile,
                                        double l_target,
                                        const IntegrationOptions& opts,
                                        const Constants& c) {
    if (l_target < state0.longitude)
        throw std::domain_error("integrate_to_longitude: target behind state");

    // integrate in L with time carried as a state variable
    auto rhs = [&](const Vec6& y, Vec6& dydl, double l) {
        EquinoctialState s;
        s.a = y[0]; s.p1 = y[1]; s.p2 = y[2];
        s.q1 = y[3]; s.q2 = y[4]; s.longitude = l;
        s.epoch = y[5];
        const auto d = gauss_rhs_equinoctial(s, profile(s.epoch, kep_from(s)), c);
        const double dldt = d[5];
        dydl = {d[0] / dldt, d[1] / dldt, d[2] / dldt,
                d[3] / dldt, d[4] / dldt, 1.0 / dldt};
    };

    Vec6 y0 = {state0.a, state0.p1, state0.p2,
               state0.q1, state0.q2, state0.epoch};
    auto stepper = ode::make_controlled(opts.abs_tol, opts.rel_tol,
                                        ode::runge_kutta_fehlberg78<Vec6>());
    ode::integrate_adaptive(stepper, rhs, y0, state0.longitude, l_target, 0.01);

    EquinoctialState out;
    out.a = y0[0]; out.p1 = y0[1]; out.p2 = y0[2];
    out.q1 = y0[3]; out.q2 = y0[4]; out.longitude = l_target;
    out.epoch = y0[5];
    return out;
}

} // namespace ibsmp

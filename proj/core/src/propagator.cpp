#include "ibsmp/propagator.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace ibsmp {
namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 8> kGlNodes = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr std::array<double, 8> kGlWeights = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

FirstOrderTerms terms_from_integrals(const IntegralSet& is, double a0, double p10,
                                     double p20, double q10, double q20,
                                     double alpha, double beta, double mu) {
    const double p0 = a0 * (1.0 - p10 * p10 - p20 * p20);
    const double h0 = std::sqrt(mu * p0);
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    const double cb = std::cos(beta), sb = std::sin(beta);
    const double pre = h0 * h0 * h0 * h0 / (mu * mu * mu);  // = p0^2/mu

    FirstOrderTerms t;
    const double ha = h0 * a0 / mu;
    t.a1 = 2.0 * ha * ha * cb * (ca * (p20 * is.is2 - p10 * is.ic2) + sa * is.i11);
    t.p11 = pre * (cb * (-ca * is.ic2 + sa * (p10 * is.i13 + is.is2 + is.is3)) +
                   sb * p20 * (-q10 * is.ic3 + q20 * is.is3));
    t.p21 = pre * (cb * (ca * is.is2 + sa * (p20 * is.i13 + is.ic2 + is.ic3)) +
                   sb * p10 * (q10 * is.ic3 - q20 * is.is3));
    const double qfac = 0.5 * pre * sb * (1.0 + q10 * q10 + q20 * q20);
    t.q11 = qfac * is.is3;
    t.q21 = qfac * is.ic3;
    return t;
}

} // namespace

FirstOrderTerms first_order_terms(const EquinoctialState& s, double dl,
                                  double alpha, double beta, const Constants& c) {
    const IntegralSet is =
        kepler_integrals(s.p1, s.p2, s.longitude, s.longitude + dl);
    return terms_from_integrals(is, s.a, s.p1, s.p2, s.q1, s.q2, alpha, beta, c.mu);
}

double coast_time(const EquinoctialState& s, double dl, const Constants& c) {
    if (dl < 0.0)
        throw std::domain_error("coast_time: dL must be non-negative");
    if (dl == 0.0) return 0.0;
    const double p0 = s.semilatus();
    const double h0 = std::sqrt(c.mu * p0);
    const IntegralSet is =
        kepler_integrals(s.p1, s.p2, s.longitude, s.longitude + dl);
    return h0 * h0 * h0 / (c.mu * c.mu) * is.i12;
}

double first_order_time(const EquinoctialState& s, double dl,
                        double alpha, double beta, const Constants& c) {
    if (dl <= 0.0) return 0.0;
    const double one_m_e2 = 1.0 - s.p1 * s.p1 - s.p2 * s.p2;
    const double p0 = s.a * one_m_e2;
    const double sqrt_mu = std::sqrt(c.mu);
    const double sb = std::sin(beta);

    // integrand of dt1/dL: variation of dt/dL through the perturbed
    // elements plus the direct out-of-plane term in dL/dt
    auto integrand = [&](double lq) {
        const IntegralSet is = kepler_integrals(s.p1, s.p2, s.longitude, lq);
        const FirstOrderTerms ft =
            terms_from_integrals(is, s.a, s.p1, s.p2, s.q1, s.q2, alpha, beta, c.mu);
        const double f0 = 1.0 + s.p1 * std::sin(lq) + s.p2 * std::cos(lq);
        const double t0 = p0 * std::sqrt(p0) / (sqrt_mu * f0 * f0);
        const double pp1 =
            ft.a1 * one_m_e2 - 2.0 * s.a * (s.p1 * ft.p11 + s.p2 * ft.p21);
        const double ff1 = ft.p11 * std::sin(lq) + ft.p21 * std::cos(lq);
        const double gdir = std::sqrt(p0 / c.mu) *
                            (s.q2 * std::sin(lq) - s.q1 * std::cos(lq)) * sb / f0;
        return 1.5 * pp1 / p0 * t0 - 2.0 * ff1 / f0 * t0 - gdir * t0 * t0;
    };

    const int panels = std::max(1, static_cast<int>(std::ceil(dl / kPi)));
    const double width = dl / panels;
    double t1 = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = s.longitude + (p + 0.5) * width;
        const double half = 0.5 * width;
        for (std::size_t k = 0; k < kGlNodes.size(); ++k) {
            t1 += half * kGlWeights[k] *
                  (integrand(mid + half * kGlNodes[k]) +
                   integrand(mid - half * kGlNodes[k]));
        }
    }
    return t1;
}

EquinoctialState propagate_first_order(const EquinoctialState& s, double dl,
                                       const ThrustSetting& thrust, const Constants& c) {
    if (dl < 0.0)
        throw std::domain_error("propagate_first_order: dL must be non-negative");
    EquinoctialState out = s;
    if (dl == 0.0) return out;
    if (thrust.epsilon == 0.0) {
        out.longitude += dl;
        out.epoch += coast_time(s, dl, c);
        return out;
    }
    const FirstOrderTerms ft = first_order_terms(s, dl, thrust.alpha, thrust.beta, c);
    out.a = s.a + thrust.epsilon * ft.a1;
    out.p1 = s.p1 + thrust.epsilon * ft.p11;
    out.p2 = s.p2 + thrust.epsilon * ft.p21;
    out.q1 = s.q1 + thrust.epsilon * ft.q11;
    out.q2 = s.q2 + thrust.epsilon * ft.q21;
    out.longitude = s.longitude + dl;
    if (out.p1 * out.p1 + out.p2 * out.p2 >= 1.0)
        throw std::domain_error(
            "propagate_first_order: eccentricity blow-up (P1^2+P2^2 >= 1)");
    const double t1 = first_order_time(s, dl, thrust.alpha, thrust.beta, c);
    out.epoch = s.epoch + coast_time(s, dl, c) + thrust.epsilon * t1;
    return out;
}

std::pair<EquinoctialState, double> apsis_thrust_arc(const EquinoctialState& s,
                                                     double l_apsis, double dl_semi,
                                                     double alpha, double beta,
                                                     double epsilon, const Constants& c) {
    if (dl_semi < 0.0 || dl_semi > kPi)
        throw std::domain_error("apsis_thrust_arc: dL_semi must be in [0, pi]");
    const double l_start = l_apsis - dl_semi;
    if (s.longitude > l_start + 1e-12)
        throw std::domain_error("apsis_thrust_arc: state longitude past arc start");

    ThrustSetting coast{0.0, 0.0, 0.0};
    EquinoctialState at_start =
        propagate_first_order(s, std::max(0.0, l_start - s.longitude), coast, c);
    if (dl_semi == 0.0) return {at_start, 0.0};

    const double t_before = at_start.epoch;
    ThrustSetting burn{epsilon, alpha, beta};
    EquinoctialState after = propagate_first_order(at_start, 2.0 * dl_semi, burn, c);
    return {after, after.epoch - t_before};
}

} // namespace ibsmp

#include "ibsmp/phasing.hpp"

#include "ibsmp/constants.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ibsmp {

double apsidal_alignment_delay(double n0) {
    if (n0 <= 0.0)
        throw std::domain_error("apsidal_alignment_delay: n0 must be positive");
    return kPi / n0;
}

double quasi_circular_phasing_delay(double n, double n_f, double dphi_tot) {
    if (dphi_tot < 0.0)
        throw std::domain_error("quasi_circular_phasing_delay: dphi_tot < 0");
    if (dphi_tot == 0.0) return 0.0;
    const double dn = std::fabs(n - n_f);
    if (dn == 0.0) return std::numeric_limits<double>::infinity();
    return dphi_tot / dn;
}

EccentricPhasingResult eccentric_phasing_delay(const std::vector<double>& n_profile,
                                               double n_f) {
    if (n_profile.empty())
        throw std::domain_error("eccentric_phasing_delay: empty profile");
    if (n_f <= 0.0)
        throw std::domain_error("eccentric_phasing_delay: n_f must be positive");

    auto dphi_2pi = [&](double n) { return kTwoPi * std::fabs(n - n_f) / n; };

    EccentricPhasingResult r;
    double best = 0.0;
    for (double n : n_profile) {
        if (n <= 0.0)
            throw std::domain_error("eccentric_phasing_delay: non-positive n sample");
        if (dphi_2pi(n) > best) {
            best = dphi_2pi(n);
            r.n_k = n;
        }
    }
    if (best == 0.0) {
        // no drift anywhere along the profile: phasing is unachievable
        r.t_total = std::numeric_limits<double>::infinity();
        return r;
    }

    r.k = static_cast<int>(std::floor(kTwoPi / best + 1e-12));
    r.dphi_res = kTwoPi - r.k * best;

    if (r.dphi_res < 1e-9) {
        // the k coasting revolutions already absorb the full turn
        r.dphi_res = 0.0;
        r.t_total = kTwoPi * static_cast<double>(r.k) / r.n_k;
        return r;
    }
    double mismatch = std::numeric_limits<double>::infinity();
    for (double n : n_profile) {
        const double miss = std::fabs(dphi_2pi(n) - r.dphi_res);
        if (miss < mismatch) {
            mismatch = miss;
            r.n_res = n;
        }
    }
    r.t_total = kTwoPi * (static_cast<double>(r.k) / r.n_k + 1.0 / r.n_res);
    return r;
}

} // namespace ibsmp

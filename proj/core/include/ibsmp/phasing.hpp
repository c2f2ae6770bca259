#pragma once

#include <string>
#include <vector>

namespace ibsmp {

/// Worst-case phasing delay estimate attached to a sequence result.
struct PhasingReport {
    double t_wait_di = 0.0;    // apsidal-alignment wait [s]
    double t_wait_dphi = 0.0;  // in-plane phasing wait [s]
    double total = 0.0;        // [s]
    double fraction_of_nominal = 0.0;
    std::string strategy;  // "quasi-circular" or "eccentric-coasting"
};

/// Half the departure orbit period: pi / n0, n0 in rad/s.
double apsidal_alignment_delay(double n0);

/// Worst-case wait to absorb an in-plane phase offset dphi_tot when the
/// chaser and target drift at mean motions n and n_f. Unbounded (returned
/// as infinity) when n = n_f.
double quasi_circular_phasing_delay(double n, double n_f, double dphi_tot);

struct EccentricPhasingResult {
    int k = 0;               // full coasting revolutions at the best point
    double t_total = 0.0;    // [s], infinity when no phase drift is available
    double n_k = 0.0;        // mean motion used for the k revolutions
    double n_res = 0.0;      // mean motion absorbing the residual
    double dphi_res = 0.0;   // residual phase after k revolutions [rad]
};

/// Coasting-revolution phasing for eccentric spirals: pick the sampled
/// mean motion with the largest per-revolution phase change
/// dphi_2pi(n) = 2*pi*|n - n_f|/n, coast k = floor(2*pi/dphi_2pi) turns,
/// then absorb the residual at the profile point whose dphi_2pi is
/// closest to it.
EccentricPhasingResult eccentric_phasing_delay(const std::vector<double>& n_profile,
                                               double n_f);

} // namespace ibsmp
